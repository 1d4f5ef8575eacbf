"""Independent brute-force reference implementations.

Everything here recomputes results from raw windows with plain Python
loops and ``math.log2``, deliberately sharing no code with the package.
"""

import math
from collections import Counter, defaultdict


def enumerate_windows(sentences, window_len, predicted_pos):
    """All (context tuple, outcome) pairs, sentence by sentence."""
    width = window_len + 1
    pairs = []
    for sentence in sentences:
        seq = [int(t) for t in sentence]
        for start in range(len(seq) - width + 1):
            window = seq[start : start + width]
            outcome = window[predicted_pos]
            context = tuple(window[:predicted_pos] + window[predicted_pos + 1 :])
            pairs.append((context, outcome))
    return pairs


def oracle_counts(sentences, window_len, predicted_pos):
    """Map context -> Counter of outcomes."""
    table = defaultdict(Counter)
    for context, outcome in enumerate_windows(sentences, window_len, predicted_pos):
        table[context][outcome] += 1
    return dict(table)


def oracle_total(table):
    return sum(sum(c.values()) for c in table.values())


def oracle_context_prob(table, context):
    total = oracle_total(table)
    if context not in table:
        return 0.0
    return sum(table[context].values()) / total


def oracle_outcome_dist(table, context, vocab_size):
    counter = table[context]
    denom = sum(counter.values())
    return [counter.get(j, 0) / denom for j in range(vocab_size)]


def oracle_context_entropy(counter):
    denom = sum(counter.values())
    h = 0.0
    for c in counter.values():
        if c > 0:
            p = c / denom
            h -= p * math.log2(p)
    return h


def oracle_avg_entropy(sentences, window_len, predicted_pos):
    table = oracle_counts(sentences, window_len, predicted_pos)
    total = oracle_total(table)
    avg = 0.0
    for counter in table.values():
        weight = sum(counter.values()) / total
        avg += weight * oracle_context_entropy(counter)
    return avg


def oracle_patterns(sentences, window_len, predicted_pos, threshold, min_count):
    """Rows of (context, argmax outcome, entropy, count), sorted like the
    package: ascending entropy, then context tuple."""
    table = oracle_counts(sentences, window_len, predicted_pos)
    rows = []
    for context, counter in table.items():
        count = sum(counter.values())
        if count < min_count:
            continue
        entropy = oracle_context_entropy(counter)
        if entropy >= threshold:
            continue
        best = max(counter.values())
        argmax = min(j for j, c in counter.items() if c == best)
        rows.append((context, argmax, entropy, count))
    rows.sort(key=lambda row: (row[2], row[0]))
    return rows


def oracle_divergence(ref_sentences, eval_sentences, window_len, predicted_pos,
                      alpha, vocab_size):
    """Double-loop conditional relative entropy, outer-weighted by the
    evaluated table's context frequencies."""
    ref = oracle_counts(ref_sentences, window_len, predicted_pos)
    ev = oracle_counts(eval_sentences, window_len, predicted_pos)
    ev_total = oracle_total(ev)
    kl = 0.0
    for context, ev_counter in ev.items():
        weight = sum(ev_counter.values()) / ev_total
        ref_counter = ref.get(context)
        if alpha == 0.0 and ref_counter is None:
            continue
        ref_counter = ref_counter or Counter()
        ref_denom = sum(ref_counter.values()) + alpha * vocab_size
        ev_denom = sum(ev_counter.values()) + alpha * vocab_size
        for j in range(vocab_size):
            p = (ref_counter.get(j, 0) + alpha) / ref_denom
            q = (ev_counter.get(j, 0) + alpha) / ev_denom
            if p > 0.0:
                if q == 0.0:
                    return math.inf
                kl += weight * p * math.log2(p / q)
    return kl
