"""Bundled synthetic corpora.

The demo corpus is drawn from a fixed-seed first-order Markov chain over
the nine default categories. The transition weights below are integer
counts out of 100 per row (rows are normalized on use), loosely shaped
like newswire grammar so that determiner/noun and pronoun/verb
dependencies show up as low-entropy patterns. Every sentence starts
from the chain's stationary distribution, which keeps adjacent-pair
statistics stationary across sentence boundaries.
"""

from __future__ import annotations

from bisect import bisect_right

import numpy as np

from .alphabet import TagAlphabet, default_reduction
from .corpus import TagCorpus

DEMO_SEED = 1234
DEMO_TOKENS = 50_000
DEMO_SENTENCE_LEN = 25

# Rows/columns ordered ADJ, ADP, ADV, CONJ, DET, NOUN, PRON, VERB, OTHER.
DEMO_TRANSITION_WEIGHTS = np.array(
    [
        [8, 10, 3, 10, 1, 45, 1, 7, 15],   # ADJ
        [8, 2, 5, 2, 40, 25, 10, 4, 4],    # ADP
        [20, 10, 8, 3, 8, 4, 5, 30, 12],   # ADV
        [8, 8, 8, 2, 22, 15, 18, 15, 4],   # CONJ
        [20, 1, 5, 1, 2, 62, 2, 3, 4],     # DET
        [4, 20, 6, 12, 5, 8, 5, 18, 22],   # NOUN
        [3, 10, 8, 6, 5, 8, 6, 42, 12],    # PRON
        [8, 14, 10, 6, 22, 12, 9, 7, 12],  # VERB
        [9, 10, 9, 10, 16, 12, 12, 12, 10],  # OTHER
    ],
    dtype=np.int64,
)


def normalized_rows(weights: np.ndarray) -> np.ndarray:
    weights = np.asarray(weights, dtype=np.float64)
    return weights / weights.sum(axis=1, keepdims=True)


def stationary_distribution(transition: np.ndarray) -> np.ndarray:
    """Solve pi T = pi with pi summing to 1."""
    t = normalized_rows(transition)
    n = t.shape[0]
    system = np.vstack([t.T - np.eye(n), np.ones(n)])
    target = np.zeros(n + 1)
    target[-1] = 1.0
    pi, *_ = np.linalg.lstsq(system, target, rcond=None)
    return np.clip(pi, 0.0, None) / pi.sum()


def markov_corpus(
    transition: np.ndarray,
    tokens: int,
    seed: int,
    alphabet: TagAlphabet | None = None,
    sentence_len: int = DEMO_SENTENCE_LEN,
) -> TagCorpus:
    """Sample a corpus from a first-order chain.

    Sentences have ``sentence_len`` tags (the last may be shorter) and
    each begins from the stationary distribution.
    """
    if tokens < 1:
        raise ValueError("tokens must be >= 1")
    if sentence_len < 1:
        raise ValueError("sentence_len must be >= 1")
    t = normalized_rows(transition)
    alphabet = alphabet or default_reduction()
    if t.shape != (alphabet.size, alphabet.size):
        raise ValueError("transition matrix does not match the alphabet")
    pi = stationary_distribution(t)
    start_cum = list(np.cumsum(pi))
    row_cums = [list(np.cumsum(row)) for row in t]
    rng = np.random.default_rng(seed)
    draws = rng.random(tokens)
    sentences = []
    position = 0
    while position < tokens:
        length = min(sentence_len, tokens - position)
        sentence = np.empty(length, dtype=np.int64)
        state = bisect_right(start_cum, draws[position] * start_cum[-1])
        sentence[0] = state
        for i in range(1, length):
            cum = row_cums[state]
            state = bisect_right(cum, draws[position + i] * cum[-1])
            sentence[i] = state
        sentences.append(sentence)
        position += length
    return TagCorpus(tuple(sentences), alphabet)


def iid_corpus(
    tokens: int,
    seed: int,
    alphabet: TagAlphabet | None = None,
    sentence_len: int = DEMO_SENTENCE_LEN,
) -> TagCorpus:
    """Uniform i.i.d. tags, for calibration runs."""
    alphabet = alphabet or default_reduction()
    rng = np.random.default_rng(seed)
    flat = rng.integers(0, alphabet.size, size=tokens, dtype=np.int64)
    sentences = [flat[i : i + sentence_len] for i in range(0, tokens, sentence_len)]
    return TagCorpus(tuple(sentences), alphabet)


def demo_corpus(tokens: int = DEMO_TOKENS, seed: int = DEMO_SEED) -> TagCorpus:
    """The bundled offline demo corpus (50k tags by default)."""
    return markov_corpus(DEMO_TRANSITION_WEIGHTS, tokens, seed)
