"""Context/outcome count tables.

A context spec fixes a window of ``window_len + 1`` consecutive tags and
the index of the predicted slot inside it. Counting slides that window
over every sentence (windows never span sentence boundaries) and tallies
(context tuple, outcome) pairs. Contexts are packed into a single
integer key (base-``|V|`` positional encoding, leftmost slot most
significant); tables store the sorted key vector plus an integer count
matrix, which keeps merging exact and order-independent.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .alphabet import TagAlphabet
from .corpus import TagCorpus
from .errors import (
    EmptyTableError,
    NoWindowsError,
    SpecMismatchError,
    UnseenContextError,
)


@dataclass(frozen=True)
class ContextSpec:
    """Window geometry: ``window_len`` context tags with ``predicted_pos``
    of them to the left of the predicted slot.

    ``predicted_pos == window_len`` is the fully causal case; smaller
    values leave ``window_len - predicted_pos`` tags of right context.
    """

    window_len: int
    predicted_pos: int

    def __post_init__(self):
        if self.window_len < 1:
            raise ValueError("window_len must be >= 1")
        if not 0 <= self.predicted_pos <= self.window_len:
            raise ValueError("predicted_pos must lie in [0, window_len]")

    @property
    def is_causal(self) -> bool:
        return self.predicted_pos == self.window_len

    def context_offsets(self) -> tuple[int, ...]:
        """Offsets of the context slots relative to the predicted token."""
        k = self.predicted_pos
        return tuple(w - k for w in range(self.window_len + 1) if w != k)

    def context_labels(self) -> tuple[str, ...]:
        """Human-readable slot labels, e.g. ('X_{i-2}', 'X_{i-1}')."""
        return tuple(f"X_{{i{off:+d}}}" for off in self.context_offsets())

    def to_json_dict(self) -> dict:
        return {"window_len": self.window_len, "predicted_pos": self.predicted_pos}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ContextSpec":
        return cls(int(data["window_len"]), int(data["predicted_pos"]))


def _check_code_capacity(alphabet_size: int, window_len: int) -> None:
    if alphabet_size ** (window_len + 1) > 2**62:
        raise ValueError(
            f"|V|^(N+1) = {alphabet_size}^{window_len + 1} overflows the packed key space"
        )


@dataclass(frozen=True, eq=False)
class CountTable:
    """Counts of (context, outcome) pairs under one spec.

    ``context_codes`` is sorted ascending; row ``r`` of
    ``outcome_counts`` holds the per-outcome counts for the context
    encoded by ``context_codes[r]``. The context total L_i is the row
    sum, so the L_i = sum_j L_ij invariant holds by construction.
    """

    spec: ContextSpec
    alphabet: TagAlphabet
    context_codes: np.ndarray
    outcome_counts: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, CountTable):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.alphabet.tags == other.alphabet.tags
            and np.array_equal(self.context_codes, other.context_codes)
            and np.array_equal(self.outcome_counts, other.outcome_counts)
        )

    def __post_init__(self):
        codes = np.asarray(self.context_codes, dtype=np.int64)
        counts = np.asarray(self.outcome_counts, dtype=np.int64)
        if counts.shape != (len(codes), self.alphabet.size):
            raise ValueError("outcome_counts shape does not match codes/alphabet")
        if len(codes) > 1 and not (codes[1:] > codes[:-1]).all():
            raise ValueError("context codes must be strictly increasing")
        codes.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "context_codes", codes)
        object.__setattr__(self, "outcome_counts", counts)

    @property
    def alphabet_size(self) -> int:
        return self.alphabet.size

    @property
    def context_totals(self) -> np.ndarray:
        return self.outcome_counts.sum(axis=1)

    @property
    def total(self) -> int:
        return int(self.outcome_counts.sum())

    @property
    def num_contexts(self) -> int:
        return len(self.context_codes)

    # -- context key packing ------------------------------------------------

    def encode_context(self, context) -> int:
        context = tuple(int(c) for c in context)
        if len(context) != self.spec.window_len:
            raise ValueError(
                f"context must have {self.spec.window_len} tags, got {len(context)}"
            )
        v = self.alphabet_size
        code = 0
        for tag in context:
            if not 0 <= tag < v:
                raise ValueError(f"tag id {tag} outside the alphabet")
            code = code * v + tag
        return code

    def decode_context(self, code: int) -> tuple[int, ...]:
        v = self.alphabet_size
        out = []
        for _ in range(self.spec.window_len):
            code, tag = divmod(code, v)
            out.append(tag)
        return tuple(reversed(out))

    def _row_of(self, code: int) -> int:
        idx = int(np.searchsorted(self.context_codes, code))
        if idx < len(self.context_codes) and self.context_codes[idx] == code:
            return idx
        return -1

    # -- the categorical estimators ------------------------------------------

    def context_prob(self, context) -> float:
        """Relative frequency of a context; 0 for unseen contexts."""
        if self.total == 0:
            raise EmptyTableError()
        row = self._row_of(self.encode_context(context))
        if row < 0:
            return 0.0
        return int(self.context_totals[row]) / self.total

    def outcome_dist(self, context) -> np.ndarray:
        """Conditional outcome distribution for an observed context."""
        context = tuple(int(c) for c in context)
        row = self._row_of(self.encode_context(context))
        if row < 0:
            raise UnseenContextError(context)
        counts = self.outcome_counts[row]
        return counts / counts.sum()

    # -- merging --------------------------------------------------------------

    def merge(self, other: "CountTable") -> "CountTable":
        """Pointwise sum; requires identical spec and alphabet."""
        if self.spec != other.spec:
            raise SpecMismatchError(f"specs differ: {self.spec} vs {other.spec}")
        if self.alphabet.tags != other.alphabet.tags:
            raise SpecMismatchError("alphabets differ")
        codes = np.union1d(self.context_codes, other.context_codes)
        counts = np.zeros((len(codes), self.alphabet_size), dtype=np.int64)
        counts[np.searchsorted(codes, self.context_codes)] += self.outcome_counts
        counts[np.searchsorted(codes, other.context_codes)] += other.outcome_counts
        return CountTable(self.spec, self.alphabet, codes, counts)

    # -- serialization ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec.to_json_dict(),
            "alphabet": list(self.alphabet.tags),
            "total": self.total,
            "contexts": [list(self.decode_context(int(c))) for c in self.context_codes],
            "counts": self.outcome_counts.tolist(),
        }

    def save(self, target) -> None:
        data = json.dumps(self.to_json_dict(), sort_keys=True)
        if isinstance(target, (str, os.PathLike)):
            with open(target, "w", encoding="utf-8") as fh:
                fh.write(data)
        else:
            target.write(data)

    @classmethod
    def from_json_dict(cls, data: dict) -> "CountTable":
        spec = ContextSpec.from_json_dict(data["spec"])
        alphabet = TagAlphabet.from_tags(data["alphabet"])
        table = cls(
            spec,
            alphabet,
            np.zeros(0, dtype=np.int64),
            np.zeros((0, alphabet.size), dtype=np.int64),
        )
        codes = np.array(
            [table.encode_context(ctx) for ctx in data["contexts"]], dtype=np.int64
        )
        counts = np.array(data["counts"], dtype=np.int64).reshape(len(codes), alphabet.size)
        order = np.argsort(codes)
        loaded = cls(spec, alphabet, codes[order], counts[order])
        if loaded.total != int(data["total"]):
            raise ValueError("total in header does not match counts")
        return loaded

    @classmethod
    def load(cls, source) -> "CountTable":
        if isinstance(source, (str, os.PathLike)):
            with open(source, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        else:
            data = json.load(source)
        return cls.from_json_dict(data)


def empty_table(spec: ContextSpec, alphabet: TagAlphabet) -> CountTable:
    return CountTable(
        spec,
        alphabet,
        np.zeros(0, dtype=np.int64),
        np.zeros((0, alphabet.size), dtype=np.int64),
    )


def _window_codes(sentence: np.ndarray, spec: ContextSpec, v: int) -> np.ndarray | None:
    """Packed (context * |V| + outcome) codes for every window in a sentence."""
    width = spec.window_len + 1
    m = len(sentence) - width + 1
    if m <= 0:
        return None
    code = np.zeros(m, dtype=np.int64)
    for w in range(width):
        if w == spec.predicted_pos:
            continue
        code *= v
        code += sentence[w : w + m]
    return code * v + sentence[spec.predicted_pos : spec.predicted_pos + m]


def count(corpus: TagCorpus, spec: ContextSpec) -> CountTable:
    """Tally every in-sentence window of ``window_len + 1`` tags.

    Sentences shorter than the window are skipped; if none is long
    enough, NoWindowsError is raised.
    """
    v = corpus.alphabet.size
    _check_code_capacity(v, spec.window_len)
    chunks = []
    for sentence in corpus.sentences:
        codes = _window_codes(sentence, spec, v)
        if codes is not None:
            chunks.append(codes)
    if not chunks:
        raise NoWindowsError(spec.window_len)
    combined, combined_counts = np.unique(np.concatenate(chunks), return_counts=True)
    ctx_of_pair = combined // v
    outcome_of_pair = combined % v
    ctx_codes, row_of_pair = np.unique(ctx_of_pair, return_inverse=True)
    counts = np.zeros((len(ctx_codes), v), dtype=np.int64)
    counts[row_of_pair, outcome_of_pair] = combined_counts
    return CountTable(spec, corpus.alphabet, ctx_codes, counts)


def count_sharded(corpus: TagCorpus, spec: ContextSpec, shards: int) -> CountTable:
    """Count sentence shards (optionally in parallel) and merge.

    The result is bit-identical to a single-pass count for any shard
    split.
    """
    parts = corpus.shards(shards)
    if len(parts) == 1:
        return count(parts[0], spec)
    tables = []
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        futures = [pool.submit(_count_or_empty, part, spec) for part in parts]
        tables = [f.result() for f in futures]
    merged = tables[0]
    for table in tables[1:]:
        merged = merged.merge(table)
    if merged.total == 0:
        raise NoWindowsError(spec.window_len)
    return merged


def _count_or_empty(corpus: TagCorpus, spec: ContextSpec) -> CountTable:
    try:
        return count(corpus, spec)
    except NoWindowsError:
        return empty_table(spec, corpus.alphabet)


def required_tokens(alphabet_size: int, window_len: int, target_norm_variance) -> tuple[int, int]:
    """Sample sizes that pin the estimators' worst-case normalized
    variances at the target.

    Returns ``(L_ctx, L_outcome)``: the window counts needed so that,
    under uniform distributions, the context-probability estimator has
    normalized variance ``(|V|^N - 1) / L`` and the conditional-outcome
    estimator ``|V|^N (|V| - 1) / L`` no larger than the target. Values
    are rounded up; the arithmetic is exact to avoid float boundary
    artifacts.
    """
    v = Fraction(str(target_norm_variance))
    if v <= 0:
        raise ValueError("target_norm_variance must be > 0")
    space = alphabet_size**window_len
    l_ctx = math.ceil(Fraction(space - 1) / v)
    l_outcome = math.ceil(Fraction(space * (alphabet_size - 1)) / v)
    return l_ctx, l_outcome
