"""Iterative mask-and-fill sequence generation.

The non-causal generator starts from a sequence of mask sentinels and,
for a fixed number of iterations, shuffles the positions, re-masks them
in groups, queries a masked-prediction model once per group, and samples
replacements. Every position is regenerated once per iteration, so the
model is called ceil(K / G) times per iteration. A left-to-right causal
sampler with one model call per token serves as the baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np

from .alphabet import TagAlphabet
from .corpus import TagCorpus
from .counting import ContextSpec, CountTable, count

ARGMAX_TEMPERATURE = 1e-6


@runtime_checkable
class MaskedModel(Protocol):
    """Predicts categorical distributions for masked positions.

    Given a full token sequence containing mask sentinels, returns one
    distribution over the real vocabulary (length ``vocab_size``,
    summing to 1) per requested masked position. The mask sentinel lies
    outside the distribution's index range, so it can never be sampled.
    """

    vocab_size: int
    mask_id: int

    def predict(self, tokens: np.ndarray, positions) -> dict[int, np.ndarray]:
        ...


@dataclass(frozen=True)
class FilterSet:
    """Which output filters are active.

    The affix and unknown filters only act on vocabularies with surface
    forms / an unknown id; for bare tag alphabets they are no-ops.
    """

    adjacent_duplicate: bool = False
    short_affix: bool = False
    unknown_token: bool = False
    min_affix_len: int = 3

    @classmethod
    def none(cls) -> "FilterSet":
        return cls()

    @classmethod
    def parse(cls, names: str) -> "FilterSet":
        """Parse a comma-separated filter list, e.g. "adjacent,unknown"."""
        active = {n.strip() for n in names.split(",") if n.strip()}
        known = {"adjacent", "affix", "unknown", "none"}
        unknown = active - known
        if unknown:
            raise ValueError(f"unknown filters: {sorted(unknown)}")
        return cls(
            adjacent_duplicate="adjacent" in active,
            short_affix="affix" in active,
            unknown_token="unknown" in active,
        )

    def names(self) -> list[str]:
        active = []
        if self.adjacent_duplicate:
            active.append("adjacent")
        if self.short_affix:
            active.append("affix")
        if self.unknown_token:
            active.append("unknown")
        return active


@dataclass(frozen=True)
class GenerationConfig:
    seq_len: int = 50
    iterations: int = 30
    group_size: int = 2
    seed: int = 0
    temperature: float = 1.0
    filters: FilterSet = field(default_factory=FilterSet.none)

    def __post_init__(self):
        if self.seq_len < 1:
            raise ValueError("seq_len must be >= 1")
        if not 1 <= self.group_size <= self.seq_len:
            raise ValueError("group_size must lie in [1, seq_len]")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.temperature <= 0:
            raise ValueError("temperature must be > 0")

    def to_json_dict(self) -> dict:
        return {
            "seq_len": self.seq_len,
            "iterations": self.iterations,
            "group_size": self.group_size,
            "seed": self.seed,
            "temperature": self.temperature,
            "filters": self.filters.names(),
            "min_affix_len": self.filters.min_affix_len,
        }


@dataclass(frozen=True)
class IterationTrace:
    iteration: int
    model_calls: int
    fallbacks: int
    sequence: tuple[int, ...]


@dataclass(frozen=True)
class GenerationResult:
    tokens: np.ndarray
    trace: tuple[IterationTrace, ...]
    model_calls: int
    fallbacks: int


def _is_affix(surface: str, min_len: int) -> bool:
    # wordpiece-style continuations ("##ing") and BPE-style prefixes
    # ("un@@") shorter than min_len letters
    if surface.startswith("##"):
        return len(surface) - 2 < min_len
    if surface.endswith("@@"):
        return len(surface) - 2 < min_len
    return False


def filter_distribution(
    dist: np.ndarray,
    position: int,
    sequence: np.ndarray,
    filters: FilterSet,
    surfaces: list[str] | None = None,
    unknown_id: int | None = None,
) -> tuple[np.ndarray, bool]:
    """Zero out filtered tokens and renormalize.

    Removes tokens equal to either neighbor (adjacent-duplicate filter),
    short subword affixes (needs ``surfaces``), and the unknown token
    (needs ``unknown_id``). If filtering would remove all mass, the
    input distribution is returned unchanged with the fallback flag set.
    """
    mask = np.ones(len(dist), dtype=bool)
    if filters.adjacent_duplicate:
        for neighbor in (position - 1, position + 1):
            if 0 <= neighbor < len(sequence):
                tag = int(sequence[neighbor])
                if 0 <= tag < len(dist):
                    mask[tag] = False
    if filters.short_affix and surfaces is not None:
        for idx, surface in enumerate(surfaces):
            if _is_affix(surface, filters.min_affix_len):
                mask[idx] = False
    if filters.unknown_token and unknown_id is not None and 0 <= unknown_id < len(dist):
        mask[unknown_id] = False
    filtered = np.where(mask, dist, 0.0)
    remaining = filtered.sum()
    if remaining <= 0.0:
        return dist, True
    return filtered / remaining, False


def sample_token(dist: np.ndarray, temperature: float, rng: np.random.Generator) -> int:
    """Draw a token from ``dist ** (1/t)`` renormalized.

    Temperatures below 1e-6 collapse to the argmax (lowest index wins
    ties).
    """
    if temperature < ARGMAX_TEMPERATURE:
        return int(np.argmax(dist))
    if temperature != 1.0:
        weights = np.power(dist, 1.0 / temperature)
    else:
        weights = dist
    cumulative = np.cumsum(weights)
    if cumulative[-1] <= 0.0:  # extreme temperatures can underflow
        return int(np.argmax(dist))
    draw = rng.random() * cumulative[-1]
    return int(np.searchsorted(cumulative, draw, side="right"))


def _fill_positions(
    sequence: np.ndarray,
    group,
    model: MaskedModel,
    cfg: GenerationConfig,
    rng: np.random.Generator,
    surfaces: list[str] | None,
    unknown_id: int | None,
) -> int:
    """Mask the group, query the model once, and fill each position."""
    sequence[group] = model.mask_id
    dists = model.predict(sequence, group)
    fallbacks = 0
    for position in group:
        position = int(position)
        dist, fell_back = filter_distribution(
            dists[position], position, sequence, cfg.filters, surfaces, unknown_id
        )
        if fell_back:
            fallbacks += 1
        sequence[position] = sample_token(dist, cfg.temperature, rng)
    return fallbacks


def generate_noncausal(
    model: MaskedModel,
    cfg: GenerationConfig,
    surfaces: list[str] | None = None,
    unknown_id: int | None = None,
) -> GenerationResult:
    """Iterative group-wise mask-and-fill generation.

    Every iteration re-samples all ``seq_len`` positions once, in a
    shuffled order, masking successive groups of ``group_size`` (the
    trailing partial group included) and making one model call per
    group.
    """
    rng = np.random.default_rng(cfg.seed)
    sequence = np.full(cfg.seq_len, model.mask_id, dtype=np.int64)
    trace = []
    calls = 0
    fallbacks = 0
    for iteration in range(cfg.iterations):
        order = rng.permutation(cfg.seq_len)
        iter_calls = 0
        iter_fallbacks = 0
        for start in range(0, cfg.seq_len, cfg.group_size):
            group = order[start : start + cfg.group_size]
            iter_fallbacks += _fill_positions(
                sequence, group, model, cfg, rng, surfaces, unknown_id
            )
            iter_calls += 1
        calls += iter_calls
        fallbacks += iter_fallbacks
        trace.append(
            IterationTrace(iteration, iter_calls, iter_fallbacks, tuple(int(t) for t in sequence))
        )
    sequence.setflags(write=False)
    return GenerationResult(sequence, tuple(trace), calls, fallbacks)


def generate_causal(
    model: MaskedModel,
    cfg: GenerationConfig,
    surfaces: list[str] | None = None,
    unknown_id: int | None = None,
) -> GenerationResult:
    """Left-to-right baseline: one model call per token.

    All positions to the right of the one being generated stay masked,
    so the model only ever conditions on left context.
    """
    rng = np.random.default_rng(cfg.seed)
    sequence = np.full(cfg.seq_len, model.mask_id, dtype=np.int64)
    fallbacks = 0
    for position in range(cfg.seq_len):
        fallbacks += _fill_positions(
            sequence, [position], model, cfg, rng, surfaces, unknown_id
        )
    trace = (IterationTrace(0, cfg.seq_len, fallbacks, tuple(int(t) for t in sequence)),)
    sequence.setflags(write=False)
    return GenerationResult(sequence, trace, cfg.seq_len, fallbacks)


class NGramMaskedModel:
    """Count-based masked predictor with fixed backoff.

    Holds three count tables over a training corpus: a bidirectional
    window (``window`` tags each side), a left-only window, and a
    right-only window. Prediction tries them in that order, requiring
    all context slots to be in-bounds and unmasked and the context to
    have been observed; otherwise it falls back to the corpus unigram
    distribution, so every query yields a valid distribution.
    """

    def __init__(
        self,
        bidir: CountTable,
        left: CountTable,
        right: CountTable,
        floor: np.ndarray,
        alphabet: TagAlphabet,
        source: str = "unspecified",
    ):
        self.bidir = bidir
        self.left = left
        self.right = right
        self.floor = np.asarray(floor, dtype=np.float64)
        self.floor.setflags(write=False)
        self.alphabet = alphabet
        self.vocab_size = alphabet.size
        self.mask_id = alphabet.mask_id
        self.source = source
        self.window = left.spec.window_len
        self.backoff_order = (bidir.spec, left.spec, right.spec)
        self._lookup = [self._prepare(t) for t in (bidir, left, right)]

    @staticmethod
    def _prepare(table: CountTable):
        rows = table.outcome_counts / table.context_totals[:, None]
        rows.setflags(write=False)
        index = {int(c): i for i, c in enumerate(table.context_codes)}
        return table.spec, index, rows

    @classmethod
    def from_corpus(cls, corpus: TagCorpus, window: int = 1, source: str | None = None) -> "NGramMaskedModel":
        """Train the three tables plus the unigram floor on a corpus.

        ``window`` is the context width per side; the corpus needs at
        least one sentence of ``2 * window + 1`` tags.
        """
        bidir = count(corpus, ContextSpec(2 * window, window))
        left = count(corpus, ContextSpec(window, window))
        right = count(corpus, ContextSpec(window, 0))
        frequencies = np.zeros(corpus.alphabet.size, dtype=np.int64)
        for sentence in corpus.sentences:
            frequencies += np.bincount(sentence, minlength=corpus.alphabet.size)
        floor = frequencies / frequencies.sum()
        return cls(bidir, left, right, floor, corpus.alphabet,
                   source=source or f"ngram(window={window})")

    def _context_code(self, tokens: np.ndarray, position: int, spec: ContextSpec):
        """Packed context key around ``position``; None when any slot is
        out of bounds or masked."""
        left_len = spec.predicted_pos
        right_len = spec.window_len - spec.predicted_pos
        lo = position - left_len
        hi = position + right_len
        if lo < 0 or hi >= len(tokens):
            return None
        code = 0
        for offset in range(lo, hi + 1):
            if offset == position:
                continue
            tag = int(tokens[offset])
            if not 0 <= tag < self.vocab_size:
                return None
            code = code * self.vocab_size + tag
        return code

    def predict(self, tokens: np.ndarray, positions=None) -> dict[int, np.ndarray]:
        tokens = np.asarray(tokens)
        if positions is None:
            positions = np.flatnonzero(tokens == self.mask_id)
        result = {}
        for position in positions:
            position = int(position)
            dist = self.floor
            for spec, index, rows in self._lookup:
                code = self._context_code(tokens, position, spec)
                if code is None:
                    continue
                row = index.get(code)
                if row is not None:
                    dist = rows[row]
                    break
            result[position] = dist
        return result
