"""Average context-conditioned entropy and low-entropy pattern mining.

All entropies are plug-in estimates in bits: the per-context entropy is
H_i = -sum_j (L_ij / L_i) log2(L_ij / L_i) with the 0 log 0 := 0
convention, and the report value is the context-probability weighted
mean sum_i (L_i / total) H_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .counting import ContextSpec, CountTable, count, required_tokens
from .corpus import TagCorpus
from .errors import EmptyTableError, IncompleteSweepError, SpecMismatchError

DEFAULT_TARGET_VARIANCE = 1e-3
DEFAULT_PATTERN_THRESHOLD = math.log2(3.0)
DEFAULT_MIN_CONTEXT_COUNT = 100


@dataclass(frozen=True)
class Sufficiency:
    """Data-sufficiency thresholds next to the actually available sample."""

    target_norm_variance: float
    required_context_tokens: int
    required_outcome_tokens: int
    actual_windows: int

    def to_json_dict(self) -> dict:
        return {
            "target_norm_variance": self.target_norm_variance,
            "required_context_tokens": self.required_context_tokens,
            "required_outcome_tokens": self.required_outcome_tokens,
            "actual_windows": self.actual_windows,
        }


@dataclass(frozen=True)
class ContextEntropy:
    """Per-context detail row of an entropy report."""

    context: tuple[int, ...]
    entropy: float
    probability: float
    argmax: int
    max_prob: float
    count: int


@dataclass(frozen=True)
class EntropyReport:
    spec: ContextSpec
    avg_entropy: float
    windows_used: int
    distinct_contexts: int
    sufficiency: Sufficiency
    tags: tuple[str, ...]
    per_context: tuple[ContextEntropy, ...] | None = None
    miller_madow: float | None = None

    def to_json_dict(self) -> dict:
        data = {
            "window_len": self.spec.window_len,
            "predicted_pos": self.spec.predicted_pos,
            "context_labels": list(self.spec.context_labels()),
            "avg_entropy_bits": self.avg_entropy,
            "windows_used": self.windows_used,
            "distinct_contexts": self.distinct_contexts,
            "sufficiency": self.sufficiency.to_json_dict(),
            "tags": list(self.tags),
        }
        if self.miller_madow is not None:
            data["miller_madow_bits"] = self.miller_madow
        if self.per_context is not None:
            data["per_context"] = [
                {
                    "context": [self.tags[t] for t in row.context],
                    "entropy_bits": row.entropy,
                    "probability": row.probability,
                    "argmax": self.tags[row.argmax],
                    "max_prob": row.max_prob,
                    "count": row.count,
                }
                for row in self.per_context
            ]
        return data


@dataclass(frozen=True)
class PatternRow:
    """A low-entropy context with its most probable outcome.

    ``context`` holds the window's tag names in order with ``_`` marking
    the predicted slot.
    """

    context: tuple[str, ...]
    argmax_tag: str
    entropy: float
    count: int
    max_prob: float

    def to_json_dict(self) -> dict:
        return {
            "context": list(self.context),
            "argmax": self.argmax_tag,
            "entropy_bits": self.entropy,
            "count": self.count,
            "max_prob": self.max_prob,
        }


def _entropy_rows(table: CountTable) -> tuple[np.ndarray, np.ndarray]:
    """Per-context entropies (bits) and context totals."""
    counts = table.outcome_counts
    totals = counts.sum(axis=1)
    probs = counts / totals[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(counts > 0, probs * np.log2(probs), 0.0)
    entropies = np.maximum(-plogp.sum(axis=1), 0.0)
    return entropies, totals


def avg_conditional_entropy(
    table: CountTable,
    target_norm_variance: float = DEFAULT_TARGET_VARIANCE,
    include_contexts: bool = False,
    miller_madow: bool = False,
) -> EntropyReport:
    """Context-probability-weighted mean of the per-context entropies.

    ``include_contexts`` attaches the per-context detail rows (sorted by
    ascending entropy). ``miller_madow`` adds the bias-corrected
    diagnostic value (plug-in estimates are reported either way).
    """
    total = table.total
    if total == 0:
        raise EmptyTableError()
    entropies, ctx_totals = _entropy_rows(table)
    weights = ctx_totals / total
    avg = float(weights @ entropies)
    req_ctx, req_out = required_tokens(
        table.alphabet_size, table.spec.window_len, target_norm_variance
    )
    sufficiency = Sufficiency(
        target_norm_variance=float(target_norm_variance),
        required_context_tokens=req_ctx,
        required_outcome_tokens=req_out,
        actual_windows=total,
    )
    per_context = None
    if include_contexts:
        order = np.lexsort((table.context_codes, entropies))
        probs = table.outcome_counts / ctx_totals[:, None]
        argmaxes = probs.argmax(axis=1)
        per_context = tuple(
            ContextEntropy(
                context=table.decode_context(int(table.context_codes[r])),
                entropy=float(entropies[r]),
                probability=float(weights[r]),
                argmax=int(argmaxes[r]),
                max_prob=float(probs[r, argmaxes[r]]),
                count=int(ctx_totals[r]),
            )
            for r in order
        )
    correction = None
    if miller_madow:
        # (m - 1) / (2 L_i ln 2) per context, m = observed support size
        support = (table.outcome_counts > 0).sum(axis=1)
        per_ctx = (support - 1) / (2.0 * ctx_totals * math.log(2.0))
        correction = float(weights @ (entropies + per_ctx))
    return EntropyReport(
        spec=table.spec,
        avg_entropy=avg,
        windows_used=total,
        distinct_contexts=table.num_contexts,
        sufficiency=sufficiency,
        tags=table.alphabet.tags,
        per_context=per_context,
        miller_madow=correction,
    )


def position_sweep(
    corpus: TagCorpus,
    window_len: int,
    target_norm_variance: float = DEFAULT_TARGET_VARIANCE,
) -> list[EntropyReport]:
    """Entropy reports for every predicted position k = 0..N.

    Each report comes from an independent counting pass; the k = N entry
    is the causal entropy.
    """
    reports = []
    for k in range(window_len + 1):
        table = count(corpus, ContextSpec(window_len, k))
        reports.append(avg_conditional_entropy(table, target_norm_variance))
    return reports


def noncausal_minus_causal(sweep: list[EntropyReport]) -> float:
    """Unweighted mean entropy over the strictly non-causal positions.

    The sweep must contain exactly the positions k = 0..N for one window
    length; the causal k = N entry is excluded from the mean.
    """
    if not sweep:
        raise IncompleteSweepError("empty sweep")
    n = sweep[0].spec.window_len
    if any(r.spec.window_len != n for r in sweep):
        raise IncompleteSweepError("sweep mixes window lengths")
    positions = {r.spec.predicted_pos: r for r in sweep}
    if set(positions) != set(range(n + 1)):
        raise IncompleteSweepError(
            f"sweep must cover k = 0..{n}, got {sorted(positions)}"
        )
    return float(np.mean([positions[k].avg_entropy for k in range(n)]))


def mine_patterns(
    table: CountTable,
    threshold: float = DEFAULT_PATTERN_THRESHOLD,
    min_context_count: int = DEFAULT_MIN_CONTEXT_COUNT,
) -> list[PatternRow]:
    """Contexts with entropy below the threshold, ascending by entropy.

    Contexts observed fewer than ``min_context_count`` times are
    suppressed. Argmax ties break toward the lowest tag index.
    """
    if threshold <= 0:
        return []
    entropies, ctx_totals = _entropy_rows(table)
    keep = np.flatnonzero((ctx_totals >= min_context_count) & (entropies < threshold))
    keep = keep[np.lexsort((table.context_codes[keep], entropies[keep]))]
    tags = table.alphabet.tags
    k = table.spec.predicted_pos
    rows = []
    for r in keep:
        counts = table.outcome_counts[r]
        argmax = int(counts.argmax())
        names = [tags[t] for t in table.decode_context(int(table.context_codes[r]))]
        names.insert(k, "_")
        rows.append(
            PatternRow(
                context=tuple(names),
                argmax_tag=tags[argmax],
                entropy=float(entropies[r]),
                count=int(ctx_totals[r]),
                max_prob=float(counts[argmax] / ctx_totals[r]),
            )
        )
    return rows


@dataclass(frozen=True)
class LanguageComparison:
    """Which of two entropy reports is more predictable, and by how much.

    The margin follows the convention 100 * (H_hi - H_lo) / H_lo, i.e.
    how much more entropy the less predictable side carries relative to
    the winner.
    """

    spec: ContextSpec
    label_a: str
    label_b: str
    entropy_a: float
    entropy_b: float
    more_predictable: str
    margin_pct: float
    tie: bool

    def to_json_dict(self) -> dict:
        return {
            "window_len": self.spec.window_len,
            "predicted_pos": self.spec.predicted_pos,
            "entropy": {self.label_a: self.entropy_a, self.label_b: self.entropy_b},
            "more_predictable": self.more_predictable,
            "margin_pct": self.margin_pct,
            "tie": self.tie,
        }


def compare_languages(
    report_a: EntropyReport,
    report_b: EntropyReport,
    label_a: str = "a",
    label_b: str = "b",
) -> LanguageComparison:
    """Rank two same-spec reports by predictability (lower entropy wins)."""
    if report_a.spec != report_b.spec:
        raise SpecMismatchError(
            f"reports have different specs: {report_a.spec} vs {report_b.spec}"
        )
    h_a, h_b = report_a.avg_entropy, report_b.avg_entropy
    if h_a == h_b:
        return LanguageComparison(
            report_a.spec, label_a, label_b, h_a, h_b,
            more_predictable="tie", margin_pct=0.0, tie=True,
        )
    lo_label, lo, hi = (label_a, h_a, h_b) if h_a < h_b else (label_b, h_b, h_a)
    return LanguageComparison(
        report_a.spec, label_a, label_b, h_a, h_b,
        more_predictable=lo_label,
        margin_pct=100.0 * (hi - lo) / lo,
        tie=False,
    )
