"""Conditional relative entropy between two count tables.

The score is sum_x q(x) sum_y p(y|x) log2( p(y|x) / q(y|x) ): the outer
weights come from the evaluated table, the inner reference conditional
p from the reference table. Both conditionals are additively smoothed
over the full outcome support, which keeps the score finite and
non-negative for alpha > 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .counting import ContextSpec, CountTable
from .errors import EmptyTableError, SpecMismatchError


@dataclass(frozen=True)
class DivergenceReport:
    spec: ContextSpec
    kl_bits: float
    contexts_scored: int
    contexts_skipped: int
    smoothing_alpha: float
    unbounded_terms: int = 0
    outer_weighting: str = "evaluated"

    def to_json_dict(self) -> dict:
        return {
            "window_len": self.spec.window_len,
            "predicted_pos": self.spec.predicted_pos,
            "kl_bits": self.kl_bits,
            "contexts_scored": self.contexts_scored,
            "contexts_skipped": self.contexts_skipped,
            "smoothing_alpha": self.smoothing_alpha,
            "unbounded_terms": self.unbounded_terms,
            "outer_weighting": self.outer_weighting,
        }


def _align_rows(outer: CountTable, other: CountTable) -> tuple[np.ndarray, np.ndarray]:
    """Rows of ``other`` matching the contexts of ``outer`` (zeros where
    absent) plus the found-mask."""
    v = outer.alphabet_size
    idx = np.searchsorted(other.context_codes, outer.context_codes)
    idx_clamped = np.minimum(idx, max(len(other.context_codes) - 1, 0))
    if len(other.context_codes):
        found = other.context_codes[idx_clamped] == outer.context_codes
    else:
        found = np.zeros(len(outer.context_codes), dtype=bool)
    rows = np.zeros((outer.num_contexts, v), dtype=np.int64)
    rows[found] = other.outcome_counts[idx_clamped[found]]
    return rows, found


def conditional_relative_entropy(
    reference: CountTable,
    evaluated: CountTable,
    alpha: float = 0.5,
    outer: str = "evaluated",
) -> DivergenceReport:
    """Expected extra uncertainty from modeling the reference
    conditionals with the evaluated ones.

    ``alpha`` smooths both conditionals additively over all outcomes.
    Contexts of the outer table that the inner table never saw count as
    ``contexts_skipped``; with alpha > 0 they are still scored against
    the alpha-uniform conditional, with alpha = 0 they are left out and
    any p > 0 = q term makes the score unbounded (+inf, tallied in
    ``unbounded_terms``).

    ``outer`` selects the weighting table: "evaluated" is the primary
    form; "reference" is a conventional variant (outer weights p(x))
    kept for sensitivity checks.
    """
    if reference.spec != evaluated.spec:
        raise SpecMismatchError(
            f"specs differ: {reference.spec} vs {evaluated.spec}"
        )
    if reference.alphabet.tags != evaluated.alphabet.tags:
        raise SpecMismatchError("alphabets differ")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if outer not in ("evaluated", "reference"):
        raise ValueError("outer must be 'evaluated' or 'reference'")
    if evaluated.total == 0 or reference.total == 0:
        raise EmptyTableError()

    weight_table = evaluated if outer == "evaluated" else reference
    v = weight_table.alphabet_size

    ref_rows, ref_found = _align_rows(weight_table, reference)
    eval_rows, eval_found = _align_rows(weight_table, evaluated)
    inner_found = ref_found if outer == "evaluated" else eval_found

    weights = weight_table.context_totals / weight_table.total

    if alpha == 0.0:
        # restrict to contexts both tables observed; flag p>0, q=0 terms
        keep = inner_found
        skipped = int((~keep).sum())
        p = ref_rows[keep] / np.maximum(ref_rows[keep].sum(axis=1, keepdims=True), 1)
        q = eval_rows[keep] / np.maximum(eval_rows[keep].sum(axis=1, keepdims=True), 1)
        w = weights[keep]
    else:
        skipped = int((~inner_found).sum())
        p = (ref_rows + alpha) / (ref_rows.sum(axis=1, keepdims=True) + alpha * v)
        q = (eval_rows + alpha) / (eval_rows.sum(axis=1, keepdims=True) + alpha * v)
        w = weights

    with np.errstate(divide="ignore", invalid="ignore"):
        log_ratio = np.log2(p) - np.log2(q)
        terms = np.where(p > 0, p * log_ratio, 0.0)
    unbounded = int(np.isposinf(terms).sum())
    kl = float("inf") if unbounded else float(w @ terms.sum(axis=1))

    return DivergenceReport(
        spec=weight_table.spec,
        kl_bits=kl,
        contexts_scored=weight_table.num_contexts - skipped,
        contexts_skipped=skipped,
        smoothing_alpha=float(alpha),
        unbounded_terms=unbounded,
        outer_weighting=outer,
    )
