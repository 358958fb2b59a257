"""Weighted isotonic regression for refitting non-monotone curves.

Carrying a trained genotype ordering onto independent data yields risk
sequences that violate monotonicity through sampling noise alone.
Pool-adjacent-violators (PAVA) projects such a sequence onto the
nondecreasing cone under weighted least squares, with the genotype
masses as weights; pooling therefore preserves the mass-weighted mean
risk, so a refit curve keeps its prevalence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = ["Block", "IsotonicFit", "pava"]


@dataclass(frozen=True)
class Block:
    """One pooled run of positions [start, end) sharing a fitted value."""

    start: int
    end: int
    value: float
    weight: float


@dataclass(frozen=True)
class IsotonicFit:
    """Result of a PAVA projection."""

    fitted: np.ndarray
    blocks: tuple[Block, ...]


def pava(risks, weights) -> IsotonicFit:
    """Weighted least-squares isotonic fit, nondecreasing.

    Scans left to right keeping a stack of blocks; whenever the newest
    block fails to exceed its predecessor the two merge into their
    weighted mean, cascading back as far as needed.  O(n): each element
    is merged at most once.

    Parameters
    ----------
    risks : array_like
        Values to project, in evaluation order.
    weights : array_like
        Strictly positive weights, same length.

    Returns
    -------
    IsotonicFit
        ``fitted`` is nondecreasing with the same weighted mean as the
        input; ``blocks`` give each pooled run with its value (the
        weighted mean of its members) and total weight.  Block values
        increase strictly.
    """
    r = np.asarray(risks, dtype=float)
    w = np.asarray(weights, dtype=float)
    if r.ndim != 1 or r.shape != w.shape:
        raise ValidationError("risks and weights must be equal-length 1-d arrays")
    if r.size == 0:
        raise ValidationError("cannot fit an empty sequence")
    if np.any(w <= 0):
        raise ValidationError("weights must be strictly positive")

    # stack rows: [start index, weighted sum, weight]
    stack: list[list[float]] = []
    for i in range(r.size):
        stack.append([i, r[i] * w[i], w[i]])
        while len(stack) > 1 and (
            stack[-2][1] * stack[-1][2] >= stack[-1][1] * stack[-2][2]
        ):
            # previous mean >= current mean, compared cross-multiplied
            top = stack.pop()
            stack[-1][1] += top[1]
            stack[-1][2] += top[2]

    fitted = np.empty_like(r)
    blocks = []
    bounds = [int(row[0]) for row in stack] + [r.size]
    for (start_, wsum, wtot), end_ in zip(stack, bounds[1:]):
        value = float(wsum / wtot)
        start = int(start_)
        fitted[start:end_] = value
        blocks.append(Block(start=start, end=int(end_), value=value, weight=float(wtot)))
    return IsotonicFit(fitted=fitted, blocks=tuple(blocks))
