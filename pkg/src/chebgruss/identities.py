"""Independent representations of the Chebyshev functional.

Each evaluator below rebuilds ``T_n(p; a, x)`` from the prefix aggregates
through a different route: determinant coefficients against the forward
differences of ``x`` (three algebraically equivalent forms), and the
symmetric min/max kernel acting bilinearly on ``(da, dx)``.
"""

from __future__ import annotations

import numpy as np

from .functional import PrefixAggregates, aggregates, chebyshev_direct, ordered_sum
from .space import Instance

DEFAULT_GUARD = 1e-13


class HypothesisError(ValueError):
    """The instance is outside the hypothesis of a particular evaluator."""

    def __init__(self, index: int, message: str) -> None:
        super().__init__(message)
        self.index = index


class ZeroPartialSum(HypothesisError):
    def __init__(self, index: int) -> None:
        super().__init__(index, f"partial weight sum P_{index} vanishes")


class ZeroTailSum(HypothesisError):
    def __init__(self, index: int) -> None:
        super().__init__(index, f"tail weight sum P_n - P_{index} vanishes")


def _cutoff(inst_or_weights, guard: float) -> float:
    w = inst_or_weights.weights if isinstance(inst_or_weights, Instance) else inst_or_weights
    return guard * float(np.sum(np.abs(w)))


def _vanishes(value: float, cutoff: float) -> bool:
    return value == 0.0 or abs(value) <= cutoff


def check_partial_sums(
    inst: Instance,
    agg: PrefixAggregates | None = None,
    *,
    upto: int | None = None,
    tails: bool = False,
    guard: float = DEFAULT_GUARD,
) -> None:
    """Raise if some ``P_i`` (``i <= upto``) or, with ``tails``, some tail sum vanishes."""
    agg = agg if agg is not None else aggregates(inst)
    upto = agg.n if upto is None else upto
    cutoff = _cutoff(inst, guard)
    for i in range(1, upto + 1):
        if _vanishes(agg.P[i - 1], cutoff):
            raise ZeroPartialSum(i)
    if tails:
        for i in range(1, agg.n):
            if _vanishes(agg.Pbar[i - 1], cutoff):
                raise ZeroTailSum(i)


def det_coefficients(agg: PrefixAggregates) -> np.ndarray:
    """``det_i = P_i * A_n - P_n * A_i`` for ``i = 1..n-1``."""
    return agg.P[:-1] * agg.An - agg.Pn * agg.A[:-1]


def _pair_with_differences(coeffs: np.ndarray, dX: np.ndarray) -> np.ndarray:
    return ordered_sum(coeffs[:, None] * dX)


def chebyshev_identity1(inst: Instance) -> np.ndarray:
    agg = aggregates(inst)
    return _pair_with_differences(det_coefficients(agg), agg.dX)


def chebyshev_identity2(inst: Instance, guard: float = DEFAULT_GUARD) -> np.ndarray:
    """Second form; requires ``P_i != 0`` for every ``i = 1..n``."""
    agg = aggregates(inst)
    check_partial_sums(inst, agg, guard=guard)
    P = agg.P[:-1]
    coeffs = agg.Pn * (P * (agg.An / agg.Pn - agg.A[:-1] / P))
    return _pair_with_differences(coeffs, agg.dX)


def chebyshev_identity3(inst: Instance, guard: float = DEFAULT_GUARD) -> np.ndarray:
    """Third form; requires ``P_i != 0`` and ``P_n - P_i != 0`` for ``i = 1..n-1``."""
    agg = aggregates(inst)
    check_partial_sums(inst, agg, upto=agg.n - 1, tails=True, guard=guard)
    P = agg.P[:-1]
    coeffs = P * agg.Pbar * (agg.Abar / agg.Pbar - agg.A[:-1] / P)
    return _pair_with_differences(coeffs, agg.dX)


def kernel_matrix(agg: PrefixAggregates, *, tail_offset: int = 0) -> np.ndarray:
    """Symmetric ``(n-1) x (n-1)`` kernel ``K[i, j] = P_min(i,j) * (P_n - P_max(i,j))``.

    ``tail_offset=1`` reproduces a known misprint of the tail index
    (``max + 1``); it exists only so regressions can detect it.
    """
    idx = np.arange(1, agg.n)
    lo = np.minimum.outer(idx, idx)
    hi = np.maximum.outer(idx, idx) + tail_offset
    # tails[k] = P_n - P_k for k = 0..n, with P_0 = 0
    tails = agg.Pn - np.concatenate(([0.0], agg.P))
    return agg.P[lo - 1] * tails[hi]


def kernel_rows(K: np.ndarray, dA: np.ndarray) -> np.ndarray:
    """``sum_j K[i, j] * da_j`` for every row, each summed left to right."""
    return ordered_sum(K * dA[None, :], axis=1)


def chebyshev_double_sum(inst: Instance) -> np.ndarray:
    agg = aggregates(inst)
    rows = kernel_rows(kernel_matrix(agg), agg.dA)
    return _pair_with_differences(rows, agg.dX)


def lemma_kernel_identity_check(agg: PrefixAggregates, *, tail_offset: int = 0) -> float:
    """Largest ``|det_i - sum_j K[i, j] da_j|`` over the rows."""
    if agg.n < 2:
        raise ValueError("need n >= 2")
    residual = det_coefficients(agg) - kernel_rows(kernel_matrix(agg, tail_offset=tail_offset), agg.dA)
    return float(np.max(np.abs(residual)))


def summation_by_parts(d: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Evaluate ``sum_{l<m} d_l (v_{l+1} - v_l)`` as ``d_m v_m - d_1 v_1 - sum v_{l+1} (d_{l+1} - d_l)``.

    ``d`` holds ``m`` scalars and ``v`` holds ``m`` rows (vectors or scalars).
    """
    d = np.asarray(d)
    v = np.asarray(v)
    if d.shape[0] != v.shape[0] or d.shape[0] < 2:
        raise ValueError("need matching sequences of length >= 2")
    dd = np.diff(d)
    dd = dd.reshape((-1,) + (1,) * (v.ndim - 1))
    return d[-1] * v[-1] - d[0] * v[0] - ordered_sum(v[1:] * dd)


EVALUATORS = {
    "direct": chebyshev_direct,
    "identity1": chebyshev_identity1,
    "identity2": chebyshev_identity2,
    "identity3": chebyshev_identity3,
    "double_sum": chebyshev_double_sum,
}
