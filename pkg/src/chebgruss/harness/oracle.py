"""Exact rational reference evaluator.

Everything here works on :class:`fractions.Fraction` with explicit 1-based
loops written straight from the defining sums. Nothing is shared with the
numpy pipeline, so agreement between the two is a genuine cross-check.
Only norms that stay rational are supported (l^1, l^inf, real line).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..space import INF, Instance, NormDescriptor

Vec = tuple[Fraction, ...]


class OracleError(ValueError):
    """The instance cannot be evaluated exactly."""


def as_fraction(value) -> Fraction:
    if isinstance(value, (complex, np.complexfloating)):
        raise OracleError("complex entries are not supported by the exact oracle")
    return Fraction(value)


def exact_norm_kind(nd: NormDescriptor) -> str:
    if nd.kind == "real_abs":
        return "l1"
    if nd.kind == "lp" and nd.exponent == 1.0:
        return "l1"
    if nd.kind == "lp" and nd.exponent == INF:
        return "linf"
    raise OracleError(f"norm {nd.label()} is not rational-exact")


def vnorm(v: Vec, kind: str) -> Fraction:
    if kind == "l1":
        return sum((abs(c) for c in v), Fraction(0))
    return max((abs(c) for c in v), default=Fraction(0))


def _add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def _mul(s: Fraction, v: Vec) -> Vec:
    return tuple(s * c for c in v)


def _vsum(vs: Sequence[Vec], d: int) -> Vec:
    total: Vec = tuple(Fraction(0) for _ in range(d))
    for v in vs:
        total = _add(total, v)
    return total


def _root_sum(values: Sequence[Fraction], r: float) -> float:
    """``(sum v^r)^(1/r)``; the inner sum is exact when ``r`` is an integer."""
    if float(r).is_integer():
        inner = sum((v ** int(r) for v in values), Fraction(0))
        return float(inner) ** (1.0 / r)
    return math.fsum(float(v) ** r for v in values) ** (1.0 / r)


def _weighted_root_sum(weights: Sequence[Fraction], values: Sequence[Fraction], r: float) -> float:
    if float(r).is_integer():
        inner = sum((w * v ** int(r) for w, v in zip(weights, values)), Fraction(0))
        return float(inner) ** (1.0 / r)
    return math.fsum(float(w) * float(v) ** r for w, v in zip(weights, values)) ** (1.0 / r)


@dataclass
class OracleResult:
    """Exact values for one instance.

    ``evaluators`` maps each representation name to its exact vector (or
    ``None`` when its hypothesis fails). ``bounds`` maps family names to an
    exact :class:`Fraction`, a float (Hölder branches after the final root),
    or ``None`` when the family does not apply.
    """

    n: int
    t: Vec
    t_norm: Fraction
    t_unweighted: Vec
    t_unweighted_norm: Fraction
    evaluators: dict[str, Vec | None]
    dets: list[Fraction]
    kernel: list[list[Fraction]]
    lemma_discrepancy: Fraction
    bounds: dict[str, Fraction | float | None] = field(default_factory=dict)


def chebyshev_exact(weights: Sequence[Fraction], scalars: Sequence[Fraction], vectors: Sequence[Vec]) -> Vec:
    n = len(weights)
    d = len(vectors[0])
    Pn = sum(weights, Fraction(0))
    s1 = _vsum([_mul(weights[i] * scalars[i], vectors[i]) for i in range(n)], d)
    s2 = sum((weights[i] * scalars[i] for i in range(n)), Fraction(0))
    s3 = _vsum([_mul(weights[i], vectors[i]) for i in range(n)], d)
    return _sub(_mul(Pn, s1), _mul(s2, s3))


def exact_oracle(
    inst: Instance | None = None,
    *,
    weights: Sequence | None = None,
    scalars: Sequence | None = None,
    vectors: Sequence | None = None,
    norm_kind: str = "l1",
    holder_p: float = 2.0,
) -> OracleResult:
    """Evaluate the functional, every representation and every bound exactly."""
    if inst is not None:
        norm_kind = exact_norm_kind(inst.norm)
        weights = [as_fraction(w) for w in inst.weights]
        scalars = [as_fraction(a) for a in inst.scalars]
        vectors = [tuple(as_fraction(c) for c in row) for row in inst.vectors]
    else:
        if weights is None or scalars is None or vectors is None:
            raise OracleError("need an instance or weights, scalars and vectors")
        if norm_kind not in ("l1", "linf"):
            raise OracleError(f"norm {norm_kind!r} is not rational-exact")
        weights = [as_fraction(w) for w in weights]
        scalars = [as_fraction(a) for a in scalars]
        vectors = [
            tuple(as_fraction(c) for c in (row if isinstance(row, (list, tuple)) else (row,)))
            for row in vectors
        ]
    n = len(weights)
    if n < 2 or len(scalars) != n or len(vectors) != n:
        raise OracleError("need n >= 2 and equal lengths")
    d = len(vectors[0])
    p_exp = float(holder_p)
    q_exp = p_exp / (p_exp - 1)

    # 1-based helpers
    p = [Fraction(0)] + list(weights)
    a = [Fraction(0)] + list(scalars)
    x: list[Vec] = [tuple(Fraction(0) for _ in range(d))] + list(vectors)
    P = [Fraction(0)] * (n + 1)
    A = [Fraction(0)] * (n + 1)
    for i in range(1, n + 1):
        P[i] = P[i - 1] + p[i]
        A[i] = A[i - 1] + p[i] * a[i]
    Pbar = [P[n] - P[i] for i in range(n + 1)]
    Abar = [A[n] - A[i] for i in range(n + 1)]
    da = [Fraction(0)] + [a[j + 1] - a[j] for j in range(1, n)]
    dx: list[Vec] = [x[0]] + [_sub(x[i + 1], x[i]) for i in range(1, n)]
    dxn = [Fraction(0)] + [vnorm(dx[i], norm_kind) for i in range(1, n)]
    zero: Vec = tuple(Fraction(0) for _ in range(d))

    t = chebyshev_exact(weights, scalars, vectors)

    dets = [P[i] * A[n] - P[n] * A[i] for i in range(1, n)]
    id1 = zero
    for i in range(1, n):
        id1 = _add(id1, _mul(dets[i - 1], dx[i]))

    id2: Vec | None = None
    if all(P[i] != 0 for i in range(1, n + 1)):
        id2 = zero
        for i in range(1, n):
            id2 = _add(id2, _mul(P[n] * P[i] * (A[n] / P[n] - A[i] / P[i]), dx[i]))

    id3: Vec | None = None
    if all(P[i] != 0 and Pbar[i] != 0 for i in range(1, n)):
        id3 = zero
        for i in range(1, n):
            id3 = _add(id3, _mul(P[i] * Pbar[i] * (Abar[i] / Pbar[i] - A[i] / P[i]), dx[i]))

    K = [[P[min(i, j)] * Pbar[max(i, j)] for j in range(1, n)] for i in range(1, n)]
    dsum = zero
    for i in range(1, n):
        for j in range(1, n):
            dsum = _add(dsum, _mul(K[i - 1][j - 1] * da[j], dx[i]))

    lemma = max(
        abs(dets[i - 1] - sum((K[i - 1][j - 1] * da[j] for j in range(1, n)), Fraction(0)))
        for i in range(1, n)
    )

    u = [Fraction(1, n)] * n
    tu = chebyshev_exact(u, scalars, vectors)

    res = OracleResult(
        n=n,
        t=t,
        t_norm=vnorm(t, norm_kind),
        t_unweighted=tu,
        t_unweighted_norm=vnorm(tu, norm_kind),
        evaluators={"direct": t, "identity1": id1, "identity2": id2, "identity3": id3, "double_sum": dsum},
        dets=dets,
        kernel=K,
        lemma_discrepancy=lemma,
    )
    B = res.bounds
    rng = range(1, n)
    abs_da = [abs(da[j]) for j in rng]
    abs_dx = [dxn[j] for j in rng]
    sum_da = sum(abs_da, Fraction(0))
    sum_dx = sum(abs_dx, Fraction(0))
    max_da = max(abs_da)
    max_dx = max(abs_dx)

    # classical bounds: probability weights only
    if all(w >= 0 for w in weights) and P[n] == 1:
        spread = sum((i * i * p[i] for i in range(1, n + 1)), Fraction(0)) - sum(
            (i * p[i] for i in range(1, n + 1)), Fraction(0)
        ) ** 2
        pair_gap = sum(
            (p[i] * p[j] * (j - i) for i in range(1, n + 1) for j in range(i + 1, n + 1)), Fraction(0)
        )
        B["baseline_maxmax"] = spread * max_da * max_dx
        B["baseline_sum_11"] = Fraction(1, 2) * sum((p[i] * (1 - p[i]) for i in range(1, n + 1)), Fraction(0)) * sum_da * sum_dx
        B["baseline_holder"] = float(pair_gap) * _root_sum(abs_da, p_exp) * _root_sum(abs_dx, q_exp)
    else:
        B["baseline_maxmax"] = B["baseline_sum_11"] = B["baseline_holder"] = None

    abs_det = [abs(v) for v in dets]
    B["thm31_max_sum"] = max(abs_det) * sum_dx
    B["thm31_holder"] = _root_sum(abs_det, q_exp) * _root_sum(abs_dx, p_exp)
    B["thm31_sum_max"] = sum(abs_det, Fraction(0)) * max_dx

    if all(P[i] != 0 for i in range(1, n + 1)):
        dev = [abs(A[n] / P[n] - A[i] / P[i]) for i in rng]
        w = [abs(P[i]) for i in rng]
        pre = abs(P[n])
        B["thm33_branch1"] = pre * max(dev) * sum((w[k] * abs_dx[k] for k in range(n - 1)), Fraction(0))
        B["thm33_branch2"] = float(pre) * _weighted_root_sum(w, dev, q_exp) * _weighted_root_sum(w, abs_dx, p_exp)
        B["thm33_branch3"] = pre * sum((w[k] * dev[k] for k in range(n - 1)), Fraction(0)) * max_dx
    else:
        B["thm33_branch1"] = B["thm33_branch2"] = B["thm33_branch3"] = None

    if all(P[i] != 0 and Pbar[i] != 0 for i in rng):
        dev = [abs(Abar[i] / Pbar[i] - A[i] / P[i]) for i in rng]
        w = [abs(P[i]) * abs(Pbar[i]) for i in rng]
        B["thm34_branch1"] = max(dev) * sum((w[k] * abs_dx[k] for k in range(n - 1)), Fraction(0))
        B["thm34_branch2"] = _weighted_root_sum(w, dev, q_exp) * _weighted_root_sum(w, abs_dx, p_exp)
        B["thm34_branch3"] = sum((w[k] * dev[k] for k in range(n - 1)), Fraction(0)) * max_dx
    else:
        B["thm34_branch1"] = B["thm34_branch2"] = B["thm34_branch3"] = None

    absK = [abs(K[i][j]) for i in range(n - 1) for j in range(n - 1)]
    B["thm35_branch1"] = max(absK) * sum_da * sum_dx
    B["thm35_branch2"] = _root_sum(absK, q_exp) * _root_sum(abs_da, p_exp) * _root_sum(abs_dx, p_exp)
    B["thm35_branch3"] = sum(absK, Fraction(0)) * max_da * max_dx

    # unweighted families, always relative to T_n(a, x)
    S = [Fraction(0)] * (n + 1)
    for i in range(1, n + 1):
        S[i] = S[i - 1] + a[i]
    inv_n2 = Fraction(1, n * n)
    cdet = [abs(i * S[n] - n * S[i]) for i in rng]
    B["cor32_max_sum"] = inv_n2 * max(cdet) * sum_dx
    B["cor32_holder"] = float(inv_n2) * _root_sum(cdet, q_exp) * _root_sum(abs_dx, p_exp)
    B["cor32_sum_max"] = inv_n2 * sum(cdet, Fraction(0)) * max_dx

    dev = [abs(S[n] / n - S[i] / i) for i in rng]
    wi = [Fraction(i) for i in rng]
    B["cor34_branch1"] = Fraction(1, n) * max(dev) * sum((wi[k] * abs_dx[k] for k in range(n - 1)), Fraction(0))
    B["cor34_branch2"] = (1 / n) * _weighted_root_sum(wi, dev, q_exp) * _weighted_root_sum(wi, abs_dx, p_exp)
    B["cor34_branch3"] = Fraction(1, n) * sum((wi[k] * dev[k] for k in range(n - 1)), Fraction(0)) * max_dx

    dev = [abs((S[n] - S[i]) / (n - i) - S[i] / i) for i in rng]
    wi = [Fraction(i * (n - i)) for i in rng]
    B["thm34_uniform_branch1"] = inv_n2 * max(dev) * sum((wi[k] * abs_dx[k] for k in range(n - 1)), Fraction(0))
    B["thm34_uniform_branch2"] = float(inv_n2) * _weighted_root_sum(wi, dev, q_exp) * _weighted_root_sum(wi, abs_dx, p_exp)
    B["thm34_uniform_branch3"] = inv_n2 * sum((wi[k] * dev[k] for k in range(n - 1)), Fraction(0)) * max_dx

    grid = [min(i, j) * (n - max(i, j)) for i in rng for j in rng]
    k_inf = Fraction(max(grid), n * n)
    B["cor36_kinf"] = k_inf * sum_da * sum_dx
    B["cor36_quarter"] = Fraction(1, 4) * sum_da * sum_dx
    k_q = _root_sum([Fraction(g) for g in grid], q_exp) / (n * n)
    B["cor38_kq"] = k_q * _root_sum(abs_da, p_exp) * _root_sum(abs_dx, p_exp)
    B["cor38_cap"] = 0.25 * (n - 1) ** (2 / q_exp) * _root_sum(abs_da, p_exp) * _root_sum(abs_dx, p_exp)
    B["closing_maxmax"] = Fraction(n * n - 1, 12) * max_da * max_dx
    return res


UNWEIGHTED_PREFIXES = ("cor32", "cor34", "thm34_uniform", "cor36", "cor38", "closing")


def oracle_target(family: str, result: OracleResult) -> Fraction:
    """The exact norm a family bounds: ``T_n(a, x)`` for unweighted families, else ``T_n(p; a, x)``."""
    if family.startswith(UNWEIGHTED_PREFIXES):
        return result.t_unweighted_norm
    return result.t_norm
