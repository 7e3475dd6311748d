"""Upper bounds for the norm of the Chebyshev functional.

Every bound family is evaluated separately and returns a :class:`BoundValue`.
A family whose hypotheses fail on an instance comes back with
``applicable=False`` and a reason instead of raising, so that
:func:`evaluate_all` can always assemble a full report.

Families whose name starts with ``baseline`` need probability weights.
The unweighted families (``cor32``, ``cor34``, ``thm34_uniform``, ``cor36``,
``cor38``, ``closing``) bound ``T_n(a, x)``, which is ``T_n(p; a, x)`` at
``p_i = 1/n``; inside :func:`evaluate_all` they apply only to such weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from . import constants
from .functional import PrefixAggregates, aggregates, chebyshev_direct, ordered_sum
from .identities import DEFAULT_GUARD, HypothesisError, check_partial_sums, det_coefficients, kernel_matrix
from .space import Instance, NormDescriptor, norm, norms

VALIDITY_RTOL = 1e-10
WEIGHT_TOL = 1e-12


class Family(str, Enum):
    BASELINE_MAXMAX = "baseline_maxmax"
    BASELINE_SUM_11 = "baseline_sum_11"
    BASELINE_HOLDER = "baseline_holder"
    THM31_MAX_SUM = "thm31_max_sum"
    THM31_HOLDER = "thm31_holder"
    THM31_SUM_MAX = "thm31_sum_max"
    COR32_MAX_SUM = "cor32_max_sum"
    COR32_HOLDER = "cor32_holder"
    COR32_SUM_MAX = "cor32_sum_max"
    THM33_BRANCH1 = "thm33_branch1"
    THM33_BRANCH2 = "thm33_branch2"
    THM33_BRANCH3 = "thm33_branch3"
    COR34_BRANCH1 = "cor34_branch1"
    COR34_BRANCH2 = "cor34_branch2"
    COR34_BRANCH3 = "cor34_branch3"
    THM34_BRANCH1 = "thm34_branch1"
    THM34_BRANCH2 = "thm34_branch2"
    THM34_BRANCH3 = "thm34_branch3"
    THM34_UNIFORM_BRANCH1 = "thm34_uniform_branch1"
    THM34_UNIFORM_BRANCH2 = "thm34_uniform_branch2"
    THM34_UNIFORM_BRANCH3 = "thm34_uniform_branch3"
    THM35_BRANCH1 = "thm35_branch1"
    THM35_BRANCH2 = "thm35_branch2"
    THM35_BRANCH3 = "thm35_branch3"
    COR36_KINF = "cor36_kinf"
    COR36_QUARTER = "cor36_quarter"
    COR38_KQ = "cor38_kq"
    COR38_CAP = "cor38_cap"
    CLOSING_MAXMAX = "closing_maxmax"

    def __str__(self) -> str:
        return self.value


BASELINE_FAMILIES = (Family.BASELINE_MAXMAX, Family.BASELINE_SUM_11, Family.BASELINE_HOLDER)


@dataclass(frozen=True)
class HolderPair:
    p_exp: float
    q_exp: float

    def __post_init__(self) -> None:
        if not (1 < self.p_exp < math.inf and 1 < self.q_exp < math.inf):
            raise ValueError(f"Hölder exponents must lie in (1, inf), got {self.p_exp}, {self.q_exp}")
        if abs(1 / self.p_exp + 1 / self.q_exp - 1) > 1e-12:
            raise ValueError(f"1/{self.p_exp} + 1/{self.q_exp} != 1")

    @classmethod
    def from_p(cls, p: float) -> HolderPair:
        p = float(p)
        if not p > 1:
            raise ValueError(f"Hölder exponent must be > 1, got {p}")
        return cls(p, p / (p - 1))

    def swapped(self) -> HolderPair:
        return HolderPair(self.q_exp, self.p_exp)


DEFAULT_HOLDER = HolderPair(2.0, 2.0)


@dataclass(frozen=True)
class BoundValue:
    family: Family
    value: float | None
    applicable: bool = True
    reason: str | None = None
    holder: HolderPair | None = None

    @classmethod
    def skip(cls, family: Family, reason: str, holder: HolderPair | None = None) -> BoundValue:
        return cls(family, None, False, reason, holder)


def _power_sum_root(values: np.ndarray, r: float, weights: np.ndarray | None = None) -> float:
    """``(sum w_i v_i^r)^(1/r)`` for nonnegative ``v``, safe for large ``r``."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0
    top = float(values.max())
    if top == 0.0:
        return 0.0
    terms = (values / top) ** r
    if weights is not None:
        terms = weights * terms
    return top * float(ordered_sum(terms)) ** (1.0 / r)


def _three_branches(
    families: Sequence[Family],
    coeffs: np.ndarray,
    diffs: np.ndarray,
    holder: HolderPair,
    weights: np.ndarray | None = None,
    prefactor: float = 1.0,
    printed_variant: bool = False,
) -> list[BoundValue]:
    """max*sum, Hölder and sum*max splits of ``prefactor * sum w_i c_i g_i``.

    ``coeffs`` plays the ``q`` role and ``diffs`` the ``p`` role in the middle
    branch. ``printed_variant`` drops the ``p``-th power inside the second
    factor, i.e. ``(sum w_i g_i)^(1/p)``.
    """
    w = np.ones_like(coeffs, dtype=float) if weights is None else weights
    b1 = prefactor * float(coeffs.max()) * float(ordered_sum(w * diffs))
    first = _power_sum_root(coeffs, holder.q_exp, w)
    if printed_variant:
        second = float(ordered_sum(w * diffs)) ** (1.0 / holder.p_exp)
    else:
        second = _power_sum_root(diffs, holder.p_exp, w)
    b2 = prefactor * first * second
    b3 = prefactor * float(ordered_sum(w * coeffs)) * float(diffs.max())
    return [
        BoundValue(families[0], b1),
        BoundValue(families[1], b2, holder=holder),
        BoundValue(families[2], b3),
    ]


def _difference_norms(inst: Instance, agg: PrefixAggregates) -> tuple[np.ndarray, np.ndarray]:
    return np.abs(agg.dA), norms(agg.dX, inst.norm)


def is_probability(weights: np.ndarray, tol: float = WEIGHT_TOL) -> bool:
    return bool(np.all(weights >= 0) and abs(float(ordered_sum(weights)) - 1.0) <= tol)


def is_uniform_probability(weights: np.ndarray, tol: float = WEIGHT_TOL) -> bool:
    n = weights.shape[0]
    return bool(np.all(np.abs(weights - 1.0 / n) <= tol))


# --- weighted families -------------------------------------------------------


def bounds_baseline(
    inst: Instance, agg: PrefixAggregates | None = None, holder: HolderPair | None = None
) -> list[BoundValue]:
    """The three classical bounds, valid for probability weights only.

    The Hölder branch puts ``p`` on the scalar differences and ``q`` on the
    vector differences, the reverse of the convention in
    :func:`bounds_theorem31`.
    """
    holder = holder or DEFAULT_HOLDER
    if not is_probability(inst.weights):
        reason = "NotProbabilityWeights: weights must be nonnegative and sum to 1"
        return [BoundValue.skip(f, reason, holder if f is Family.BASELINE_HOLDER else None) for f in BASELINE_FAMILIES]
    agg = agg or aggregates(inst)
    p = inst.weights
    da, dx = _difference_norms(inst, agg)
    idx = np.arange(1, inst.n + 1, dtype=float)
    spread = float(ordered_sum(idx * idx * p)) - float(ordered_sum(idx * p)) ** 2
    # sum_{i<j} p_i p_j (j - i) == sum_k P_k (P_n - P_k)
    pair_gap = float(ordered_sum(agg.P[:-1] * agg.Pbar))
    return [
        BoundValue(Family.BASELINE_MAXMAX, spread * float(da.max()) * float(dx.max())),
        BoundValue(
            Family.BASELINE_SUM_11,
            0.5 * float(ordered_sum(p * (1 - p))) * float(ordered_sum(da)) * float(ordered_sum(dx)),
        ),
        BoundValue(
            Family.BASELINE_HOLDER,
            pair_gap * _power_sum_root(da, holder.p_exp) * _power_sum_root(dx, holder.q_exp),
            holder=holder,
        ),
    ]


def bounds_theorem31(
    inst: Instance,
    agg: PrefixAggregates | None = None,
    dets: np.ndarray | None = None,
    holder: HolderPair | None = None,
) -> list[BoundValue]:
    holder = holder or DEFAULT_HOLDER
    agg = agg or aggregates(inst)
    dets = det_coefficients(agg) if dets is None else dets
    _, dx = _difference_norms(inst, agg)
    fams = (Family.THM31_MAX_SUM, Family.THM31_HOLDER, Family.THM31_SUM_MAX)
    return _three_branches(fams, np.abs(dets), dx, holder)


def _partial_sum_reason(exc: HypothesisError) -> str:
    return f"{type(exc).__name__}({exc.index})"


def bounds_theorem33(
    inst: Instance,
    agg: PrefixAggregates | None = None,
    holder: HolderPair | None = None,
    *,
    printed_variant: bool = False,
    guard: float = DEFAULT_GUARD,
) -> list[BoundValue]:
    """Bounds through the deviations ``|A_n/P_n - A_i/P_i|`` weighted by ``|P_i|``.

    ``printed_variant=True`` evaluates the middle branch with the second
    factor ``(sum |P_i| ||dx_i||)^(1/p)``; it is exposed for comparison only
    and is not part of :func:`evaluate_all`.
    """
    holder = holder or DEFAULT_HOLDER
    fams = (Family.THM33_BRANCH1, Family.THM33_BRANCH2, Family.THM33_BRANCH3)
    agg = agg or aggregates(inst)
    try:
        check_partial_sums(inst, agg, guard=guard)
    except HypothesisError as exc:
        return [BoundValue.skip(f, _partial_sum_reason(exc), holder if f is fams[1] else None) for f in fams]
    P = agg.P[:-1]
    dev = np.abs(agg.An / agg.Pn - agg.A[:-1] / P)
    _, dx = _difference_norms(inst, agg)
    return _three_branches(fams, dev, dx, holder, np.abs(P), abs(agg.Pn), printed_variant)


def bounds_theorem34(
    inst: Instance,
    agg: PrefixAggregates | None = None,
    holder: HolderPair | None = None,
    *,
    guard: float = DEFAULT_GUARD,
) -> list[BoundValue]:
    """Bounds through ``|Abar_i/Pbar_i - A_i/P_i|`` weighted by ``|P_i| |Pbar_i|``."""
    holder = holder or DEFAULT_HOLDER
    fams = (Family.THM34_BRANCH1, Family.THM34_BRANCH2, Family.THM34_BRANCH3)
    agg = agg or aggregates(inst)
    try:
        check_partial_sums(inst, agg, upto=agg.n - 1, tails=True, guard=guard)
    except HypothesisError as exc:
        return [BoundValue.skip(f, _partial_sum_reason(exc), holder if f is fams[1] else None) for f in fams]
    P = agg.P[:-1]
    dev = np.abs(agg.Abar / agg.Pbar - agg.A[:-1] / P)
    _, dx = _difference_norms(inst, agg)
    return _three_branches(fams, dev, dx, holder, np.abs(P) * np.abs(agg.Pbar))


def bounds_theorem35(
    inst: Instance,
    agg: PrefixAggregates | None = None,
    kernel: np.ndarray | None = None,
    holder: HolderPair | None = None,
) -> list[BoundValue]:
    holder = holder or DEFAULT_HOLDER
    agg = agg or aggregates(inst)
    K = np.abs(kernel_matrix(agg) if kernel is None else kernel)
    da, dx = _difference_norms(inst, agg)
    flat = K.ravel()
    return [
        BoundValue(
            Family.THM35_BRANCH1,
            float(flat.max()) * float(ordered_sum(da)) * float(ordered_sum(dx)),
        ),
        BoundValue(
            Family.THM35_BRANCH2,
            _power_sum_root(flat, holder.q_exp)
            * _power_sum_root(da, holder.p_exp)
            * _power_sum_root(dx, holder.p_exp),
            holder=holder,
        ),
        BoundValue(
            Family.THM35_BRANCH3,
            float(ordered_sum(flat)) * float(da.max()) * float(dx.max()),
        ),
    ]


# --- unweighted families -----------------------------------------------------


def _unweighted(scalars, vectors, nd: NormDescriptor | None) -> tuple[Instance, np.ndarray, np.ndarray]:
    inst = Instance.unweighted(scalars, vectors, nd)
    dA = np.diff(inst.scalars)
    return inst, np.abs(dA), norms(np.diff(inst.vectors, axis=0), inst.norm)


def bounds_corollary12(scalars, vectors, norm: NormDescriptor | None = None, holder: HolderPair | None = None) -> list[BoundValue]:
    """Classical bounds at uniform weights, with their closed-form constants.

    Returned under the baseline family names; they coincide with
    :func:`bounds_baseline` at ``p_i = 1/n``.
    """
    holder = holder or DEFAULT_HOLDER
    inst, da, dx = _unweighted(scalars, vectors, norm)
    n = inst.n
    return [
        BoundValue(Family.BASELINE_MAXMAX, (n * n - 1) / 12 * float(da.max()) * float(dx.max())),
        BoundValue(Family.BASELINE_SUM_11, 0.5 * (1 - 1 / n) * float(ordered_sum(da)) * float(ordered_sum(dx))),
        BoundValue(
            Family.BASELINE_HOLDER,
            (n * n - 1) / (6 * n) * _power_sum_root(da, holder.p_exp) * _power_sum_root(dx, holder.q_exp),
            holder=holder,
        ),
    ]


def bounds_corollary32(scalars, vectors, norm: NormDescriptor | None = None, holder: HolderPair | None = None) -> list[BoundValue]:
    """Determinant bounds with integer partial counts ``det(i, n; sum_{k<=i} a_k, sum a_k) / n^2``."""
    holder = holder or DEFAULT_HOLDER
    inst, _, dx = _unweighted(scalars, vectors, norm)
    n = inst.n
    S = np.cumsum(inst.scalars)
    i = np.arange(1, n, dtype=float)
    dets = np.abs(i * S[-1] - n * S[:-1])
    fams = (Family.COR32_MAX_SUM, Family.COR32_HOLDER, Family.COR32_SUM_MAX)
    return _three_branches(fams, dets, dx, holder, prefactor=1.0 / (n * n))


def bounds_corollary34(scalars, vectors, norm: NormDescriptor | None = None, holder: HolderPair | None = None) -> list[BoundValue]:
    holder = holder or DEFAULT_HOLDER
    inst, _, dx = _unweighted(scalars, vectors, norm)
    n = inst.n
    S = np.cumsum(inst.scalars)
    i = np.arange(1, n, dtype=float)
    dev = np.abs(S[-1] / n - S[:-1] / i)
    fams = (Family.COR34_BRANCH1, Family.COR34_BRANCH2, Family.COR34_BRANCH3)
    return _three_branches(fams, dev, dx, holder, i, 1.0 / n)


def bounds_theorem34_uniform(
    scalars, vectors, norm: NormDescriptor | None = None, holder: HolderPair | None = None
) -> list[BoundValue]:
    """Uniform-weight specialisation: weights ``i (n - i)``, prefactor ``1/n^2``."""
    holder = holder or DEFAULT_HOLDER
    inst, _, dx = _unweighted(scalars, vectors, norm)
    n = inst.n
    S = np.cumsum(inst.scalars)
    i = np.arange(1, n, dtype=float)
    dev = np.abs((S[-1] - S[:-1]) / (n - i) - S[:-1] / i)
    fams = (Family.THM34_UNIFORM_BRANCH1, Family.THM34_UNIFORM_BRANCH2, Family.THM34_UNIFORM_BRANCH3)
    return _three_branches(fams, dev, dx, holder, i * (n - i), 1.0 / (n * n))


def bound_corollary36(scalars, vectors, norm: NormDescriptor | None = None) -> list[BoundValue]:
    """``k_inf * sum|da| * sum||dx||`` and the same with the cap ``1/4``."""
    inst, da, dx = _unweighted(scalars, vectors, norm)
    base = float(ordered_sum(da)) * float(ordered_sum(dx))
    return [
        BoundValue(Family.COR36_KINF, constants.k_infinity(inst.n) * base),
        BoundValue(Family.COR36_QUARTER, constants.k_infinity_cap() * base),
    ]


def bound_corollary38(
    scalars, vectors, norm: NormDescriptor | None = None, holder: HolderPair | None = None
) -> list[BoundValue]:
    """``k_q`` (``q`` the dual exponent) times the ``p``-sums of both difference sequences, and its cap."""
    holder = holder or DEFAULT_HOLDER
    inst, da, dx = _unweighted(scalars, vectors, norm)
    base = _power_sum_root(da, holder.p_exp) * _power_sum_root(dx, holder.p_exp)
    return [
        BoundValue(Family.COR38_KQ, constants.k_q(inst.n, holder.q_exp) * base, holder=holder),
        BoundValue(Family.COR38_CAP, constants.k_q_cap(inst.n, holder.q_exp) * base, holder=holder),
    ]


def bound_closing_maxmax(scalars, vectors, norm: NormDescriptor | None = None) -> BoundValue:
    inst, da, dx = _unweighted(scalars, vectors, norm)
    n = inst.n
    return BoundValue(Family.CLOSING_MAXMAX, (n * n - 1) / 12 * float(da.max()) * float(dx.max()))


# --- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    """A bound together with its comparison against ``||T_n||``.

    ``ratio`` is ``||T_n|| / value``; when both sides vanish (to within the
    validity tolerance) it is reported as 1 with ``exact_equality`` set, and it
    is ``None`` for inapplicable bounds or a nonzero norm over a zero bound.
    """

    bound: BoundValue
    valid: bool | None
    ratio: float | None
    exact_equality: bool = False

    @property
    def family(self) -> Family:
        return self.bound.family


def check_bound(bound: BoundValue, t_norm: float, tolerance: float) -> BoundCheck:
    if not bound.applicable or bound.value is None:
        return BoundCheck(bound, None, None)
    value = bound.value
    valid = value + tolerance >= t_norm
    if value <= tolerance and t_norm <= tolerance:
        return BoundCheck(bound, valid, 1.0, exact_equality=True)
    if value == 0.0:
        return BoundCheck(bound, valid, None)
    return BoundCheck(bound, valid, t_norm / value)


@dataclass(frozen=True)
class BoundReport:
    t_value: np.ndarray
    t_norm: float
    scale: float
    tolerance: float
    holder: HolderPair
    checks: list[BoundCheck] = field(default_factory=list)

    def by_family(self) -> dict[Family, BoundCheck]:
        return {c.family: c for c in self.checks}

    def __getitem__(self, family: Family | str) -> BoundCheck:
        return self.by_family()[Family(family)]

    def violations(self) -> list[BoundCheck]:
        return [c for c in self.checks if c.valid is False]

    def to_dict(self) -> dict:
        rows = []
        for c in self.checks:
            row = {
                "family": c.family.value,
                "value": c.bound.value,
                "applicable": c.bound.applicable,
                "valid": c.valid,
                "ratio": c.ratio,
            }
            if c.exact_equality:
                row["exact_equality"] = True
            if c.bound.holder is not None:
                row["holder_p"] = c.bound.holder.p_exp
            if c.bound.reason:
                row["reason"] = c.bound.reason
            rows.append(row)
        return {"t_norm": self.t_norm, "bounds": rows}


_HOLDER_SUFFIXES = ("holder", "branch2", "kq", "cap")


def _unweighted_group(fn: Callable[..., list[BoundValue]], takes_holder: bool = True):
    def run(inst: Instance, agg: PrefixAggregates, holder: HolderPair, fams) -> list[BoundValue]:
        if not is_uniform_probability(inst.weights):
            reason = "weights are not uniform 1/n"
            return [
                BoundValue.skip(f, reason, holder if f.value.endswith(_HOLDER_SUFFIXES) else None)
                for f in fams
            ]
        if takes_holder:
            return fn(inst.scalars, inst.vectors, inst.norm, holder)
        return fn(inst.scalars, inst.vectors, inst.norm)

    return run


def _closing(a, x, nd):
    return [bound_closing_maxmax(a, x, nd)]


F = Family
# (families, evaluator(inst, agg, holder, families)) in report order
_GROUPS = [
    (BASELINE_FAMILIES, lambda inst, agg, h, _: bounds_baseline(inst, agg, h)),
    ((F.THM31_MAX_SUM, F.THM31_HOLDER, F.THM31_SUM_MAX), lambda inst, agg, h, _: bounds_theorem31(inst, agg, holder=h)),
    ((F.COR32_MAX_SUM, F.COR32_HOLDER, F.COR32_SUM_MAX), _unweighted_group(bounds_corollary32)),
    ((F.THM33_BRANCH1, F.THM33_BRANCH2, F.THM33_BRANCH3), lambda inst, agg, h, _: bounds_theorem33(inst, agg, h)),
    ((F.COR34_BRANCH1, F.COR34_BRANCH2, F.COR34_BRANCH3), _unweighted_group(bounds_corollary34)),
    ((F.THM34_BRANCH1, F.THM34_BRANCH2, F.THM34_BRANCH3), lambda inst, agg, h, _: bounds_theorem34(inst, agg, h)),
    (
        (F.THM34_UNIFORM_BRANCH1, F.THM34_UNIFORM_BRANCH2, F.THM34_UNIFORM_BRANCH3),
        _unweighted_group(bounds_theorem34_uniform),
    ),
    ((F.THM35_BRANCH1, F.THM35_BRANCH2, F.THM35_BRANCH3), lambda inst, agg, h, _: bounds_theorem35(inst, agg, holder=h)),
    ((F.COR36_KINF, F.COR36_QUARTER), _unweighted_group(bound_corollary36, takes_holder=False)),
    ((F.COR38_KQ, F.COR38_CAP), _unweighted_group(bound_corollary38)),
    ((F.CLOSING_MAXMAX,), _unweighted_group(_closing, takes_holder=False)),
]
del F

UNWEIGHTED_FAMILIES = tuple(
    f for fams, _ in _GROUPS for f in fams if f.value.startswith(("cor32", "cor34", "thm34_uniform", "cor36", "cor38", "closing"))
)


def bound_families(inst: Instance, holder: HolderPair | None = None) -> list[BoundValue]:
    """Every family on ``inst``, in :class:`Family` order."""
    holder = holder or DEFAULT_HOLDER
    agg = aggregates(inst)
    out: list[BoundValue] = []
    for fams, run in _GROUPS:
        out += run(inst, agg, holder, fams)
    return out


def evaluate_all(inst: Instance, holder: HolderPair | None = None, rtol: float = VALIDITY_RTOL) -> BoundReport:
    holder = holder or DEFAULT_HOLDER
    t = chebyshev_direct(inst)
    t_norm = norm(t, inst.norm)
    scale = inst.scale()
    tol = rtol * scale
    checks = [check_bound(b, t_norm, tol) for b in bound_families(inst, holder)]
    return BoundReport(t, t_norm, scale, tol, holder, checks)


def evaluate_family(inst: Instance, family: Family | str, holder: HolderPair | None = None) -> BoundValue:
    """A single family, evaluating only the group it belongs to."""
    family = Family(family)
    holder = holder or DEFAULT_HOLDER
    for fams, run in _GROUPS:
        if family in fams:
            return run(inst, aggregates(inst), holder, fams)[fams.index(family)]
    raise KeyError(family)
