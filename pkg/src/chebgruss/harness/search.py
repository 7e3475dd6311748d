"""Derivative-free search for instances that make a bound tight.

The objective is the tightness ratio ``||T_n|| / bound`` for one bound
family. A multi-start randomized coordinate search climbs it: perturb one
weight, one scalar or one vector coordinate; keep the move if the ratio
improves; shrink the step by 0.9 after 50 consecutive failures; restart from
a fresh random point once the step drops below 1e-8.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..bounds import BASELINE_FAMILIES, UNWEIGHTED_FAMILIES, Family, HolderPair, evaluate_family
from ..functional import t_norm
from ..space import Instance, NormDescriptor
from .io import instance_to_json

CEILING_TOL = 1e-9
STALL_LIMIT = 50
STEP_DECAY = 0.9
INITIAL_STEP = 0.5
MIN_STEP = 1e-8
DEFAULT_BUDGET = 20_000
# bounds this small relative to the instance scale are treated as degenerate (0/0)
DEGENERATE_REL = 1e-12


class SharpnessCeilingError(RuntimeError):
    """A search found ``||T_n|| / bound`` above 1, which means a bound is wrong."""


@dataclass
class SharpnessResult:
    family: Family
    best_ratio: float
    witness: Instance
    iterations: int
    restarts: int
    trace: list[tuple[int, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "best_ratio": self.best_ratio,
            "iterations": self.iterations,
            "restarts": self.restarts,
            "witness": instance_to_json(self.witness),
            "trace": [[i, r] for i, r in self.trace],
        }


def weight_mode_for(family: Family) -> str:
    """How the search may move the weights for a given family."""
    if family in UNWEIGHTED_FAMILIES:
        return "uniform"
    if family in BASELINE_FAMILIES:
        return "simplex"
    if family.value.startswith(("thm33", "thm34")):
        return "positive"
    return "free"


class _Objective:
    def __init__(self, family: Family, norm: NormDescriptor, holder: HolderPair | None) -> None:
        self.family = family
        self.norm = norm
        self.holder = holder
        self.calls = 0

    def __call__(self, p: np.ndarray, a: np.ndarray, x: np.ndarray) -> tuple[float, Instance | None]:
        self.calls += 1
        try:
            inst = Instance(p, a, x, self.norm)
        except ValueError:
            return 0.0, None
        bound = evaluate_family(inst, self.family, self.holder)
        if not bound.applicable or bound.value is None:
            return 0.0, inst
        if bound.value <= DEGENERATE_REL * inst.scale():
            return 0.0, inst
        return t_norm(inst) / bound.value, inst


def _random_weights(mode: str, n: int, rng: np.random.Generator) -> np.ndarray:
    if mode == "uniform":
        return np.full(n, 1.0 / n)
    if mode == "simplex":
        w = rng.dirichlet(np.ones(n))
        return w / np.sum(w)
    if mode == "positive":
        return rng.uniform(0.1, 1.0, n)
    return rng.uniform(-1.0, 1.0, n)


def _random_vectors(n: int, d: int, complex_space: bool, rng: np.random.Generator) -> np.ndarray:
    x = rng.uniform(-1.0, 1.0, (n, d))
    if complex_space:
        x = x + 1j * rng.uniform(-1.0, 1.0, (n, d))
    return x


def _two_point_start(n: int, d: int, complex_space: bool) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a = np.zeros(n)
    a[-1] = 1.0
    x = np.zeros((n, d), dtype=complex if complex_space else float)
    x[-1, 0] = 1.0
    return np.full(n, 1.0 / n), a, x


def _fix_weights(p: np.ndarray, mode: str) -> np.ndarray:
    if mode == "simplex":
        p = np.abs(p)
        total = np.sum(p)
        return p / total if total > 0 else np.full(p.shape[0], 1.0 / p.shape[0])
    if mode == "positive":
        return np.maximum(np.abs(p), 1e-12)
    return p


def _perturb(p, a, x, mode: str, step: float, rng: np.random.Generator):
    n, d = x.shape
    complex_space = np.iscomplexobj(x)
    slots = n + n * d * (2 if complex_space else 1)
    if mode != "uniform":
        slots += n
    k = int(rng.integers(slots))
    delta = step * rng.uniform(-1.0, 1.0)
    p, a, x = p.copy(), a.copy(), x.copy()
    if k < n:
        a[k] += delta
        return p, a, x
    k -= n
    if mode != "uniform":
        if k < n:
            p[k] += delta
            return _fix_weights(p, mode), a, x
        k -= n
    if complex_space and k >= n * d:
        k -= n * d
        x[k // d, k % d] += 1j * delta
    else:
        x[k // d, k % d] += delta
    return p, a, x


def sharpness_search(
    family: Family | str,
    n: int,
    dimension: int = 1,
    norm: NormDescriptor | None = None,
    budget: int = DEFAULT_BUDGET,
    *,
    seed: int = 0,
    holder: HolderPair | None = None,
    structured_start: bool = True,
    keep_trace: bool = True,
    target: float = 1.0 - 1e-12,
) -> SharpnessResult:
    """Maximize the tightness ratio of ``family`` over length-``n`` instances.

    The first start is the two-point pattern ``a = (0, ..., 0, 1)``,
    ``x = (0, ..., 0, e_1)`` with uniform weights unless ``structured_start``
    is off; later starts are random. The search stops early once the ratio
    reaches ``target`` (nothing above 1 is attainable), otherwise it spends
    the whole ``budget`` of objective evaluations.
    """
    family = Family(family)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if n < 2:
        raise ValueError("n must be >= 2")
    norm = norm or NormDescriptor.lp(2.0, dimension)
    if norm.dimension != dimension:
        norm = norm.with_dimension(dimension)
    d = norm.dimension
    complex_space = norm.is_complex_space
    mode = weight_mode_for(family)
    rng = np.random.default_rng(seed)
    objective = _Objective(family, norm, holder)

    best_ratio = -1.0
    best_inst: Instance | None = None
    trace: list[tuple[int, float]] = []
    restarts = 0

    def start():
        if restarts == 0 and structured_start:
            return _two_point_start(n, d, complex_space)
        return _random_weights(mode, n, rng), rng.uniform(-1.0, 1.0, n), _random_vectors(n, d, complex_space, rng)

    while objective.calls < budget:
        p, a, x = start()
        ratio, inst = objective(p, a, x)
        step, stall = INITIAL_STEP, 0
        while True:
            if ratio > best_ratio and inst is not None:
                best_ratio, best_inst = ratio, inst
                if keep_trace:
                    trace.append((objective.calls, ratio))
                if ratio > 1.0 + CEILING_TOL:
                    raise SharpnessCeilingError(
                        f"{family.value}: ratio {ratio!r} exceeds 1 at {instance_to_json(inst)}"
                    )
            if best_ratio >= target or objective.calls >= budget or step < MIN_STEP:
                break
            cp, ca, cx = _perturb(p, a, x, mode, step, rng)
            cand_ratio, cand_inst = objective(cp, ca, cx)
            if cand_ratio > ratio:
                p, a, x, ratio, inst = cp, ca, cx, cand_ratio, cand_inst
                stall = 0
            else:
                stall += 1
                if stall >= STALL_LIMIT:
                    step *= STEP_DECAY
                    stall = 0
        if best_ratio >= target:
            break
        restarts += 1

    if best_inst is None:
        p, a, x = _two_point_start(n, d, complex_space)
        best_inst = Instance(p, a, x, norm)
        best_ratio = 0.0
    return SharpnessResult(family, best_ratio, best_inst, objective.calls, restarts, trace)
