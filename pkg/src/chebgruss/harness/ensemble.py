"""Seeded random instances.

Each instance draws from its own generator seeded by ``(seed, index)``, so
an ensemble is reproducible regardless of evaluation order or of how the
indices are split across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ..space import Instance, NormDescriptor

WeightMode = Literal["uniform", "positive_random", "signed_random", "probability_simplex"]
ScalarMode = Literal["real", "complex"]

WEIGHT_MODES: tuple[str, ...] = ("uniform", "positive_random", "signed_random", "probability_simplex")
SCALAR_MODES: tuple[str, ...] = ("real", "complex")

# signed draws with a partial or tail sum below this (relative to sum |p|) are redrawn
SIGNED_REL_FLOOR = 1e-6
SIGNED_MAX_RETRIES = 100


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    trials: int
    dimension: int = 1
    norm: NormDescriptor = field(default_factory=lambda: NormDescriptor.lp(2.0, 1))
    weight_mode: WeightMode = "positive_random"
    scalar_mode: ScalarMode = "real"
    holder_p: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials}")
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if self.norm.dimension != self.dimension:
            raise ValueError(f"norm dimension {self.norm.dimension} != configured dimension {self.dimension}")
        if self.weight_mode not in WEIGHT_MODES:
            raise ValueError(f"unknown weight mode {self.weight_mode!r}")
        if self.scalar_mode not in SCALAR_MODES:
            raise ValueError(f"unknown scalar mode {self.scalar_mode!r}")
        if self.holder_p is not None and not self.holder_p > 1:
            raise ValueError(f"holder_p must be > 1, got {self.holder_p}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "dimension": self.dimension,
            "norm": self.norm.label(),
            "weight_mode": self.weight_mode,
            "scalar_mode": self.scalar_mode,
            "holder_p": self.holder_p,
            "seed": self.seed,
        }


def rng_for(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def signed_degenerate(weights: np.ndarray, rel: float = SIGNED_REL_FLOOR) -> bool:
    """True if some partial sum ``P_i`` (``i <= n``) or tail sum ``P_n - P_i`` (``i < n``) is tiny."""
    floor = rel * float(np.sum(np.abs(weights)))
    P = np.cumsum(weights)
    tails = P[-1] - P[:-1]
    return bool(np.any(np.abs(P) < floor) or np.any(np.abs(tails) < floor))


def _weights(mode: str, n: int, rng: np.random.Generator) -> np.ndarray:
    if mode == "uniform":
        return np.full(n, 1.0 / n)
    if mode == "positive_random":
        # (0, 1]: strictly positive
        return 1.0 - rng.random(n)
    if mode == "probability_simplex":
        w = rng.dirichlet(np.ones(n))
        return w / np.sum(w)
    w = rng.uniform(-1.0, 1.0, n)
    for _ in range(SIGNED_MAX_RETRIES):
        if not signed_degenerate(w):
            break
        w = rng.uniform(-1.0, 1.0, n)
    return w


def generate_instance(cfg: EnsembleConfig, index: int) -> Instance:
    """Instance number ``index`` of the ensemble; a pure function of ``(cfg, index)``.

    Entries of ``a`` and ``x`` are uniform on ``[-1, 1]`` (the unit square for
    complex values). In ``signed_random`` mode a draw whose partial or tail
    sums nearly vanish is redrawn a bounded number of times; if every retry
    fails the instance is returned anyway and :func:`signed_degenerate`
    reports it, so callers can skip the identities that need those sums.
    """
    if index < 0:
        raise ValueError("index must be nonnegative")
    rng = rng_for(cfg.seed, index)
    n, d = cfg.n, cfg.dimension
    weights = _weights(cfg.weight_mode, n, rng)
    if cfg.scalar_mode == "complex":
        scalars = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    else:
        scalars = rng.uniform(-1, 1, n)
    if cfg.norm.is_complex_space:
        vectors = rng.uniform(-1, 1, (n, d)) + 1j * rng.uniform(-1, 1, (n, d))
    else:
        vectors = rng.uniform(-1, 1, (n, d))
    return Instance(weights, scalars, vectors, cfg.norm)


def generate_integer_instance(rng: np.random.Generator, n: int, dimension: int, norm: NormDescriptor, lo: int = -5, hi: int = 5) -> Instance:
    """Integer entries in ``[lo, hi]``, for exact-oracle comparisons."""
    weights = rng.integers(lo, hi + 1, n).astype(float)
    scalars = rng.integers(lo, hi + 1, n).astype(float)
    vectors = rng.integers(lo, hi + 1, (n, dimension)).astype(float)
    return Instance(weights, scalars, vectors, norm)
