"""Aggregates of the uniform-weight kernel ``min(i,j) * (n - max(i,j)) / n^2``.

Every constant is evaluated by brute force over the ``(n-1)^2`` grid; the
closed form for ``k_one`` and the caps for ``k_infinity`` and ``k_q`` are
checked against that ground truth, never used in its place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np


def _check_n(n: int) -> None:
    if int(n) != n or n < 2:
        raise ValueError(f"need integer n >= 2, got {n!r}")


def uniform_kernel_grid(n: int) -> np.ndarray:
    """Integer grid ``min(i,j) * (n - max(i,j))`` for ``1 <= i, j <= n-1``."""
    _check_n(n)
    idx = np.arange(1, n)
    return np.minimum.outer(idx, idx) * (n - np.maximum.outer(idx, idx))


@lru_cache(maxsize=None)
def k_infinity_exact(n: int) -> Fraction:
    _check_n(n)
    best = max(min(i, j) * (n - max(i, j)) for i in range(1, n) for j in range(1, n))
    return Fraction(best, n * n)


def k_infinity(n: int) -> float:
    return float(k_infinity_exact(n))


@lru_cache(maxsize=None)
def k_one_exact(n: int) -> Fraction:
    """Brute-force grid sum over ``n^2``; equals ``(n^2 - 1) / 12``."""
    _check_n(n)
    total = sum(min(i, j) * (n - max(i, j)) for i in range(1, n) for j in range(1, n))
    return Fraction(total, n * n)


def k_one(n: int) -> float:
    return float(k_one_exact(n))


def k_one_closed_form(n: int) -> Fraction:
    _check_n(n)
    return Fraction(n * n - 1, 12)


def _check_q(q: float) -> None:
    if not (q > 1):
        raise ValueError(f"k_q needs q > 1, got {q!r}")


def k_q(n: int, q: float) -> float:
    """``(1/n^2) * (sum over the grid of entry^q)^(1/q)``."""
    _check_q(q)
    grid = uniform_kernel_grid(n).astype(float)
    top = grid.max()
    # Normalise by the largest entry so big q cannot overflow.
    return float(top * np.sum((grid / top) ** q) ** (1.0 / q)) / (n * n)


def k_q_symmetric(n: int, q: float) -> float:
    """Same constant through the reduction ``2 sum_{i<j} i^q (n-j)^q + sum_i i^q (n-i)^q``."""
    _check_n(n)
    _check_q(q)
    top = float(uniform_kernel_grid(n).max())
    off = 0.0
    for i in range(1, n):
        for j in range(i + 1, n):
            off += (i * (n - j) / top) ** q
    diag = sum((i * (n - i) / top) ** q for i in range(1, n))
    return top * (2.0 * off + diag) ** (1.0 / q) / (n * n)


def k_infinity_cap() -> float:
    return 0.25


def k_q_cap(n: int, q: float) -> float:
    """``(1/4) (n - 1)^(2/q)``."""
    _check_n(n)
    _check_q(q)
    return 0.25 * (n - 1) ** (2.0 / q)


@dataclass
class KernelConstants:
    """Lazily filled constants for a fixed ``n``; ``k_q`` values are memoised per exponent."""

    n: int
    k_inf: float = field(init=False)
    k_one: float = field(init=False)
    _kq: dict[float, float] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        _check_n(self.n)
        self.k_inf = k_infinity(self.n)
        self.k_one = k_one(self.n)

    def k_q(self, q: float) -> float:
        if q not in self._kq:
            self._kq[q] = k_q(self.n, q)
        return self._kq[q]

    def as_dict(self, qs: tuple[float, ...] = ()) -> dict:
        out: dict = {"n": self.n, "k_inf": self.k_inf, "k_one": self.k_one}
        if qs:
            out["k_q"] = {format(q, "g"): self.k_q(q) for q in qs}
        return out


def elementary_cap_holds(n: int) -> bool:
    """Check ``min(i,j)(n - max(i,j)) <= (n - |i-j|)^2 / 4`` on the whole grid, in integers."""
    _check_n(n)
    return all(
        4 * min(i, j) * (n - max(i, j)) <= (n - abs(i - j)) ** 2
        for i in range(1, n)
        for j in range(1, n)
    )


__all__ = [
    "KernelConstants",
    "elementary_cap_holds",
    "k_infinity",
    "k_infinity_cap",
    "k_infinity_exact",
    "k_one",
    "k_one_closed_form",
    "k_one_exact",
    "k_q",
    "k_q_cap",
    "k_q_symmetric",
    "uniform_kernel_grid",
]
