"""Direct evaluation of the weighted Chebyshev functional.

    T_n(p; a, x) = P_n * sum p_i a_i x_i - (sum p_i a_i) * (sum p_i x_i)

and the prefix/tail aggregates shared by the identities and the bounds.
All sums run strictly left to right (``np.cumsum`` is sequential) so that
cross-checks between evaluators see reproducible rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .space import Instance, NormDescriptor, norm, norms


def ordered_sum(values: np.ndarray, axis: int = 0):
    """Left-to-right sum along ``axis`` (``np.sum`` would sum pairwise)."""
    values = np.asarray(values)
    if values.shape[axis] == 0:
        return np.sum(values, axis=axis)
    return np.take(np.cumsum(values, axis=axis), -1, axis=axis)


@dataclass(frozen=True)
class PrefixAggregates:
    """Partial sums and forward differences of an instance.

    Arrays are 0-based: ``P[i - 1]`` holds ``P_i`` for ``i = 1..n`` and
    ``Pbar[i - 1]`` holds ``P_n - P_i`` for ``i = 1..n-1``. Likewise for
    ``A``/``Abar``. ``dA`` and ``dX`` have ``n - 1`` entries (rows).
    """

    P: np.ndarray
    Pbar: np.ndarray
    A: np.ndarray
    Abar: np.ndarray
    dA: np.ndarray
    dX: np.ndarray

    @property
    def n(self) -> int:
        return int(self.P.shape[0])

    @property
    def Pn(self) -> float:
        return float(self.P[-1])

    @property
    def An(self):
        return self.A[-1]


def aggregates(inst: Instance) -> PrefixAggregates:
    p = inst.weights
    P = np.cumsum(p)
    A = np.cumsum(p * inst.scalars)
    return PrefixAggregates(
        P=P,
        Pbar=P[-1] - P[:-1],
        A=A,
        Abar=A[-1] - A[:-1],
        dA=np.diff(inst.scalars),
        dX=np.diff(inst.vectors, axis=0),
    )


def chebyshev_direct(inst: Instance) -> np.ndarray:
    """``T_n(p; a, x)`` as a vector of the (possibly complexified) space."""
    p = inst.weights
    a = inst.scalars
    x = inst.vectors
    Pn = ordered_sum(p)
    pa = p * a
    weighted = ordered_sum(pa[:, None] * x)
    return Pn * weighted - ordered_sum(pa) * ordered_sum(p[:, None] * x)


def chebyshev_unweighted(scalars, vectors, norm: NormDescriptor | None = None) -> np.ndarray:
    """``(1/n) sum a_i x_i - (1/n) sum a_i * (1/n) sum x_i``."""
    inst = Instance.unweighted(scalars, vectors, norm)
    n = inst.n
    a = inst.scalars
    x = inst.vectors
    return ordered_sum(a[:, None] * x) / n - (ordered_sum(a) / n) * (ordered_sum(x) / n)


def t_norm(inst: Instance) -> float:
    return norm(chebyshev_direct(inst), inst.norm)


def magnitude(inst: Instance) -> float:
    """Size of the two terms of the direct formula, a cancellation-free scale for ``T_n``.

    ``|P_n| * sum |p_i a_i| ||x_i|| + sum |p_i a_i| * sum |p_i| ||x_i||``
    """
    p = np.abs(inst.weights)
    pa = np.abs(inst.weights * inst.scalars)
    xn = norms(inst.vectors, inst.norm)
    return float(abs(ordered_sum(inst.weights)) * ordered_sum(pa * xn) + ordered_sum(pa) * ordered_sum(p * xn))
