"""Normed spaces and the problem-instance container.

Three concrete families of normed space are supported:

* ``lp``: real (or complexified) d-vectors with the l^p norm, ``1 <= p <= inf``;
* ``complex_modulus``: the complex plane with ``|z|``;
* ``real_abs``: the real line with ``|x|``.

Vectors are 1-D numpy arrays; a sequence of ``n`` vectors is an ``(n, d)``
array. Complex entries are normed coordinatewise by modulus and then
aggregated with the chosen exponent, which is the usual norm on the
complexification of l^p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

INF = math.inf

NormKind = Literal["lp", "complex_modulus", "real_abs"]


class ConformanceError(ValueError):
    """A vector (or sequence of vectors) does not live in the expected space."""


@dataclass(frozen=True)
class NormDescriptor:
    kind: NormKind
    exponent: float = 2.0
    dimension: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("lp", "complex_modulus", "real_abs"):
            raise ValueError(f"unknown norm kind {self.kind!r}")
        if self.kind == "lp":
            if math.isnan(self.exponent) or self.exponent < 1:
                raise ValueError(f"l^p exponent must be >= 1 or inf, got {self.exponent}")
            if self.dimension < 1:
                raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        elif self.dimension != 1:
            raise ValueError(f"{self.kind} is one-dimensional")

    @classmethod
    def lp(cls, exponent: float, dimension: int = 1) -> NormDescriptor:
        return cls("lp", float(exponent), int(dimension))

    @classmethod
    def l1(cls, dimension: int = 1) -> NormDescriptor:
        return cls("lp", 1.0, int(dimension))

    @classmethod
    def linf(cls, dimension: int = 1) -> NormDescriptor:
        return cls("lp", INF, int(dimension))

    @classmethod
    def complex_modulus(cls) -> NormDescriptor:
        return cls("complex_modulus", 2.0, 1)

    @classmethod
    def real_abs(cls) -> NormDescriptor:
        return cls("real_abs", 1.0, 1)

    @property
    def is_complex_space(self) -> bool:
        return self.kind == "complex_modulus"

    def with_dimension(self, dimension: int) -> NormDescriptor:
        if self.kind != "lp":
            return self
        return NormDescriptor("lp", self.exponent, dimension)

    def label(self) -> str:
        if self.kind != "lp":
            return self.kind
        if self.exponent == INF:
            return "linf"
        if self.exponent == 1.0:
            return "l1"
        return f"lp:{self.exponent:g}"


def _lp(mags: np.ndarray, exponent: float, axis: int = -1) -> np.ndarray:
    if exponent == INF:
        return np.max(mags, axis=axis, initial=0.0)
    if exponent == 1.0:
        return np.sum(mags, axis=axis)
    # Rescale by the largest magnitude so powers neither overflow nor underflow.
    top = np.max(mags, axis=axis, keepdims=True, initial=0.0)
    safe = np.where(top > 0, top, 1.0)
    scaled = mags / safe
    if exponent == 2.0:
        out = np.sqrt(np.sum(scaled * scaled, axis=axis))
    else:
        out = np.sum(scaled**exponent, axis=axis) ** (1.0 / exponent)
    return out * np.squeeze(safe, axis=axis)


def norm(v: np.ndarray, nd: NormDescriptor) -> float:
    """Norm of a single vector of ``nd``'s space."""
    v = np.asarray(v)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1 or v.shape[0] != nd.dimension:
        raise ConformanceError(f"vector of shape {v.shape} does not conform to {nd}")
    return float(_lp(np.abs(v), nd.exponent))


def norms(vs: np.ndarray, nd: NormDescriptor) -> np.ndarray:
    """Row-wise norms of an ``(m, d)`` stack of vectors."""
    vs = np.asarray(vs)
    if vs.ndim != 2 or vs.shape[1] != nd.dimension:
        raise ConformanceError(f"vector stack of shape {vs.shape} does not conform to {nd}")
    if vs.shape[0] == 0:
        return np.zeros(0)
    return _lp(np.abs(vs), nd.exponent, axis=1)


def vec_sub(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise ConformanceError(f"cannot subtract vectors of shapes {u.shape} and {v.shape}")
    return u - v


def _as_vectors(vectors, nd: NormDescriptor) -> np.ndarray:
    arr = np.asarray(vectors)
    if arr.ndim == 1 and nd.dimension == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[1] != nd.dimension:
        raise ConformanceError(
            f"vectors of shape {arr.shape} do not conform to {nd.label()} of dimension {nd.dimension}"
        )
    if nd.is_complex_space:
        return arr.astype(complex)
    if np.iscomplexobj(arr):
        raise ConformanceError(f"complex vectors given for real space {nd.label()}")
    return arr.astype(float)


@dataclass(frozen=True)
class Instance:
    """Weights ``p``, scalars ``a`` and vectors ``x`` of common length ``n``."""

    weights: np.ndarray
    scalars: np.ndarray
    vectors: np.ndarray
    norm: NormDescriptor = field(default_factory=NormDescriptor.real_abs)

    def __post_init__(self) -> None:
        w = np.asarray(self.weights)
        if np.iscomplexobj(w):
            raise ValueError("weights must be real")
        w = w.astype(float)
        s = np.asarray(self.scalars)
        s = s.astype(complex) if np.iscomplexobj(s) else s.astype(float)
        x = _as_vectors(self.vectors, self.norm)
        if w.ndim != 1 or s.ndim != 1:
            raise ValueError("weights and scalars must be flat sequences")
        n = w.shape[0]
        if n < 2:
            raise ValueError(f"need n >= 2, got n = {n}")
        if s.shape[0] != n or x.shape[0] != n:
            raise ValueError(
                f"length mismatch: {n} weights, {s.shape[0]} scalars, {x.shape[0]} vectors"
            )
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(s)) and np.all(np.isfinite(x))):
            raise ValueError("instance entries must be finite")
        for name, arr in (("weights", w), ("scalars", s), ("vectors", x)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def create(cls, weights, scalars, vectors, norm: NormDescriptor | None = None) -> Instance:
        """Build an instance, inferring an l^2 space from the vectors if no norm is given."""
        if norm is None:
            arr = np.asarray(vectors)
            norm = NormDescriptor.real_abs() if arr.ndim == 1 else NormDescriptor.lp(2.0, arr.shape[1])
        return cls(weights, scalars, vectors, norm)

    @classmethod
    def unweighted(cls, scalars, vectors, norm: NormDescriptor | None = None) -> Instance:
        n = len(scalars)
        return cls.create(np.full(n, 1.0 / n), scalars, vectors, norm)

    @property
    def n(self) -> int:
        return int(self.weights.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    @property
    def is_complex(self) -> bool:
        return bool(np.iscomplexobj(self.scalars) or np.iscomplexobj(self.vectors))

    def scale(self) -> float:
        """Magnitude ``sum|p| * sum|a| * sum||x||`` used for absolute tolerances."""
        return float(
            np.sum(np.abs(self.weights))
            * np.sum(np.abs(self.scalars))
            * np.sum(norms(self.vectors, self.norm))
        )
