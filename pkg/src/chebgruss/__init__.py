"""Weighted Chebyshev functional for vector sequences: identities, Grüss-type bounds, sharp constants."""

from .bounds import BoundReport, BoundValue, Family, HolderPair, evaluate_all, evaluate_family
from .constants import KernelConstants, k_infinity, k_one, k_q
from .functional import PrefixAggregates, aggregates, chebyshev_direct, chebyshev_unweighted
from .identities import (
    ZeroPartialSum,
    ZeroTailSum,
    chebyshev_double_sum,
    chebyshev_identity1,
    chebyshev_identity2,
    chebyshev_identity3,
    det_coefficients,
    kernel_matrix,
    lemma_kernel_identity_check,
)
from .space import ConformanceError, Instance, NormDescriptor, norm, vec_sub

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BoundValue",
    "ConformanceError",
    "Family",
    "HolderPair",
    "Instance",
    "KernelConstants",
    "NormDescriptor",
    "PrefixAggregates",
    "ZeroPartialSum",
    "ZeroTailSum",
    "aggregates",
    "chebyshev_direct",
    "chebyshev_double_sum",
    "chebyshev_identity1",
    "chebyshev_identity2",
    "chebyshev_identity3",
    "chebyshev_unweighted",
    "det_coefficients",
    "evaluate_all",
    "evaluate_family",
    "k_infinity",
    "k_one",
    "k_q",
    "kernel_matrix",
    "lemma_kernel_identity_check",
    "norm",
    "vec_sub",
]
