"""Random ensembles, the exact oracle, sharpness search, reports and the CLI."""

from .ensemble import EnsembleConfig, generate_instance, signed_degenerate
from .oracle import OracleError, OracleResult, exact_oracle
from .report import identity_agreement, run_report
from .search import SharpnessCeilingError, SharpnessResult, sharpness_search

__all__ = [
    "EnsembleConfig",
    "OracleError",
    "OracleResult",
    "SharpnessCeilingError",
    "SharpnessResult",
    "exact_oracle",
    "generate_instance",
    "identity_agreement",
    "run_report",
    "sharpness_search",
    "signed_degenerate",
]
