"""Exact service-rate analysis of quasi-symmetric storage allocations.

All probabilities and rates are exact: they enter as str/int/Fraction and
come back as fractions.Fraction. See the project README for the model.
"""

from ._core import (
    Allocation,
    FixedSizeAccess,
    ProbabilisticAccess,
    RateResult,
    SimulationEstimate,
    StratumStats,
    SystemConfig,
    binom_pmf,
    binomial,
    conditional_service_rate,
    conditional_service_time,
    enumerate_service_rate,
    enumerate_success_prob,
    figure_csv,
    fixed_access,
    hypergeom_pmf,
    make_allocation,
    minimal_spreading_rate,
    optimal_alpha,
    per_k_bound,
    probabilistic_access,
    rate_upper_bound,
    service_rate,
    simulate,
    success_prob,
    valid_alphas,
    vandermonde_check,
)

__all__ = [
    "Allocation",
    "FixedSizeAccess",
    "ProbabilisticAccess",
    "RateResult",
    "SimulationEstimate",
    "StratumStats",
    "SystemConfig",
    "binom_pmf",
    "binomial",
    "conditional_service_rate",
    "conditional_service_time",
    "enumerate_service_rate",
    "enumerate_success_prob",
    "figure_csv",
    "fixed_access",
    "hypergeom_pmf",
    "make_allocation",
    "minimal_spreading_rate",
    "optimal_alpha",
    "per_k_bound",
    "probabilistic_access",
    "rate_upper_bound",
    "service_rate",
    "simulate",
    "success_prob",
    "valid_alphas",
    "vandermonde_check",
]

__version__ = "0.1.0"
