"""Empirical likelihood tests of a mean, calibrated by simulated standard curves."""

__version__ = "0.1.0"

from .special import (  # noqa: E402
    DomainError,
    chisq1_cdf,
    chisq1_quantile,
    chisq1_sf,
    regularized_incomplete_gamma,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)
from .distributions import DistributionSpec, Family, MomentSummary, PRESETS, density, moments, parse_spec, sample  # noqa: E402
from .rng import RandomStream  # noqa: E402
from .el import ConfidenceInterval, ElResult, ElStatus, el_confidence_interval, el_statistic  # noqa: E402
from .zhang import hermite_integral, pearson_gap, predicted_size, zhang_term  # noqa: E402
from .montecarlo import ReplicateBatch, empirical_critical_value, empirical_size, run_batch  # noqa: E402
