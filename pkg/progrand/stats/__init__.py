"""
Evaluation statistics: correlation scans and dynamic-threshold curve fits.
"""

from .correlation import (
    CorrelationReport,
    as_sequence,
    auto_correlation,
    correlation_report,
    correlation_values,
    cross_correlation,
    cyclic_correlation,
    default_max_lag,
    max_abs_autocorrelation,
    max_abs_correlation,
)
from .cumulative import (
    CumulativeCount,
    QuadraticFit,
    RampFit,
    cumulative_count_curve,
    fit_derivative,
    quadratic_fit,
    ramp_phase_fit,
)

__all__ = [
    "CorrelationReport",
    "CumulativeCount",
    "QuadraticFit",
    "RampFit",
    "as_sequence",
    "auto_correlation",
    "correlation_report",
    "correlation_values",
    "cross_correlation",
    "cumulative_count_curve",
    "cyclic_correlation",
    "default_max_lag",
    "fit_derivative",
    "max_abs_autocorrelation",
    "max_abs_correlation",
    "quadratic_fit",
    "ramp_phase_fit",
]
