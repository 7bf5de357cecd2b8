"""Data models for weights, series and reports."""

from bergman_reg.models.report import (
    ConvergenceReport,
    ConvergenceRow,
    DjEstimate,
    IdentityReport,
    KernelEval,
    LogConvexityReport,
    RegularityReport,
    SobolevResult,
    TheoremSweep,
    TruncatedEstimate,
)
from bergman_reg.models.run import Command, RunConfig
from bergman_reg.models.series import HoloSeries, MonomialSeries
from bergman_reg.models.weight import (
    CutoffWeight,
    ExponentialWeight,
    PowerWeight,
    RadialWeight,
)

__all__ = [
    "Command",
    "ConvergenceReport",
    "ConvergenceRow",
    "CutoffWeight",
    "DjEstimate",
    "ExponentialWeight",
    "HoloSeries",
    "IdentityReport",
    "KernelEval",
    "LogConvexityReport",
    "MonomialSeries",
    "PowerWeight",
    "RadialWeight",
    "RegularityReport",
    "RunConfig",
    "SobolevResult",
    "TheoremSweep",
    "TruncatedEstimate",
]
