"""Numerical core and run orchestration."""

from bergman_reg.core.formatter import ReportFormatter
from bergman_reg.core.moments import MomentTable, compute_moments
from bergman_reg.core.service import RunResult, execute
from bergman_reg.core.writer import ArtifactWriter

__all__ = [
    "ArtifactWriter",
    "MomentTable",
    "ReportFormatter",
    "RunResult",
    "compute_moments",
    "execute",
]
