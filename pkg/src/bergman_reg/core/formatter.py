"""CSV and JSON rendering of run artifacts."""

import json
import logging
from collections.abc import Iterable
from typing import Any

import numpy as np
from pydantic import BaseModel

from bergman_reg.core.moments import MomentTable
from bergman_reg.models.report import ConvergenceReport
from bergman_reg.models.series import HoloSeries, MonomialSeries
from bergman_reg.parsers.series_json import series_to_dict

logger = logging.getLogger(__name__)

CSV_FLOAT = ".17g"


class ReportFormatter:
    """Format tables and reports deterministically.

    CSV floats carry 17 significant digits; JSON floats use the shortest repr that
    round-trips, and non-finite values are written as ``Infinity``.
    """

    def moments_csv(self, table: MomentTable, N: int) -> str:
        """CSV ``n,log_mu,log_alpha`` for n = 0..N.

        Args:
            table: Moment table with n_max >= N
            N: Last row

        Returns:
            CSV text with a trailing newline
        """
        table.require(N, "moments output")
        rows = ((n, table.log_mu[n], table.log_alphas[n]) for n in range(N + 1))
        return self._csv(("n", "log_mu", "log_alpha"), rows)

    def brackets_csv(self, brackets: np.ndarray, n_min: int = 1) -> str:
        """CSV ``n,bracket`` starting at n_min."""
        rows = ((n_min + i, value) for i, value in enumerate(brackets))
        return self._csv(("n", "bracket"), rows)

    def convergence_csv(self, report: ConvergenceReport) -> str:
        rows = ((row.t, row.n, row.log_alpha_t, row.log_alpha, row.rel_gap) for row in report.rows)
        return self._csv(("t", "n", "log_alpha_t", "log_alpha", "rel_gap"), rows)

    def series_json(self, series: MonomialSeries | HoloSeries) -> str:
        return self.json(series_to_dict(series))

    def json(self, payload: BaseModel | dict[str, Any]) -> str:
        """Single-line JSON of a model or a plain dict."""
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="python")
        return json.dumps(payload, allow_nan=True)

    def _csv(self, header: tuple[str, ...], rows: Iterable[tuple[Any, ...]]) -> str:
        lines = [",".join(header)]
        lines.extend(",".join(self._cell(value) for value in row) for row in rows)
        logger.debug(f"Formatted CSV with {len(lines) - 1} rows")
        return "\n".join(lines) + "\n"

    @staticmethod
    def _cell(value: Any) -> str:
        if isinstance(value, int | np.integer):
            return str(int(value))
        return format(float(value), CSV_FLOAT)
