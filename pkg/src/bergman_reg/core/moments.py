"""Odd moments and Bergman coefficients of radial weights.

mu_{2n+1} = 2 pi int_0^1 r^{2n+1} lambda(r) dr = pi int_0^1 u^n lambda(sqrt(u)) du and
alpha_n = 1 / mu_{2n+1}. Tables store log mu so that superpolynomially growing
coefficients (exponential weights) never overflow downstream.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln

from bergman_reg.config import QuadratureConfig
from bergman_reg.core.quadrature import log_power_moments
from bergman_reg.core.weights import log_weight_s
from bergman_reg.exceptions import (
    DegenerateWeightError,
    InsufficientTableError,
    NumericalError,
    WeightDomainError,
)
from bergman_reg.models.report import LogConvexityReport, LogConvexityViolation
from bergman_reg.models.weight import PowerWeight, RadialWeight

logger = logging.getLogger(__name__)

LOG_PI = math.log(math.pi)
LOG_CONVEXITY_SLACK = 1e-9


class MomentMethod(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True, eq=False)
class MomentTable:
    """log mu_{2n+1} for n = 0..n_max of one weight."""

    weight: RadialWeight
    log_mu: NDArray[np.float64]
    method: MomentMethod
    quad_config: QuadratureConfig | None = None
    _log_alpha: NDArray[np.float64] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        log_mu = np.array(self.log_mu, dtype=float)
        log_mu.setflags(write=False)
        log_alpha = -log_mu
        log_alpha.setflags(write=False)
        object.__setattr__(self, "log_mu", log_mu)
        object.__setattr__(self, "_log_alpha", log_alpha)

    @property
    def n_max(self) -> int:
        return len(self.log_mu) - 1

    @property
    def log_alphas(self) -> NDArray[np.float64]:
        return self._log_alpha

    def require(self, n: int, what: str = "operation") -> None:
        """Raise InsufficientTableError unless index n is available."""
        if n > self.n_max:
            raise InsufficientTableError(n, self.n_max, what)

    def log_alpha(self, n: int) -> float:
        self._check_index(n)
        return float(self._log_alpha[n])

    def alpha(self, n: int) -> float:
        self._check_index(n)
        return math.exp(self._log_alpha[n])

    def scaled(self, c: float) -> "MomentTable":
        """Table of the weight c * lambda: log mu shifts by log c."""
        if c <= 0:
            raise ValueError(f"Scale factor must be positive, got {c}")
        return MomentTable(
            weight=self.weight,
            log_mu=self.log_mu + math.log(c),
            method=self.method,
            quad_config=self.quad_config,
        )

    def _check_index(self, n: int) -> None:
        if not 0 <= n <= self.n_max:
            raise IndexError(f"Moment index {n} outside 0..{self.n_max}")

    def __len__(self) -> int:
        return len(self.log_mu)


def closed_form_alpha_power(t: float, n: ArrayLike) -> NDArray[np.float64] | float:
    """log alpha_n of the weight (1 - r^2)^t.

    mu_{2n+1} = pi B(n + 1, t + 1) after u = r^2, hence
    log alpha_n = logG(n + t + 2) - logG(n + 1) - logG(t + 1) - log pi.

    Raises:
        WeightDomainError: If t <= -1
    """
    if t <= -1.0:
        raise WeightDomainError(f"Power weight needs t > -1, got {t}")
    n_arr = np.asarray(n, dtype=float)
    value = gammaln(n_arr + t + 2.0) - gammaln(n_arr + 1.0) - gammaln(t + 1.0) - LOG_PI
    return float(value) if value.ndim == 0 else value


def compute_moments(
    w: RadialWeight,
    n_max: int,
    cfg: QuadratureConfig | None = None,
    force_quadrature: bool = False,
) -> MomentTable:
    """Build the moment table of a weight.

    Args:
        w: Weight
        n_max: Largest moment index
        cfg: Quadrature configuration (quadrature path only)
        force_quadrature: Integrate numerically even where a closed form exists

    Returns:
        MomentTable for n = 0..n_max

    Raises:
        QuadratureError: If an entry does not converge
        DegenerateWeightError: If a moment is zero or not finite
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    n = np.arange(n_max + 1, dtype=float)

    if isinstance(w, PowerWeight) and not force_quadrature:
        log_mu = -np.asarray(closed_form_alpha_power(w.t, n))
        method = MomentMethod.CLOSED_FORM
        cfg = None
    else:
        cfg = cfg or QuadratureConfig()
        logger.info(f"Integrating {n_max + 1} moments of {w!r} (rel_tol={cfg.rel_tol})")
        log_mu = LOG_PI + log_power_moments(
            lambda log_u, log_1mu: log_weight_s(w, log_u, log_1mu), n, cfg
        )
        method = MomentMethod.QUADRATURE

    bad = np.flatnonzero(~np.isfinite(log_mu))
    if bad.size:
        raise DegenerateWeightError(
            f"Moment mu_{2 * int(bad[0]) + 1} of {w!r} is zero or not finite"
        )
    if n_max > 0 and np.any(np.diff(log_mu) >= 0):
        first = int(np.flatnonzero(np.diff(log_mu) >= 0)[0])
        raise NumericalError(f"log mu is not strictly decreasing at n={first} for {w!r}")
    if cfg is not None and np.any(log_mu < cfg.abs_tol_log):
        logger.warning(
            f"{int(np.sum(log_mu < cfg.abs_tol_log))} moments lie below exp({cfg.abs_tol_log}); "
            "they are only meaningful in log form"
        )

    table = MomentTable(weight=w, log_mu=log_mu, method=method, quad_config=cfg)
    logger.info(f"Moment table ready: n_max={n_max}, method={method.value}")
    return table


def alpha(table: MomentTable, n: int) -> float:
    """Bergman coefficient alpha_n = exp(-log mu_{2n+1})."""
    return table.alpha(n)


def log_alpha(table: MomentTable, n: int) -> float:
    """-log mu_{2n+1}, without exponentiation."""
    return table.log_alpha(n)


def check_log_convexity(table: MomentTable, j_max: int) -> LogConvexityReport:
    """Check 2 log mu[n+j] <= log mu[n] + log mu[n+2j] for all n and j <= j_max.

    Raises:
        ValueError: If j_max < 1 or the table is shorter than 2 * j_max
    """
    if j_max < 1:
        raise ValueError(f"j_max must be at least 1, got {j_max}")
    if table.n_max < 2 * j_max:
        raise ValueError(
            f"Log-convexity check with j_max={j_max} needs n_max >= {2 * j_max}, "
            f"table has {table.n_max}"
        )
    lm = table.log_mu
    violations: list[LogConvexityViolation] = []
    checked = 0
    for j in range(1, j_max + 1):
        excess = 2 * lm[j : table.n_max - j + 1] - lm[: table.n_max - 2 * j + 1] - lm[2 * j :]
        checked += excess.size
        for n in np.flatnonzero(excess > LOG_CONVEXITY_SLACK):
            violations.append(LogConvexityViolation(n=int(n), j=j, excess=float(excess[n])))
    if violations:
        logger.warning(f"{len(violations)} log-convexity violations in {table.weight!r}")
    return LogConvexityReport(j_max=j_max, checked=checked, violations=violations)
