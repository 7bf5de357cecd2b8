"""Log-domain tanh-sinh quadrature on [0, 1].

The map u(t) = 1 / (1 + exp(-pi sinh t)) sends the real line onto (0, 1) with
du/dt = pi cosh(t) u (1 - u). Both log u and log(1 - u) are available in closed
form through ``log_expit``, so integrands are evaluated from logarithms only and
summed with ``logsumexp``: nothing underflows, however small the moment.

Levels halve the step h; each level only evaluates the new (odd) nodes.
"""

import logging
from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray
from scipy.special import log_expit, logsumexp

from bergman_reg.config import QuadratureConfig
from bergman_reg.exceptions import QuadratureError

logger = logging.getLogger(__name__)

LogWeightFn = Callable[[NDArray[np.float64], NDArray[np.float64]], NDArray[np.float64]]

_T_LIMIT = 10.0
_SCAN_STEP = 0.125
_H0 = 0.5
_MIN_LEVELS = 3
_CHUNK_ROWS = 512
_LOG_PI = float(np.log(np.pi))


def tanh_sinh_nodes(
    t: NDArray[np.float64],
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Return log u, log(1 - u) and log du/dt at the abscissae t."""
    a = np.pi * np.sinh(t)
    log_u = log_expit(a)
    log_1mu = log_expit(-a)
    log_w = _LOG_PI + np.log(np.cosh(t)) + log_u + log_1mu
    return log_u, log_1mu, log_w


def _terms(
    powers: NDArray[np.float64], t: NDArray[np.float64], log_weight: LogWeightFn
) -> NDArray[np.float64]:
    log_u, log_1mu, log_w = tanh_sinh_nodes(t)
    with np.errstate(invalid="ignore"):
        node_part = log_weight(log_u, log_1mu) + log_w
        out = powers[:, None] * log_u[None, :] + node_part[None, :]
    # exp(-inf) contributions: keep -inf, never nan
    return np.where(np.isnan(out), -np.inf, out)


def _rowwise_lse(terms: NDArray[np.float64]) -> NDArray[np.float64]:
    with np.errstate(divide="ignore"):
        return np.asarray(logsumexp(terms, axis=1))


def _support_radius(
    powers: NDArray[np.float64], log_weight: LogWeightFn, rel_tol: float
) -> float:
    """Half-width in t beyond which every row's contributions are negligible."""
    t = np.arange(-_T_LIMIT, _T_LIMIT + 0.5 * _SCAN_STEP, _SCAN_STEP)
    terms = _terms(powers, t, log_weight)
    peak = terms.max(axis=1, keepdims=True)
    significant = terms >= peak + np.log(rel_tol) - 40.0
    cols = np.flatnonzero(significant.any(axis=0))
    if cols.size == 0:
        return _T_LIMIT
    return float(min(_T_LIMIT, np.abs(t[cols]).max() + 2 * _SCAN_STEP))


def _integrate_chunk(
    powers: NDArray[np.float64], log_weight: LogWeightFn, cfg: QuadratureConfig
) -> NDArray[np.float64]:
    radius = _support_radius(powers, log_weight, cfg.rel_tol)
    h = _H0
    k = int(np.floor(radius / h))
    acc = _rowwise_lse(_terms(powers, h * np.arange(-k, k + 1), log_weight))
    estimate = acc + np.log(h)

    result = np.full(powers.shape, np.nan)
    active = np.arange(powers.size)
    for level in range(1, cfg.max_levels + 1):
        h *= 0.5
        lo = int(np.ceil((-radius / h - 1.0) / 2.0))
        hi = int(np.floor((radius / h - 1.0) / 2.0))
        t_new = h * (2.0 * np.arange(lo, hi + 1) + 1.0)
        fresh = _rowwise_lse(_terms(powers[active], t_new, log_weight))
        with np.errstate(invalid="ignore"):
            acc = np.logaddexp(acc, fresh)
        current = acc + np.log(h)
        with np.errstate(invalid="ignore"):
            delta = np.abs(current - estimate)
        done = (level >= _MIN_LEVELS) & ((delta <= cfg.rel_tol) | np.isneginf(current))
        logger.debug(
            f"tanh-sinh level {level}: h={h:.3e}, active={active.size}, "
            f"converged={int(done.sum())}"
        )
        result[active[done]] = current[done]
        keep = ~done
        active, acc, estimate = active[keep], acc[keep], current[keep]
        if active.size == 0:
            return result

    failing = int(powers[active[0]])
    raise QuadratureError(
        f"tanh-sinh quadrature did not converge to rel_tol={cfg.rel_tol} within "
        f"{cfg.max_levels} levels for n={failing}",
        n=failing,
    )


def log_power_moments(
    log_weight: LogWeightFn,
    powers: NDArray[np.float64],
    cfg: QuadratureConfig | None = None,
) -> NDArray[np.float64]:
    """log of integral_0^1 u^p exp(log_weight(u)) du for every p in ``powers``.

    Args:
        log_weight: Maps (log u, log(1 - u)) arrays to the log of the weight factor
        powers: Exponents p > -1
        cfg: Quadrature configuration

    Returns:
        Array of log-integrals, one per exponent

    Raises:
        QuadratureError: If some row does not converge within ``cfg.max_levels``
    """
    cfg = cfg or QuadratureConfig()
    powers = np.asarray(powers, dtype=float)
    out = np.empty(powers.shape)
    for start in range(0, powers.size, _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, powers.size)
        out[start:stop] = _integrate_chunk(powers[start:stop], log_weight, cfg)
    return out
