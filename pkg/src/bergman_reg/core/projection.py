"""Weighted Bergman projection and kernel in coefficient space."""

import logging
import math

import numpy as np

from bergman_reg.core.moments import MomentTable
from bergman_reg.core.series import Series, embed
from bergman_reg.exceptions import WeightDomainError
from bergman_reg.models.report import KernelEval
from bergman_reg.models.series import HoloSeries

logger = logging.getLogger(__name__)

_TAIL_WINDOW = 10


def project(f: Series, table: MomentTable) -> HoloSeries:
    """Apply B_lambda to a monomial series.

    B_lambda f = sum_k alpha_k <f, w^k> z^k and <z^(k+b) zbar^b, w^k> = 1/alpha_(k+b),
    so the term c z^(k+b) zbar^b lands on z^k with factor alpha_k / alpha_(k+b).
    Terms with fewer z than zbar powers are orthogonal to every holomorphic
    polynomial and drop out.

    Raises:
        InsufficientTableError: If deg f exceeds the table
    """
    f = embed(f)
    if f.is_zero:
        return HoloSeries()
    table.require(f.degree, "projection")
    la = table.log_alphas
    out = np.zeros(f.degree + 1, dtype=complex)
    for (a, b), c in f.items():
        if a >= b:
            k = a - b
            out[k] += c * math.exp(la[k] - la[a])
    return HoloSeries(out)


def project_monomial(m: int, n: int, table: MomentTable) -> HoloSeries:
    """B_lambda(z^m zbar^n) = (alpha_(m-n) / alpha_m) z^(m-n) for m >= n, else 0."""
    if m < n:
        return HoloSeries()
    table.require(m, "projection")
    coeffs = np.zeros(m - n + 1, dtype=complex)
    coeffs[m - n] = math.exp(table.log_alphas[m - n] - table.log_alphas[m])
    return HoloSeries(coeffs)


def _tail_ratio(table: MomentTable, N: int) -> float:
    """Largest alpha_(n+1)/alpha_n over n >= min(N, n_max - 1) available in the table.

    alpha_n is log-concave (mu is log-convex), so these ratios never increase and
    the first one in the window dominates every ratio beyond the table as well.
    """
    ratios = np.exp(np.diff(table.log_alphas))
    start = min(N, table.n_max - 1)
    window = np.concatenate([ratios[start:], ratios[max(0, table.n_max - _TAIL_WINDOW) :]])
    return float(window.max())


def kernel_eval(table: MomentTable, z: complex, w: complex, N: int) -> KernelEval:
    """Truncated kernel sum_{n<=N} alpha_n (z conj(w))^n with a tail bound.

    With q = |z conj(w)| and rho bounding alpha_(n+1)/alpha_n from n = N on,
    the discarded tail is at most alpha_N q^(N+1) rho / (1 - rho q); the bound is
    +inf when rho q >= 1 or the table has a single entry.

    Raises:
        WeightDomainError: If |z| >= 1 or |w| >= 1
        InsufficientTableError: If N exceeds the table
    """
    z, w = complex(z), complex(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise WeightDomainError(f"Kernel points must lie in the disc, got z={z}, w={w}")
    if N < 0:
        raise ValueError(f"Truncation order must be non-negative, got {N}")
    table.require(N, "kernel evaluation")

    q = z * w.conjugate()
    la = table.log_alphas[: N + 1]
    q_abs = abs(q)
    if q_abs == 0.0:
        value = complex(math.exp(la[0]))
        tail = 0.0
    else:
        n = np.arange(N + 1)
        exponent = la + n * complex(math.log(q_abs), math.atan2(q.imag, q.real))
        value = complex(np.exp(exponent).sum())
        if table.n_max == 0:
            tail = math.inf
        else:
            rho = _tail_ratio(table, N)
            if rho * q_abs >= 1.0:
                tail = math.inf
            else:
                tail = math.exp(la[N] + (N + 1) * math.log(q_abs)) * rho / (1.0 - rho * q_abs)
    logger.debug(f"Kernel at z={z}, w={w}, N={N}: {value} (tail <= {tail:.3e})")
    return KernelEval(re=value.real, im=value.imag, N=N, tail_bound=tail)


def kernel_section(table: MomentTable, z: complex, N: int) -> HoloSeries:
    """B_lambda(., z) truncated at degree N: coefficients alpha_n conj(z)^n."""
    table.require(N, "kernel section")
    n = np.arange(N + 1)
    return HoloSeries(np.exp(table.log_alphas[: N + 1]) * np.conj(complex(z)) ** n)
