"""Evaluation of radial weight families and their derivatives.

Weights are functions of r = |z| on [0, 1) and, equivalently, of s = r^2. The
cutoff factor is

    chi_t(r) = 1                                   for r <= 1 - t
    chi_t(r) = exp(-psi((r - (1 - t)) / t) / (1 - r^2))   otherwise,

with psi(u) = exp(-1/u) for u > 0. psi is flat at 0, so chi_t joins the constant
piece smoothly, stays positive, and vanishes to infinite order at r = 1.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import binom

from bergman_reg.exceptions import NestingError, UnsupportedOrderError, WeightDomainError
from bergman_reg.models.report import IdentityReport
from bergman_reg.models.weight import (
    BaseWeight,
    CutoffWeight,
    ExponentialWeight,
    PowerWeight,
    RadialWeight,
)

logger = logging.getLogger(__name__)

MAX_S_ORDER = 4
MAX_WIRTINGER_ORDER = 2
_FloatArray = NDArray[np.float64]


def make_cutoff(base: RadialWeight, t: float) -> CutoffWeight:
    """Return lambda_t = chi_t * base.

    Raises:
        NestingError: If ``base`` is already a cutoff weight
        WeightDomainError: If ``t`` is not in (0, 1)
    """
    if isinstance(base, CutoffWeight):
        raise NestingError("Cutoff of a cutoff weight is not supported")
    if not 0.0 < t < 1.0:
        raise WeightDomainError(f"Cutoff width must lie in (0, 1), got {t}")
    return CutoffWeight(t=t, base=base)


def chi(t: float, r: ArrayLike) -> _FloatArray:
    """Cutoff factor chi_t(r) on [0, 1)."""
    r = np.asarray(r, dtype=float)
    out = np.ones_like(r)
    mask = r > 1.0 - t
    if np.any(mask):
        rm = r[mask]
        u = (rm - (1.0 - t)) / t
        one_minus_s = (1.0 - rm) * (1.0 + rm)
        with np.errstate(over="ignore", under="ignore", divide="ignore"):
            out[mask] = np.exp(-np.exp(-1.0 / u) / one_minus_s)
    return out


def _check_radius(r: _FloatArray) -> None:
    if np.any(~np.isfinite(r)) or np.any(r < 0.0) or np.any(r >= 1.0):
        raise WeightDomainError("Weights are evaluated for 0 <= r < 1 only")


def _base_eval(w: BaseWeight, one_minus_s: _FloatArray) -> _FloatArray:
    with np.errstate(over="ignore", under="ignore"):
        if isinstance(w, PowerWeight):
            return np.power(one_minus_s, w.t)
        return np.power(one_minus_s, w.A) * np.exp(-w.B * np.power(one_minus_s, -w.alpha))


def weight_eval(w: RadialWeight, r: ArrayLike) -> _FloatArray | float:
    """Evaluate lambda(r).

    Args:
        w: Weight model
        r: Radius or array of radii in [0, 1)

    Returns:
        lambda(r), a float for scalar input

    Raises:
        WeightDomainError: If any radius is outside [0, 1)
    """
    r_arr = np.asarray(r, dtype=float)
    _check_radius(r_arr)
    one_minus_s = (1.0 - r_arr) * (1.0 + r_arr)
    if isinstance(w, CutoffWeight):
        value = _base_eval(w.base, one_minus_s) * chi(w.t, r_arr)
    else:
        value = _base_eval(w, one_minus_s)
    return float(value) if value.ndim == 0 else value


def log_weight_s(
    w: RadialWeight, log_s: _FloatArray, log_one_minus_s: _FloatArray
) -> _FloatArray:
    """log lambda as a function of s, given log s and log(1 - s).

    Both logarithms are supplied by the caller so points close to s = 1 keep full
    relative precision in 1 - s.
    """
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        if isinstance(w, PowerWeight):
            # t = 0 must give exactly 0 even where log(1 - s) is -inf
            return np.zeros_like(log_one_minus_s) if w.t == 0 else w.t * log_one_minus_s
        if isinstance(w, ExponentialWeight):
            poly = 0.0 if w.A == 0 else w.A * log_one_minus_s
            return poly - w.B * np.exp(-w.alpha * log_one_minus_s)
        base = log_weight_s(w.base, log_s, log_one_minus_s)
        r = np.exp(0.5 * log_s)
        u = (r - (1.0 - w.t)) / w.t
        log_chi = np.where(
            u > 0.0,
            -np.exp(-1.0 / np.where(u > 0.0, u, 1.0) - log_one_minus_s),
            0.0,
        )
        return base + log_chi


def _falling(x: float, m: int) -> float:
    out = 1.0
    for i in range(m):
        out *= x - i
    return out


def _bell(h: list[float], m: int) -> float:
    """Complete Bell polynomial Y_m(h_1, ..., h_m) by the binomial recursion."""
    y = [1.0]
    for n in range(m):
        y.append(sum(binom(n, i) * h[i + 1] * y[n - i] for i in range(n + 1)))
    return y[m]


def _base_s_derivative(w: BaseWeight, m: int, s: float) -> float:
    x = 1.0 - s
    if isinstance(w, PowerWeight):
        return (-1.0) ** m * _falling(w.t, m) * x ** (w.t - m)
    # log g(x) = A log x - B x^(-alpha); derivatives in x, then d/ds = -d/dx
    h = [0.0] + [
        (w.A * (-1.0) ** (k - 1) * math.factorial(k - 1) * x ** (-k) if w.A else 0.0)
        - w.B * _falling(-w.alpha, k) * x ** (-w.alpha - k)
        for k in range(1, m + 1)
    ]
    g = x**w.A * math.exp(-w.B * x ** (-w.alpha))
    return (-1.0) ** m * g * _bell(h, m)


def _fd_s_derivative(w: RadialWeight, m: int, s: float) -> float:
    """Central finite difference of order m in s."""
    room = min(s, 1.0 - s) / (m + 1)
    h = min(np.finfo(float).eps ** (1.0 / (m + 2)), room)
    total = 0.0
    for k in range(m + 1):
        point = s + (0.5 * m - k) * h
        total += (-1.0) ** k * binom(m, k) * float(weight_eval(w, math.sqrt(point)))
    return total / h**m


def weight_s_derivative(w: RadialWeight, m: int, s: float) -> float:
    """d^m/ds^m of lambda viewed as a function of s = r^2.

    Power and Exponential weights are differentiated analytically. A cutoff
    weight coincides with its base for s <= (1 - t)^2 (all derivatives of
    chi_t - 1 vanish at the junction), beyond that a central difference is used.

    Raises:
        UnsupportedOrderError: If m is outside 0..4
        WeightDomainError: If s is outside [0, 1)
    """
    if not 0 <= m <= MAX_S_ORDER:
        raise UnsupportedOrderError(
            f"s-derivatives are provided up to order {MAX_S_ORDER}, got {m}"
        )
    if not 0.0 <= s < 1.0:
        raise WeightDomainError(f"s must lie in [0, 1), got {s}")
    if m == 0:
        return float(weight_eval(w, math.sqrt(s)))
    if isinstance(w, CutoffWeight):
        if s <= (1.0 - w.t) ** 2:
            return _base_s_derivative(w.base, m, s)
        return _fd_s_derivative(w, m, s)
    return _base_s_derivative(w, m, s)


def _check_point(z: complex, l: int) -> None:
    if not 1 <= l <= MAX_WIRTINGER_ORDER:
        raise UnsupportedOrderError(
            f"Wirtinger derivatives are provided up to order {MAX_WIRTINGER_ORDER}, got {l}"
        )
    if z == 0 or abs(z) >= 1.0:
        raise WeightDomainError(f"Point must satisfy 0 < |z| < 1, got {z}")


def wirtinger_derivative(w: RadialWeight, l: int, z: complex, side: str = "z") -> complex:
    """d^l/dz^l (side="z") or d^l/dzbar^l (side="zbar") of lambda(|z|^2).

    By the chain rule in s = z zbar, d^l/dz^l lambda = lambda^(l)(s) zbar^l and
    symmetrically for zbar.
    """
    _check_point(z, l)
    if side not in ("z", "zbar"):
        raise ValueError(f"side must be 'z' or 'zbar', got {side!r}")
    s = abs(z) ** 2
    factor = z.conjugate() if side == "z" else z
    return weight_s_derivative(w, l, s) * factor**l


def wirtinger_derivative_fd(
    w: RadialWeight, l: int, z: complex, side: str = "z", h: float = 1e-4
) -> complex:
    """Planar finite-difference Wirtinger derivative, d_z = (d_x - i d_y) / 2."""
    _check_point(z, l)
    x, y = z.real, z.imag

    def f(dx: float, dy: float) -> float:
        return float(weight_eval(w, math.hypot(x + dx, y + dy)))

    sign = -1.0 if side == "z" else 1.0
    if l == 1:
        fx = (f(h, 0.0) - f(-h, 0.0)) / (2 * h)
        fy = (f(0.0, h) - f(0.0, -h)) / (2 * h)
        return complex(fx, sign * fy) / 2
    f0 = f(0.0, 0.0)
    fxx = (f(h, 0.0) - 2 * f0 + f(-h, 0.0)) / h**2
    fyy = (f(0.0, h) - 2 * f0 + f(0.0, -h)) / h**2
    fxy = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h**2)
    return complex(fxx - fyy, sign * 2 * fxy) / 4


def check_radial_identity(w: RadialWeight, l: int, z: complex) -> float:
    """Residual |d^l_zbar lambda - (d^l_z lambda) (z / zbar)^l|."""
    dz = wirtinger_derivative(w, l, z, "z")
    dzbar = wirtinger_derivative(w, l, z, "zbar")
    residual = abs(dzbar - dz * (z / z.conjugate()) ** l)
    logger.debug(f"Radial identity residual l={l}, z={z}: {residual:.3e}")
    return residual


def identity_sweep(
    w: RadialWeight, l: int, points: int, seed: int, r_min: float = 0.05, r_max: float = 0.95
) -> IdentityReport:
    """Radial identity residuals at random points with r_min <= |z| < r_max."""
    if points < 1:
        raise ValueError(f"points must be at least 1, got {points}")
    rng = np.random.default_rng(seed)
    radii = rng.uniform(r_min, r_max, points)
    angles = rng.uniform(0.0, 2 * math.pi, points)
    max_residual = 0.0
    max_relative = 0.0
    for r, theta in zip(radii, angles, strict=True):
        z = complex(r * math.cos(theta), r * math.sin(theta))
        residual = check_radial_identity(w, l, z)
        scale = abs(wirtinger_derivative(w, l, z, "zbar"))
        max_residual = max(max_residual, residual)
        if scale > 0.0:
            max_relative = max(max_relative, residual / scale)
    logger.info(f"Radial identity l={l} over {points} points: max residual {max_residual:.3e}")
    return IdentityReport(
        weight=w,
        l=l,
        points=points,
        seed=seed,
        max_residual=max_residual,
        max_relative=max_relative,
    )
