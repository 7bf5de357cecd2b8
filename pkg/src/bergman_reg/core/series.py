"""Exact algebra of monomial series against a moment table.

For a radial weight, <z^a zbar^b, z^c zbar^d>_lambda vanishes unless a - b = c - d,
and then equals mu_{2s+1} with s = (a + b + c + d) / 2. Inner products are therefore
finite sums over matching diagonals; the only approximation is the moment table.
"""

import logging
import math
from collections import defaultdict

import numpy as np
from numpy.typing import NDArray

from bergman_reg.core.moments import MomentTable
from bergman_reg.models.series import HoloSeries, MonomialSeries

logger = logging.getLogger(__name__)

Series = MonomialSeries | HoloSeries


def embed(h: Series) -> MonomialSeries:
    """View a holomorphic polynomial as a monomial series (b = 0)."""
    return h.to_monomial() if isinstance(h, HoloSeries) else h


def d_z(f: Series) -> MonomialSeries:
    """Term-wise d/dz: z^a zbar^b -> a z^(a-1) zbar^b."""
    return MonomialSeries({(a - 1, b): a * c for (a, b), c in embed(f).items() if a > 0})


def d_zbar(f: Series) -> MonomialSeries:
    """Term-wise d/dzbar: z^a zbar^b -> b z^a zbar^(b-1)."""
    return MonomialSeries({(a, b - 1): b * c for (a, b), c in embed(f).items() if b > 0})


def d_mixed(f: Series, order_z: int, order_zbar: int) -> MonomialSeries:
    """d^order_z/dz^order_z d^order_zbar/dzbar^order_zbar in one pass."""
    out: dict[tuple[int, int], complex] = {}
    for (a, b), c in embed(f).items():
        if a >= order_z and b >= order_zbar:
            factor = math.perm(a, order_z) * math.perm(b, order_zbar)
            out[(a - order_z, b - order_zbar)] = factor * c
    return MonomialSeries(out)


def holo_derivative(h: HoloSeries, j: int) -> HoloSeries:
    """j-th derivative of a holomorphic polynomial."""
    if j == 0 or h.degree < j:
        return h if j == 0 else HoloSeries()
    n = np.arange(j, h.degree + 1)
    factors = np.array([math.perm(int(m), j) for m in n], dtype=float)
    return HoloSeries(factors * h.coeffs[j:])


def truncate(h: HoloSeries, N: int) -> HoloSeries:
    """S_N: keep Taylor coefficients of index <= N."""
    if N < 0:
        raise ValueError(f"Truncation order must be non-negative, got {N}")
    return HoloSeries(h.coeffs[: N + 1])


def evaluate(f: Series, z: complex) -> complex:
    """Direct summation of c_{a,b} z^a zbar^b."""
    zc = complex(z).conjugate()
    return complex(sum(c * z**a * zc**b for (a, b), c in embed(f).items()))


def _diagonals(f: MonomialSeries) -> dict[int, tuple[NDArray[np.int64], NDArray[np.complex128]]]:
    grouped: dict[int, list[tuple[int, complex]]] = defaultdict(list)
    for (a, b), c in f.items():
        grouped[a - b].append((b, c))
    return {
        k: (np.array([b for b, _ in items]), np.array([c for _, c in items], dtype=complex))
        for k, items in grouped.items()
    }


def inner_product(f: Series, g: Series, table: MomentTable) -> complex:
    """<f, g>_lambda = integral over the disc of f conj(g) lambda dA.

    Raises:
        InsufficientTableError: If a required moment index exceeds the table
    """
    diag_f = _diagonals(embed(f))
    diag_g = _diagonals(embed(g))
    total = 0j
    for k, (bf, cf) in diag_f.items():
        if k not in diag_g:
            continue
        bg, cg = diag_g[k]
        s = bf[:, None] + bg[None, :] + k
        table.require(int(s.max()), "inner product")
        mu = np.exp(table.log_mu[s])
        total += complex(cf @ (mu @ cg.conj()))
    return total


def norm0(f: Series, table: MomentTable) -> float:
    """||f||_{0,lambda}.

    <f, f> is evaluated as the real form x^T M x + y^T M y per diagonal (c = x + iy,
    M the symmetric moment block), so its imaginary residue is exactly zero.
    """
    sq = 0.0
    for k, (b, c) in _diagonals(embed(f)).items():
        s = b[:, None] + b[None, :] + k
        table.require(int(s.max()), "norm")
        mu = np.exp(table.log_mu[s])
        sq += float(c.real @ mu @ c.real + c.imag @ mu @ c.imag)
    return math.sqrt(max(sq, 0.0))
