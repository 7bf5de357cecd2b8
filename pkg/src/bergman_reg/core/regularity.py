"""Constants and checks behind exact regularity of weighted Bergman projections.

Notation: logF(n, j) = log[(n+j)! (n+j)! / ((n+2j)! n!)] and la[n] = log alpha_n.

* M_j g = sum_n g_n F(n, j) (alpha_(n+j) / alpha_n) z^(n+2j) makes d^j/dz^j self-dual
  against holomorphic polynomials: <d^j h, g> = <h, d^j M_j g>.
* bracket(j, n) = F(n, j)^2 alpha_(n+j)^2 / (alpha_n alpha_(n+2j)) is the ratio
  ||M_j z^n||^2 / ||z^n||^2, so the operator norm of M_j on degree <= N is the square
  root of its maximum.

Everything is assembled from gammaln and log alpha and exponentiated last.
"""

import logging
import math
from collections.abc import Iterable, Sequence
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln

from bergman_reg.config import QuadratureConfig
from bergman_reg.core.moments import MomentTable, compute_moments
from bergman_reg.core.projection import project
from bergman_reg.core.series import (
    Series,
    holo_derivative,
    inner_product,
    norm0,
    truncate,
)
from bergman_reg.core.sobolev import sobolev_norm
from bergman_reg.core.weights import make_cutoff
from bergman_reg.exceptions import DegenerateSampleError, NestingError, WeightDomainError
from bergman_reg.models.report import (
    ConvergenceReport,
    ConvergenceRow,
    CutoffBracketRow,
    DjEstimate,
    PlateauCheck,
    RegularityReport,
    TheoremSweep,
    TruncatedEstimate,
    TruncatedLimitReport,
    TruncatedLimitRow,
)
from bergman_reg.models.series import HoloSeries, MonomialSeries
from bergman_reg.models.weight import CutoffWeight, RadialWeight

logger = logging.getLogger(__name__)

SKIP_THRESHOLD = 1e-14
DJ_DEGREE = 30
ESTIMATE_SLACK = 1e-9
MONOTONE_SLACK = 1e-12


class CConstant(NamedTuple):
    bracket_sup: float
    argmax: int
    opnorm_bound: float


# -- factorial and coefficient parts ---------------------------------------------------


def log_factorial_part(n: ArrayLike, j: int) -> NDArray[np.float64] | float:
    """logF(n, j); never positive because binomial rows are log-concave."""
    n_arr = np.asarray(n, dtype=float)
    value = 2 * gammaln(n_arr + j + 1) - gammaln(n_arr + 2 * j + 1) - gammaln(n_arr + 1)
    return float(value) if value.ndim == 0 else value


def factorial_part(n: int, j: int) -> float:
    return math.exp(float(log_factorial_part(n, j)))


def log_alpha_part(j: int, n: ArrayLike, table: MomentTable) -> NDArray[np.float64] | float:
    """log[alpha_(n+j)^2 / (alpha_n alpha_(n+2j))]; non-negative by log-convexity of mu."""
    n_arr = np.asarray(n, dtype=int)
    table.require(int(n_arr.max()) + 2 * j, "alpha part")
    la = table.log_alphas
    value = 2 * la[n_arr + j] - la[n_arr] - la[n_arr + 2 * j]
    return float(value) if np.ndim(value) == 0 else value


def alpha_part(j: int, n: int, table: MomentTable) -> float:
    return math.exp(float(log_alpha_part(j, n, table)))


# -- the operator M_j --------------------------------------------------------------------


def mj_apply(g: HoloSeries, j: int, table: MomentTable) -> HoloSeries:
    """M_j g; the coefficient g_n moves to degree n + 2j.

    Raises:
        InsufficientTableError: If deg g + 2j exceeds the table
    """
    _check_j(j)
    if g.is_zero:
        return HoloSeries()
    table.require(g.degree + 2 * j, "M_j")
    n = np.arange(g.degree + 1)
    la = table.log_alphas
    factors = np.exp(log_factorial_part(n, j) + la[n + j] - la[n])
    out = np.zeros(g.degree + 2 * j + 1, dtype=complex)
    out[2 * j :] = g.coeffs * factors
    return HoloSeries(out)


def mj_derivative(g: HoloSeries, j: int, table: MomentTable) -> HoloSeries:
    """d^j/dz^j M_j g = sum_n g_n ((n+j)!/n!) (alpha_(n+j)/alpha_n) z^(n+j)."""
    _check_j(j)
    if g.is_zero:
        return HoloSeries()
    table.require(g.degree + j, "d^j M_j")
    n = np.arange(g.degree + 1)
    la = table.log_alphas
    factors = np.exp(gammaln(n + j + 1) - gammaln(n + 1) + la[n + j] - la[n])
    out = np.zeros(g.degree + j + 1, dtype=complex)
    out[j:] = g.coeffs * factors
    return HoloSeries(out)


def mj_adjoint_residual(h: HoloSeries, g: HoloSeries, j: int, table: MomentTable) -> float:
    """|<d^j h, g> - <h, d^j M_j g>| computed with the series inner product."""
    lhs = inner_product(holo_derivative(h, j), g, table)
    rhs = inner_product(h, holo_derivative(mj_apply(g, j, table), j), table)
    return abs(lhs - rhs)


# -- brackets and constants -------------------------------------------------------------


def bracket(j: int, n: int, table: MomentTable) -> float:
    """F(n, j)^2 alpha_(n+j)^2 / (alpha_n alpha_(n+2j)).

    Raises:
        InsufficientTableError: If n + 2j exceeds the table
    """
    _check_j(j)
    if n < 0:
        raise ValueError(f"Bracket index must be non-negative, got {n}")
    table.require(n + 2 * j, "bracket")
    return math.exp(2 * float(log_factorial_part(n, j)) + float(log_alpha_part(j, n, table)))


def bracket_sequence(j: int, N: int, table: MomentTable, n_min: int = 1) -> NDArray[np.float64]:
    """bracket(j, n) for n = n_min..N."""
    _check_j(j)
    table.require(N + 2 * j, "bracket sweep")
    n = np.arange(n_min, N + 1)
    log_f = np.asarray(log_factorial_part(n, j))
    log_bracket = 2 * log_f + np.asarray(log_alpha_part(j, n, table))
    return np.exp(log_bracket)


def c_constant(j: int, N: int, table: MomentTable) -> CConstant:
    """sup over 1 <= n <= N of the bracket, its first argmax and its square root."""
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    seq = bracket_sequence(j, N, table)
    idx = int(np.argmax(seq))
    sup = float(seq[idx])
    return CConstant(bracket_sup=sup, argmax=idx + 1, opnorm_bound=math.sqrt(sup))


def mj_operator_norm(j: int, N: int, table: MomentTable) -> float:
    """Operator norm of M_j on holomorphic polynomials of degree <= N (n = 0 included)."""
    return math.sqrt(float(bracket_sequence(j, N, table, n_min=0).max()))


def plateau_check(
    j: int, table: MomentTable, n_mid: int = 5000, n_end: int = 10_000, rel: float = 0.05
) -> PlateauCheck:
    """Compare bracket(n_end) with bracket(n_mid) over a sweep n = 1..n_end."""
    if not 1 <= n_mid <= n_end:
        raise ValueError(f"Plateau check needs 1 <= n_mid <= n_end, got {n_mid} and {n_end}")
    seq = bracket_sequence(j, n_end, table)
    mid, end = float(seq[n_mid - 1]), float(seq[n_end - 1])
    sweep_max = float(seq.max())
    change = abs(end / mid - 1.0)
    ok = bool(np.all(np.isfinite(seq))) and change <= rel
    logger.info(f"Plateau j={j}: bracket({n_mid})={mid:.6f}, bracket({n_end})={end:.6f}, ok={ok}")
    return PlateauCheck(
        j=j,
        n_mid=n_mid,
        n_end=n_end,
        bracket_mid=mid,
        bracket_end=end,
        sweep_max=sweep_max,
        rel_change=change,
        ok=ok,
    )


# -- random test functions --------------------------------------------------------------


def sample_generators(seed: int, count: int) -> list[np.random.Generator]:
    """Independent per-sample generators; sample i does not depend on ``count``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(child) for child in children]


def _complex_gaussian(rng: np.random.Generator, size: int) -> NDArray[np.complex128]:
    draws = rng.standard_normal((size, 2))
    return (draws[:, 0] + 1j * draws[:, 1]) / math.sqrt(2.0)


def random_holo_series(
    rng: np.random.Generator, degree: int, decay: float = 1.0
) -> HoloSeries:
    """Standard complex Gaussian Taylor coefficients, g_n scaled by decay**n."""
    return HoloSeries(_complex_gaussian(rng, degree + 1) * decay ** np.arange(degree + 1))


def random_monomial_series(
    rng: np.random.Generator, degree: int, decay: float = 1.0
) -> MonomialSeries:
    """Dense series of total degree <= degree, drawn in order of total degree.

    A larger degree cap only appends terms, so the low-degree part of a sample is
    the same for every cap.
    """
    coeffs: dict[tuple[int, int], complex] = {}
    for d in range(degree + 1):
        values = _complex_gaussian(rng, d + 1) * decay**d
        for a in range(d + 1):
            coeffs[(a, d - a)] = complex(values[a])
    return MonomialSeries(coeffs)


# -- the integration-by-parts constant D_j -------------------------------------------


def pair_ratio(p: HoloSeries, f: Series, j: int, table: MomentTable) -> float | None:
    """|<d^j p, f>| / (||p||_0 ||f||_j); None when a norm is below the skip threshold."""
    p_norm = norm0(p, table)
    f_norm = sobolev_norm(f, j, table).total
    if p_norm < SKIP_THRESHOLD or f_norm < SKIP_THRESHOLD:
        return None
    return abs(inner_product(holo_derivative(p, j), f, table)) / (p_norm * f_norm)


def dual_ratio(
    f: MonomialSeries, j: int, table: MomentTable, p_degree: int = DJ_DEGREE
) -> float | None:
    """sup over holomorphic p of degree <= p_degree of |<d^j p, f>| / (||p||_0 ||f||_j).

    With v_n = n!/(n-j)! <z^(n-j), f> the pairing is sum_n p_n v_n and
    ||p||^2 = sum |p_n|^2 / alpha_n, so the sup is sqrt(sum alpha_n |v_n|^2).
    """
    f_norm = sobolev_norm(f, j, table).total
    if f_norm < SKIP_THRESHOLD:
        return None
    table.require(max(p_degree, f.degree), "D_j estimate")
    la = table.log_alphas
    # <z^m, z^a zbar^b> = conj(c) mu_(2a+1) when m = a - b
    pairing = np.zeros(p_degree - j + 1, dtype=complex)
    for (a, b), c in f.items():
        m = a - b
        if 0 <= m <= p_degree - j:
            pairing[m] += c.conjugate() * math.exp(-la[a])
    n = np.arange(j, p_degree + 1)
    log_perm = gammaln(n + 1) - gammaln(n - j + 1)
    sq = float(np.sum(np.exp(la[n] + 2 * log_perm) * np.abs(pairing) ** 2))
    return math.sqrt(sq) / f_norm


def estimate_Dj(
    w: RadialWeight,
    j: int,
    samples: int,
    seed: int,
    table: MomentTable,
    degree: int = DJ_DEGREE,
    decay: float = 1.0,
) -> DjEstimate:
    """Empirical lower estimate of the integration-by-parts constant D_j.

    Each random f (dense, degree <= ``degree``) is paired with the holomorphic p of
    degree <= ``degree`` that maximises the ratio; the pair (z^j, 1) is always part of
    the sweep. The result is a max over samples, never the true supremum.

    Raises:
        DegenerateSampleError: If every random sample is skipped
    """
    _check_j(j)
    _check_table_weight(w, table)
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")

    hand = HoloSeries(np.eye(1, j + 1, j).ravel())
    best = pair_ratio(hand, MonomialSeries.monomial(0, 0), j, table) or 0.0
    ratios: list[float] = []
    for rng in sample_generators(seed, samples):
        ratio = dual_ratio(random_monomial_series(rng, degree, decay), j, table, degree)
        if ratio is None:
            logger.warning("Skipping degenerate D_j sample")
            continue
        ratios.append(ratio)
    if not ratios:
        raise DegenerateSampleError(f"All {samples} D_j samples were degenerate")
    estimate = max(best, max(ratios))
    logger.info(f"D_{j} estimate over {len(ratios)} samples: {estimate:.6f}")
    return DjEstimate(
        j=j, estimate=estimate, samples=samples, used=len(ratios), seed=seed, ratios=ratios
    )


# -- the theorem sweep and the truncated estimate --------------------------------------


def regularity_ratio(f: Series, k: int, table: MomentTable) -> float | None:
    """||B f||_k / ||f||_k, or None when ||f||_k is below the skip threshold."""
    den = sobolev_norm(f, k, table).total
    if den < SKIP_THRESHOLD:
        return None
    return sobolev_norm(project(f, table), k, table).total / den


def verify_exact_regularity(
    w: RadialWeight,
    k: int,
    samples: int,
    seed: int,
    N: int,
    table: MomentTable,
    decay: float = 1.0,
) -> TheoremSweep:
    """Ratios ||B f||_k / ||f||_k for random f of degree <= N.

    Raises:
        InsufficientTableError: If the table is shorter than N + 2k
        DegenerateSampleError: If every sample is skipped
    """
    _check_table_weight(w, table)
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    table.require(N + 2 * k, "regularity sweep")
    ratios: list[float] = []
    skipped = 0
    for rng in sample_generators(seed, samples):
        ratio = regularity_ratio(random_monomial_series(rng, N, decay), k, table)
        if ratio is None:
            skipped += 1
            continue
        ratios.append(ratio)
    if not ratios:
        raise DegenerateSampleError(f"All {samples} regularity samples were degenerate")
    max_ratio = max(ratios)
    logger.info(f"Regularity sweep k={k}, degree<={N}: max ratio {max_ratio:.6f}")
    return TheoremSweep(
        k=k,
        degree=N,
        samples=samples,
        seed=seed,
        max_ratio=max_ratio,
        per_sample=ratios,
        skipped=skipped,
    )


def truncated_estimate_check(
    f: Series, j: int, N: int, table: MomentTable, d_j: float
) -> TruncatedEstimate:
    """Compare ||S_N d^j B f||_0 with d_j C ||f||_j.

    C is the larger of sqrt(bracket sup) and the exact operator norm of M_j on
    degree <= N, because S_N h keeps its constant term. With an empirical d_j the
    flag is informative only.
    """
    lhs = norm0(truncate(holo_derivative(project(f, table), j), N), table)
    constant = c_constant(j, N, table)
    opnorm = max(constant.opnorm_bound, mj_operator_norm(j, N, table))
    rhs = d_j * opnorm * sobolev_norm(f, j, table).total
    ok = lhs <= rhs * (1.0 + ESTIMATE_SLACK)
    ratio = lhs / rhs if rhs > 0 else None
    logger.info(f"Truncated estimate j={j}, N={N}: lhs={lhs:.6e}, rhs={rhs:.6e}, ok={ok}")
    return TruncatedEstimate(lhs=lhs, rhs=rhs, ratio=ratio, ok=ok)


# -- cutoff approximation ---------------------------------------------------------------


def _check_cutoff_inputs(base: RadialWeight, t_list: Sequence[float]) -> None:
    if isinstance(base, CutoffWeight):
        raise NestingError("Cutoff convergence needs a non-cutoff base weight")
    if not t_list or any(not 0.0 < t < 1.0 for t in t_list):
        raise WeightDomainError("Cutoff widths must lie in (0, 1)")
    if any(a <= b for a, b in zip(t_list, t_list[1:], strict=False)):
        raise WeightDomainError("Cutoff widths must be strictly decreasing")


def cutoff_convergence(
    base: RadialWeight,
    n_list: Iterable[int],
    t_list: Sequence[float],
    cfg: QuadratureConfig | None = None,
) -> ConvergenceReport:
    """Relative gap |alpha_n^t / alpha_n - 1| for every n and cutoff width t.

    Raises:
        QuadratureError: Propagated from the moment computation
    """
    _check_cutoff_inputs(base, t_list)
    ns = sorted(set(n_list))
    n_top = ns[-1]
    la = compute_moments(base, n_top, cfg).log_alphas
    rows: list[ConvergenceRow] = []
    for t in t_list:
        la_t = compute_moments(make_cutoff(base, t), n_top, cfg).log_alphas
        for n in ns:
            gap = abs(math.expm1(la_t[n] - la[n]))
            rows.append(
                ConvergenceRow(
                    t=t, n=n, log_alpha_t=float(la_t[n]), log_alpha=float(la[n]), rel_gap=gap
                )
            )
    monotone: dict[int, bool] = {}
    for n in ns:
        gaps = [row.rel_gap for row in rows if row.n == n]
        monotone[n] = all(b <= a + MONOTONE_SLACK for a, b in zip(gaps, gaps[1:], strict=False))
        if not monotone[n]:
            logger.warning(f"Cutoff gap for n={n} does not decrease along t: {gaps}")
    return ConvergenceReport(base=base, rows=rows, monotone=monotone)


def cutoff_bracket_sweep(
    base: RadialWeight,
    j: int,
    N: int,
    t_list: Sequence[float],
    cfg: QuadratureConfig | None = None,
) -> list[CutoffBracketRow]:
    """sup_{1<=n<=N} bracket for the base weight and for each cutoff width."""
    _check_cutoff_inputs(base, t_list)
    rows: list[CutoffBracketRow] = []
    for t in (None, *t_list):
        weight = base if t is None else make_cutoff(base, t)
        constant = c_constant(j, N, compute_moments(weight, N + 2 * j, cfg))
        rows.append(
            CutoffBracketRow(t=t, bracket_sup=constant.bracket_sup, bracket_argmax=constant.argmax)
        )
    return rows


def truncated_norm_limit(
    f: Series,
    j: int,
    N: int,
    base: RadialWeight,
    t_list: Sequence[float],
    cfg: QuadratureConfig | None = None,
) -> TruncatedLimitReport:
    """||S_N d^j B_{lambda_t} f||^2_{lambda_t} and ||f||_{j,lambda_t} along t, plus the base."""
    _check_cutoff_inputs(base, t_list)
    degree = max(f.degree, 0)
    rows: list[TruncatedLimitRow] = []
    for t in (None, *t_list):
        weight = base if t is None else make_cutoff(base, t)
        table = compute_moments(weight, degree, cfg)
        value = norm0(truncate(holo_derivative(project(f, table), j), N), table) ** 2
        rows.append(TruncatedLimitRow(t=t, value=value, sobolev=sobolev_norm(f, j, table).total))
    return TruncatedLimitReport(j=j, N=N, rows=rows)


# -- combined report --------------------------------------------------------------------


def regularity_report(
    table: MomentTable,
    j: int,
    N: int,
    k: int | None = None,
    samples: int = 100,
    seed: int = 42,
    decay: float = 1.0,
) -> RegularityReport:
    """Constants C_{j,N}, the D_j estimate and, when k is given, the theorem sweep."""
    constant = c_constant(j, N, table)
    d_j = estimate_Dj(table.weight, j, samples, seed, table, decay=decay)
    sweep = (
        verify_exact_regularity(table.weight, k, samples, seed, N, table, decay=decay)
        if k is not None
        else None
    )
    return RegularityReport(
        j=j,
        N=N,
        bracket_sup=constant.bracket_sup,
        bracket_argmax=constant.argmax,
        opnorm_bound=constant.opnorm_bound,
        opnorm_exact=mj_operator_norm(j, N, table),
        bracket_tail=bracket(j, N, table),
        d_j_estimate=d_j.estimate,
        k=k,
        theorem_max_ratio=sweep.max_ratio if sweep else None,
        samples=samples,
        seed=seed,
    )


def _check_j(j: int) -> None:
    if j < 1:
        raise ValueError(f"j must be at least 1, got {j}")


def _check_table_weight(w: RadialWeight, table: MomentTable) -> None:
    if w != table.weight:
        raise ValueError(f"Moment table belongs to {table.weight!r}, not {w!r}")
