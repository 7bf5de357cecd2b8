"""Unit tests for the regularity operator M_j, constants and sweeps."""

import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from pytest_mock import MockerFixture

from bergman_reg.core.moments import MomentTable, compute_moments
from bergman_reg.core.regularity import (
    alpha_part,
    bracket,
    bracket_sequence,
    c_constant,
    cutoff_bracket_sweep,
    cutoff_convergence,
    dual_ratio,
    estimate_Dj,
    factorial_part,
    log_alpha_part,
    log_factorial_part,
    mj_adjoint_residual,
    mj_apply,
    mj_derivative,
    mj_operator_norm,
    pair_ratio,
    plateau_check,
    random_holo_series,
    random_monomial_series,
    regularity_ratio,
    regularity_report,
    sample_generators,
    truncated_estimate_check,
    truncated_norm_limit,
    verify_exact_regularity,
)
from bergman_reg.core.series import holo_derivative, inner_product, norm0
from bergman_reg.core.weights import make_cutoff
from bergman_reg.exceptions import (
    DegenerateSampleError,
    InsufficientTableError,
    NestingError,
    WeightDomainError,
)
from bergman_reg.models.series import HoloSeries, MonomialSeries
from bergman_reg.models.weight import PowerWeight

holo_strategy = st.lists(
    st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=9,
).map(HoloSeries)


class TestFactorialAndAlphaParts:
    """Tests for the two factors of the bracket."""

    def test_factorial_part_values(self) -> None:
        """Test F(0, 1) = 1/2 and F(1, 1) = 2/3."""
        assert factorial_part(0, 1) == pytest.approx(0.5, rel=1e-14)
        assert factorial_part(1, 1) == pytest.approx(2 / 3, rel=1e-14)

    def test_factorial_part_at_most_one(self) -> None:
        n = np.arange(0, 10_001)
        for j in (1, 2, 3):
            assert np.all(log_factorial_part(n, j) <= 1e-12)

    def test_alpha_part_unweighted(self, unweighted_table: MomentTable) -> None:
        """Test alpha part (n + 2)^2 / ((n + 1)(n + 3)) for lambda = 1, j = 1."""
        for n in (0, 1, 7, 150):
            expected = (n + 2) ** 2 / ((n + 1) * (n + 3))
            assert alpha_part(1, n, unweighted_table) == pytest.approx(expected, rel=1e-12)

    def test_parts_multiply_to_bracket(self, power2_table: MomentTable) -> None:
        for n in (1, 10, 90):
            product = factorial_part(n, 2) ** 2 * alpha_part(2, n, power2_table)
            assert product == pytest.approx(bracket(2, n, power2_table), rel=1e-12)

    def test_alpha_part_at_least_one(self, exp_table: MomentTable) -> None:
        n = np.arange(0, 70)
        for j in (1, 2, 3, 5):
            assert np.all(log_alpha_part(j, n, exp_table) >= -1e-9)


class TestMj:
    """Tests for M_j and its adjoint identity."""

    def test_mj_of_one_unweighted(self, unweighted_table: MomentTable) -> None:
        """Test M_1 1 = z^2 for lambda = 1."""
        result = mj_apply(HoloSeries([1.0]), 1, unweighted_table)
        assert result.degree == 2
        assert result.coeffs[2] == pytest.approx(1.0, rel=1e-14)

    def test_mj_of_z_unweighted(self, unweighted_table: MomentTable) -> None:
        """Test M_1 z = z^3: factor (2/3)(alpha_2 / alpha_1) = 1."""
        result = mj_apply(HoloSeries([0.0, 1.0]), 1, unweighted_table)
        assert result.degree == 3
        assert result.coeffs[3] == pytest.approx(1.0, rel=1e-14)
        assert result.coeffs[:3].tolist() == [0, 0, 0]

    def test_mj_derivative_matches_differentiated_mj(self, cutoff_table: MomentTable) -> None:
        g = HoloSeries([1.0, -0.5j, 2.0, 0.25])
        for j in (1, 2, 3):
            explicit = mj_derivative(g, j, cutoff_table)
            direct = holo_derivative(mj_apply(g, j, cutoff_table), j)
            assert np.allclose(explicit.coeffs, direct.coeffs, rtol=1e-13, atol=0)

    def test_mj_derivative_of_one(self, unweighted_table: MomentTable) -> None:
        result = mj_derivative(HoloSeries([1.0]), 1, unweighted_table)
        assert result.coeffs[1] == pytest.approx(2.0, rel=1e-14)

    def test_adjoint_identity_monomials(self, unweighted_table: MomentTable) -> None:
        """Test <d h, g> = <h, d M_1 g> for h = z, g = 1 (both sides equal pi)."""
        h, g = HoloSeries([0.0, 1.0]), HoloSeries([1.0])
        assert inner_product(holo_derivative(h, 1), g, unweighted_table) == pytest.approx(math.pi)
        assert mj_adjoint_residual(h, g, 1, unweighted_table) <= 1e-12 * math.pi

    @seed(20240604)
    @settings(max_examples=50, deadline=None)
    @given(h=holo_strategy, g=holo_strategy, j=st.integers(1, 3))
    def test_adjoint_identity_random(
        self, power2_table: MomentTable, h: HoloSeries, g: HoloSeries, j: int
    ) -> None:
        lhs = inner_product(holo_derivative(h, j), g, power2_table)
        rhs = inner_product(h, holo_derivative(mj_apply(g, j, power2_table), j), power2_table)
        abs_h = HoloSeries(np.abs(h.coeffs))
        abs_g = HoloSeries(np.abs(g.coeffs))
        scale = 1.0 + inner_product(holo_derivative(abs_h, j), abs_g, power2_table).real
        assert abs(lhs - rhs) <= 1e-12 * scale
        assert mj_adjoint_residual(h, g, j, power2_table) <= 1e-12 * scale

    def test_zero_input(self, unweighted_table: MomentTable) -> None:
        assert mj_apply(HoloSeries(), 2, unweighted_table).is_zero
        assert mj_derivative(HoloSeries(), 2, unweighted_table).is_zero

    def test_table_too_short_raises(self) -> None:
        table = compute_moments(PowerWeight(t=0), 5)
        with pytest.raises(InsufficientTableError, match="M_j"):
            mj_apply(HoloSeries([0.0, 0.0, 1.0]), 2, table)

    def test_j_zero_raises(self, unweighted_table: MomentTable) -> None:
        with pytest.raises(ValueError, match="j must be"):
            mj_apply(HoloSeries([1.0]), 0, unweighted_table)


class TestBrackets:
    """Tests for bracket, bracket_sequence and the constants."""

    def test_bracket_unweighted_first_term(self, unweighted_table: MomentTable) -> None:
        assert bracket(1, 1, unweighted_table) == pytest.approx(0.5, rel=1e-12)

    def test_bracket_sequence_closed_form(self, unweighted_table: MomentTable) -> None:
        """Test bracket(1, n) = (n + 1) / (n + 3) for lambda = 1."""
        n = np.arange(1, 101)
        seq = bracket_sequence(1, 100, unweighted_table)
        assert np.allclose(seq, (n + 1) / (n + 3), rtol=1e-12, atol=0)

    def test_bracket_at_zero(self, unweighted_table: MomentTable) -> None:
        assert bracket(1, 0, unweighted_table) == pytest.approx(1 / 3, rel=1e-12)
        with pytest.raises(ValueError):
            bracket(1, -1, unweighted_table)

    def test_bracket_positive(self, cutoff_table: MomentTable) -> None:
        seq = bracket_sequence(3, 60, cutoff_table, n_min=0)
        assert np.all(seq > 0)
        assert np.all(np.isfinite(seq))

    def test_c_constant_single_term(self, unweighted_table: MomentTable) -> None:
        constant = c_constant(1, 1, unweighted_table)
        assert constant.bracket_sup == pytest.approx(0.5, rel=1e-12)
        assert constant.argmax == 1
        assert constant.opnorm_bound == pytest.approx(math.sqrt(0.5), rel=1e-12)

    def test_c_constant_tuple_unpacking(self, unweighted_table: MomentTable) -> None:
        sup, argmax, opnorm = c_constant(1, 50, unweighted_table)
        assert argmax == 50
        assert sup == pytest.approx(51 / 53, rel=1e-12)
        assert opnorm == pytest.approx(math.sqrt(51 / 53), rel=1e-12)

    def test_c_constant_rejects_zero_n(self, unweighted_table: MomentTable) -> None:
        with pytest.raises(ValueError):
            c_constant(1, 0, unweighted_table)

    def test_c_constant_table_too_short(self) -> None:
        table = compute_moments(PowerWeight(t=0), 10)
        with pytest.raises(InsufficientTableError):
            c_constant(2, 8, table)

    def test_operator_norm_includes_constant_term(self, unweighted_table: MomentTable) -> None:
        assert mj_operator_norm(1, 1, unweighted_table) == pytest.approx(
            math.sqrt(0.5), rel=1e-12
        )

    def test_operator_norm_is_attained(self, power2_table: MomentTable) -> None:
        """Test ||M_j g|| <= opnorm ||g|| with equality on the maximising monomial."""
        j, N = 2, 20
        opnorm = mj_operator_norm(j, N, power2_table)
        seq = bracket_sequence(j, N, power2_table, n_min=0)
        n_star = int(np.argmax(seq))
        z_n = HoloSeries(np.eye(1, n_star + 1, n_star).ravel())
        ratio = norm0(mj_apply(z_n, j, power2_table), power2_table) / norm0(z_n, power2_table)
        assert ratio == pytest.approx(opnorm, rel=1e-12)
        g = random_holo_series(sample_generators(4, 1)[0], N)
        ratio_g = norm0(mj_apply(g, j, power2_table), power2_table) / norm0(g, power2_table)
        assert ratio_g <= opnorm * (1 + 1e-12)

    def test_plateau_unweighted(self) -> None:
        table = compute_moments(PowerWeight(t=0), 10_010)
        check = plateau_check(1, table)
        assert check.ok
        assert check.rel_change < 1e-3
        assert check.sweep_max < 1.0

    @pytest.mark.parametrize(("n_mid", "n_end"), [(0, 10), (11, 10), (-3, 5)])
    def test_plateau_rejects_bad_bounds(
        self, unweighted_table: MomentTable, n_mid: int, n_end: int
    ) -> None:
        with pytest.raises(ValueError, match="n_mid"):
            plateau_check(1, unweighted_table, n_mid=n_mid, n_end=n_end)


class TestRandomSeries:
    """Tests for the random test-function generators."""

    def test_generators_do_not_depend_on_count(self) -> None:
        few = sample_generators(42, 3)
        many = sample_generators(42, 10)
        for a, b in zip(few, many, strict=False):
            assert a.standard_normal() == b.standard_normal()

    def test_degree_cap_extends_prefix(self) -> None:
        low = random_monomial_series(sample_generators(8, 1)[0], 5)
        high = random_monomial_series(sample_generators(8, 1)[0], 9)
        assert all(high.coeffs[key] == c for key, c in low.items())
        assert len(high) == 55
        assert high.degree == 9

    def test_decay_damps_high_degrees(self) -> None:
        plain = random_holo_series(sample_generators(2, 1)[0], 10)
        damped = random_holo_series(sample_generators(2, 1)[0], 10, decay=0.5)
        assert np.allclose(damped.coeffs, plain.coeffs * 0.5 ** np.arange(11))


class TestEstimateDj:
    """Tests for the D_j estimate."""

    def test_includes_hand_pair(
        self, unweighted: PowerWeight, unweighted_table: MomentTable
    ) -> None:
        """Test D_1 >= sqrt(2), the ratio of the pair (z, 1) for lambda = 1."""
        result = estimate_Dj(unweighted, 1, 5, 42, unweighted_table)
        assert result.estimate >= math.sqrt(2) * (1 - 1e-12)
        assert result.used == 5
        assert len(result.ratios) == 5

    def test_hand_pair_ratio(self, unweighted_table: MomentTable) -> None:
        ratio = pair_ratio(HoloSeries([0.0, 1.0]), MonomialSeries.monomial(0), 1, unweighted_table)
        assert ratio == pytest.approx(math.sqrt(2), rel=1e-12)

    def test_dual_ratio_dominates_random_pairs(self, power2_table: MomentTable) -> None:
        rng_f, *rng_ps = sample_generators(17, 6)
        f = random_monomial_series(rng_f, 12)
        best = dual_ratio(f, 2, power2_table, p_degree=30)
        assert best is not None
        for rng in rng_ps:
            ratio = pair_ratio(random_holo_series(rng, 30), f, 2, power2_table)
            assert ratio is not None
            assert ratio <= best * (1 + 1e-9)

    def test_dual_ratio_of_constant(self, unweighted_table: MomentTable) -> None:
        """Test that f = 1 gives the hand-pair ratio."""
        assert dual_ratio(MonomialSeries.monomial(0), 1, unweighted_table) == pytest.approx(
            math.sqrt(2), rel=1e-12
        )

    def test_deterministic_and_monotone_in_samples(
        self, unweighted: PowerWeight, unweighted_table: MomentTable
    ) -> None:
        first = estimate_Dj(unweighted, 2, 8, 3, unweighted_table)
        again = estimate_Dj(unweighted, 2, 8, 3, unweighted_table)
        more = estimate_Dj(unweighted, 2, 16, 3, unweighted_table)
        assert first == again
        assert more.estimate >= first.estimate
        assert more.ratios[:8] == first.ratios

    def test_degenerate_samples_raise(
        self, unweighted: PowerWeight, unweighted_table: MomentTable, mocker: MockerFixture
    ) -> None:
        mocker.patch("bergman_reg.core.regularity.dual_ratio", return_value=None)
        with pytest.raises(DegenerateSampleError):
            estimate_Dj(unweighted, 1, 3, 0, unweighted_table)

    def test_weight_must_match_table(self, power2_table: MomentTable) -> None:
        with pytest.raises(ValueError, match="belongs to"):
            estimate_Dj(PowerWeight(t=0), 1, 1, 0, power2_table)


class TestTheoremSweep:
    """Tests for verify_exact_regularity and the truncated estimate."""

    def test_holomorphic_ratio_is_one(self, power2_table: MomentTable) -> None:
        h = random_holo_series(sample_generators(1, 1)[0], 15)
        assert regularity_ratio(h, 3, power2_table) == 1.0

    def test_k_zero_contraction(self, cutoff_table: MomentTable) -> None:
        w = cutoff_table.weight
        sweep = verify_exact_regularity(w, 0, 20, 42, 12, cutoff_table)
        assert sweep.max_ratio <= 1 + 1e-10
        assert len(sweep.per_sample) == 20
        assert sweep.skipped == 0

    def test_sweep_is_finite(self, power2_table: MomentTable) -> None:
        sweep = verify_exact_regularity(power2_table.weight, 2, 10, 7, 15, power2_table)
        assert math.isfinite(sweep.max_ratio)
        assert sweep.max_ratio == max(sweep.per_sample)

    def test_table_too_short(self) -> None:
        table = compute_moments(PowerWeight(t=2), 20)
        with pytest.raises(InsufficientTableError):
            verify_exact_regularity(table.weight, 3, 2, 0, 16, table)

    def test_truncated_estimate(self, power2_table: MomentTable) -> None:
        w = power2_table.weight
        d_1 = estimate_Dj(w, 1, 20, 42, power2_table).estimate
        f = random_monomial_series(sample_generators(6, 1)[0], 10)
        result = truncated_estimate_check(f, 1, 10, power2_table, d_1)
        assert result.lhs > 0
        assert result.rhs > 0
        assert result.ratio == pytest.approx(result.lhs / result.rhs)

    def test_truncated_estimate_antiholomorphic(self, power2_table: MomentTable) -> None:
        result = truncated_estimate_check(MonomialSeries.monomial(0, 1), 1, 5, power2_table, 1.0)
        assert result.lhs == 0.0
        assert result.ok

    def test_truncated_estimate_holomorphic(self, power2_table: MomentTable) -> None:
        """Test that S_N and B act as the identity on holomorphic f of degree <= N."""
        h = HoloSeries([1.0, 2.0, -1j, 0.5])
        result = truncated_estimate_check(h.to_monomial(), 2, 5, power2_table, 1.0)
        assert result.lhs == pytest.approx(norm0(holo_derivative(h, 2), power2_table), rel=1e-14)

    def test_truncated_estimate_with_zero_constant(self, unweighted_table: MomentTable) -> None:
        f = MonomialSeries.monomial(3, 0)
        result = truncated_estimate_check(f, 1, 5, unweighted_table, 0.0)
        assert result.rhs == 0.0
        assert result.ratio is None
        assert not result.ok

    def test_regularity_report(self, power2_table: MomentTable) -> None:
        report = regularity_report(power2_table, 1, 10, k=1, samples=5, seed=42)
        assert report.bracket_sup > 0
        assert report.opnorm_exact >= report.opnorm_bound * (1 - 1e-12)
        assert report.d_j_estimate is not None
        assert report.theorem_max_ratio is not None
        assert report.bracket_tail == pytest.approx(bracket(1, 10, power2_table))


class TestCutoffApproximation:
    """Tests for the cutoff convergence sweeps."""

    def test_gaps_shrink_with_t(self, unweighted: PowerWeight) -> None:
        t_list = [0.5, 0.2, 0.1]
        report = cutoff_convergence(unweighted, [0, 3, 8], t_list)
        assert report.non_monotone == []
        for n in (0, 3, 8):
            gaps = report.gaps(n)
            assert len(gaps) == 3
            assert all(b < a for a, b in zip(gaps, gaps[1:], strict=False))
            for t, gap in zip(t_list, gaps, strict=True):
                assert 0 < gap <= (1 - t) ** (-2 * (n + 1)) - 1

    def test_rejects_cutoff_base(self) -> None:
        base = make_cutoff(PowerWeight(t=0), 0.5)
        with pytest.raises(NestingError):
            cutoff_convergence(base, [0], [0.2])

    @pytest.mark.parametrize("t_list", [[0.1, 0.2], [0.5, 0.5], [1.0, 0.5], []])
    def test_rejects_bad_t_list(self, unweighted: PowerWeight, t_list: list[float]) -> None:
        with pytest.raises(WeightDomainError):
            cutoff_convergence(unweighted, [0], t_list)

    def test_bracket_sweep_approaches_base(self, unweighted: PowerWeight) -> None:
        rows = cutoff_bracket_sweep(unweighted, 1, 5, [0.5, 0.05])
        assert rows[0].t is None
        assert rows[0].bracket_sup == pytest.approx(6 / 8, rel=1e-12)
        assert abs(rows[2].bracket_sup - rows[0].bracket_sup) < abs(
            rows[1].bracket_sup - rows[0].bracket_sup
        )

    def test_truncated_norm_limit(self, unweighted: PowerWeight) -> None:
        f = MonomialSeries({(3, 1): 1.0, (2, 0): 0.5j})
        report = truncated_norm_limit(f, 1, 2, unweighted, [0.5, 0.1, 0.02])
        base, *cut = report.rows
        assert base.t is None
        for row in cut:
            assert row.sobolev <= base.sobolev
        assert abs(cut[-1].value - base.value) < abs(cut[0].value - base.value)
