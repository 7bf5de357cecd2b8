"""Pytest configuration and shared fixtures."""

import pytest

from bergman_reg.core.moments import MomentTable, compute_moments
from bergman_reg.core.weights import make_cutoff
from bergman_reg.models.weight import ExponentialWeight, PowerWeight


@pytest.fixture(scope="session")
def unweighted() -> PowerWeight:
    """The constant weight lambda = 1."""
    return PowerWeight(t=0)


@pytest.fixture(scope="session")
def unweighted_table(unweighted: PowerWeight) -> MomentTable:
    """Closed-form table of lambda = 1, alpha_n = (n + 1) / pi.

    Returns:
        Moment table with n_max = 200
    """
    return compute_moments(unweighted, 200)


@pytest.fixture(scope="session")
def power2_table() -> MomentTable:
    return compute_moments(PowerWeight(t=2), 200)


@pytest.fixture(scope="session")
def exp_weight() -> ExponentialWeight:
    return ExponentialWeight(A=0, B=1, alpha=1)


@pytest.fixture(scope="session")
def exp_table(exp_weight: ExponentialWeight) -> MomentTable:
    """Quadrature table of exp(-1 / (1 - r^2)).

    Returns:
        Moment table with n_max = 80
    """
    return compute_moments(exp_weight, 80)


@pytest.fixture(scope="session")
def cutoff_table() -> MomentTable:
    """Quadrature table of chi_0.3 (1 - r^2), n_max = 70."""
    return compute_moments(make_cutoff(PowerWeight(t=1), 0.3), 70)
