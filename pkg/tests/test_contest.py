import numpy as np
import pytest
from hypothesis import given, strategies as st

from commitlab.beliefs import MedianBelief
from commitlab.contest import (LEFT, RIGHT, IdealPair, PlatformProfile, expected_payoff, expected_policy,
                               reduced_objective, win_probability, win_probability_grid)
from commitlab.errors import DomainError
from conftest import BUILTIN_BELIEFS, make_model

TRI = MedianBelief.triangular(0.5)
UNI = MedianBelief.uniform()
unit = st.floats(0.0, 1.0)


def test_win_probability_examples():
    for b in BUILTIN_BELIEFS.values():
        assert win_probability(b, (0.4, 0.4)) == 0.5
    assert win_probability(TRI, (0.2, 0.6)) == pytest.approx(0.32, abs=1e-12)
    assert win_probability(TRI, (0.8, 0.6)) == pytest.approx(0.18, abs=1e-12)


def test_expected_payoff_examples():
    m = make_model(t_l=0.0, t_r=1.0)
    assert expected_payoff(m, LEFT, (0.2, 0.6)) == pytest.approx(-0.232, abs=1e-12)
    assert expected_payoff(m, RIGHT, (0.2, 0.6)) == pytest.approx(-0.352, abs=1e-12)
    assert expected_payoff(m, LEFT, (0.3, 0.3)) == pytest.approx(-0.09, abs=1e-12)
    assert expected_payoff(m, RIGHT, (0.3, 0.3)) == pytest.approx(-0.49, abs=1e-12)


def test_expected_policy_examples():
    assert expected_policy(UNI, (0.2, 0.6)) == pytest.approx(0.44, abs=1e-12)
    assert expected_policy(TRI, (0.2, 0.6)) == pytest.approx(0.472, abs=1e-12)
    assert expected_policy(TRI, (0.37, 0.37)) == 0.37


def test_reduced_objective_matches_payoff_difference():
    m = make_model("exponential", "triangular", 0.1, 0.9)
    for x, opp in [(0.2, 0.6), (0.3, 0.45)]:
        lhs = reduced_objective(m, LEFT, x, opp)
        rhs = expected_payoff(m, LEFT, (x, opp)) - expected_payoff(m, LEFT, (opp, opp))
        assert lhs == pytest.approx(rhs, abs=1e-14)
        lhs = reduced_objective(m, RIGHT, 1 - x, opp)
        rhs = expected_payoff(m, RIGHT, (opp, 1 - x)) - expected_payoff(m, RIGHT, (opp, opp))
        assert lhs == pytest.approx(rhs, abs=1e-14)


def test_validation():
    with pytest.raises(DomainError):
        PlatformProfile(-0.1, 0.5)
    with pytest.raises(DomainError):
        IdealPair(0.5, 0.5)
    with pytest.raises(DomainError):
        win_probability(UNI, (0.2, 1.3))


@pytest.fixture(scope="module")
def grid():
    return np.linspace(0.0, 1.0, 101)


@pytest.mark.parametrize("name", sorted(BUILTIN_BELIEFS))
def test_grid_properties(name, grid):
    b = BUILTIN_BELIEFS[name]
    P = win_probability_grid(b, grid[:, None], grid[None, :])
    # symmetry
    assert np.max(np.abs(P + P.T - 1.0)) <= 1e-12
    # strict interior
    assert np.all((P > 0) & (P < 1))
    # increasing in x_l below x_r, decreasing above
    dP = np.diff(P, axis=0)
    i, j = np.indices(dP.shape)  # dP[i, j] = P[i+1, j] - P[i, j]
    below, above = i + 1 < j, i > j
    assert np.all(dP[below] > 0)
    assert np.all(dP[above] < 0)


@given(unit, unit)
def test_policy_between_platforms(a, b):
    for belief in BUILTIN_BELIEFS.values():
        pi = expected_policy(belief, (a, b))
        assert min(a, b) - 1e-15 <= pi <= max(a, b) + 1e-15


@given(unit, unit)
def test_scalar_and_grid_agree(a, b):
    for belief in BUILTIN_BELIEFS.values():
        assert win_probability(belief, (a, b)) == pytest.approx(
            float(win_probability_grid(belief, np.array(a), np.array(b))), abs=1e-15)
