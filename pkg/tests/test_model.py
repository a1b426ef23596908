import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from doublejc.closed_form import evolve
from doublejc.errors import InvalidArgument, InvalidState
from doublejc.model import (
    BellFamily, CouplingParams, PreparedState, SingleExcState, initial_state, norm,
    subsystem_populations,
)

finite_angles = st.floats(-20, 20, allow_nan=False)


def test_initial_state_ab_pi6():
    s = initial_state(PreparedState(BellFamily.AB, math.pi / 6))
    np.testing.assert_allclose(s.as_array(), [math.sqrt(3) / 2, 0.5, 0, 0], atol=1e-15)


def test_initial_state_photons_pi4():
    s = initial_state(PreparedState("ab", math.pi / 4))
    r = 1 / math.sqrt(2)
    np.testing.assert_allclose(s.as_array(), [0, 0, r, r], atol=1e-15)


@pytest.mark.parametrize("family, slots", [
    ("AB", (0, 1)), ("ab", (2, 3)), ("Aa", (0, 2)),
    ("Bb", (1, 3)), ("Ab", (0, 3)), ("Ba", (1, 2)),
])
def test_family_slots(family, slots):
    theta = 0.3
    amps = initial_state(PreparedState(family, theta)).as_array()
    expected = np.zeros(4)
    expected[slots[0]] = math.cos(theta)
    expected[slots[1]] = math.sin(theta)
    np.testing.assert_array_equal(amps, expected)


def test_ab_family_distinct_from_ba():
    # Ab: atom A with cavity b; Ba: atom B with cavity a
    ab = initial_state(PreparedState("Ab", math.pi / 12)).as_array()
    ba = initial_state(PreparedState("Ba", math.pi / 12)).as_array()
    assert ab[0] == math.cos(math.pi / 12) and ab[3] == math.sin(math.pi / 12)
    assert ba[1] == math.cos(math.pi / 12) and ba[2] == math.sin(math.pi / 12)


@pytest.mark.parametrize("theta", [math.nan, math.inf, -math.inf])
def test_initial_state_rejects_nonfinite(theta):
    with pytest.raises(InvalidArgument):
        initial_state(PreparedState("AB", theta))


def test_unknown_family():
    with pytest.raises(InvalidArgument):
        BellFamily.parse("AC")
    assert len(BellFamily) == 6


@given(st.sampled_from(list(BellFamily)), finite_angles)
def test_initial_state_norm_and_two_zeros(family, theta):
    s = initial_state(PreparedState(family, theta))
    assert abs(norm(s) - 1) < 1e-12
    # cos and sin are never both zero, so at most two slots vanish and
    # exactly two structurally
    assert np.count_nonzero(s.as_array()) <= 2


@pytest.mark.parametrize("amps, expected", [
    ((1, 0, 0, 0), 1.0),
    ((0.5, 0.5, 0.5, 0.5), 1.0),
    ((1, 1, 0, 0), math.sqrt(2)),
])
def test_norm(amps, expected):
    assert norm(SingleExcState(*amps)) == pytest.approx(expected, abs=1e-15)


def test_normalized():
    s = SingleExcState(1, 1, 0, 0).normalized()
    assert abs(norm(s) - 1) < 1e-12
    with pytest.raises(InvalidState):
        SingleExcState(1e-10, 0, 0, 0).normalized()


def test_populations():
    assert subsystem_populations(initial_state(PreparedState("AB", math.pi / 6))) == \
        pytest.approx((0.75, 0.25), abs=1e-15)
    assert subsystem_populations(initial_state(PreparedState("ab", math.pi / 4))) == \
        pytest.approx((0.5, 0.5), abs=1e-15)


def test_populations_frozen_under_evolution():
    s0 = initial_state(PreparedState("AB", math.pi / 6))
    params = CouplingParams(1.3, 0.8)
    s = evolve(s0, params, 1.7 / params.g_b)
    assert subsystem_populations(s) == pytest.approx((0.75, 0.25), abs=1e-12)


@given(st.sampled_from(list(BellFamily)), finite_angles,
       st.floats(0.1, 5), st.floats(0.1, 5), st.floats(-50, 50))
def test_populations_invariant(family, theta, ga, gb, t):
    s0 = initial_state(PreparedState(family, theta))
    s = evolve(s0, CouplingParams(ga, gb), t)
    np.testing.assert_allclose(subsystem_populations(s), subsystem_populations(s0), atol=1e-12)


@pytest.mark.parametrize("ga, gb", [(0, 1), (1, 0), (-1, 1), (math.nan, 1)])
def test_params_reject_bad_couplings(ga, gb):
    with pytest.raises(InvalidArgument):
        CouplingParams(ga, gb)


def test_resonance_predicate():
    assert CouplingParams(1, 1, 2.0, 2.0).resonant()
    assert CouplingParams(1, 1, 2.0, 2.0 * (1 + 1e-14)).resonant()
    assert not CouplingParams(1, 1, 2.0, 2.1).resonant()
    assert CouplingParams(1, 1, 0.0, 0.0).resonant()
