import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_state
from doublejc.closed_form import evolve
from doublejc.concurrence import (
    QubitPair, TwoQubitDensity, all_concurrences, concurrence_AB_fast, is_x_state, reduce,
    wootters, wootters_eigen, wootters_x,
)
from doublejc.errors import InvalidState
from doublejc.model import CouplingParams, PreparedState, SingleExcState, initial_state

SUBSYSTEMS = "ABab"


def brute_force_reduce(state, pair):
    """Partial trace by explicit summation over the 16 product basis states."""
    amps = {}
    for amp, excited in zip(state.as_array(), range(4)):
        bits = [1, 1, 1, 1]
        bits[excited] = 0
        amps[tuple(bits)] = amp
    keep = [SUBSYSTEMS.index(c) for c in pair]
    rest = [i for i in range(4) if i not in keep]
    rho = np.zeros((4, 4), dtype=complex)
    for row, col in itertools.product(itertools.product((0, 1), repeat=2), repeat=2):
        total = 0
        for env in itertools.product((0, 1), repeat=2):
            ket = [0] * 4
            bra = [0] * 4
            for pos, v in zip(keep, row):
                ket[pos] = v
            for pos, v in zip(keep, col):
                bra[pos] = v
            for pos, v in zip(rest, env):
                ket[pos] = bra[pos] = v
            total += amps.get(tuple(ket), 0) * np.conj(amps.get(tuple(bra), 0))
        rho[row[0] * 2 + row[1], col[0] * 2 + col[1]] = total
    return rho


def test_reduce_bell_pair():
    r = 1 / math.sqrt(2)
    rho = reduce(SingleExcState(r, r, 0, 0), QubitPair.AB).entries
    expected = np.zeros((4, 4))
    expected[1, 1] = expected[2, 2] = expected[1, 2] = expected[2, 1] = 0.5
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_reduce_matches_eq6_structure(rng):
    s = random_state(rng)
    x, y, z, k = s.as_array()
    expected = np.zeros((4, 4), dtype=complex)
    expected[1, 1], expected[2, 2], expected[3, 3] = abs(x) ** 2, abs(y) ** 2, abs(z) ** 2 + abs(k) ** 2
    expected[1, 2], expected[2, 1] = x * np.conj(y), y * np.conj(x)
    np.testing.assert_allclose(reduce(s, "AB").entries, expected, atol=1e-15)


def test_photons_empty_when_atom_excited():
    rho = reduce(SingleExcState(1, 0, 0, 0), "ab").entries
    expected = np.zeros((4, 4))
    expected[3, 3] = 1
    np.testing.assert_array_equal(rho, expected)


def test_reduce_Ab_coherence():
    rho = reduce(SingleExcState(0.5, 0.5, 0.5, 0.5), "Ab").entries
    # basis (↑1, ↑0, ↓1, ↓0): x sits at ↑0, k at ↓1
    assert rho[1, 2] == pytest.approx(0.25)
    np.testing.assert_allclose(rho, brute_force_reduce(SingleExcState(0.5, 0.5, 0.5, 0.5), "Ab"),
                               atol=1e-15)


@pytest.mark.parametrize("pair", list(QubitPair))
def test_reduce_against_brute_force(pair, rng):
    for _ in range(20):
        s = random_state(rng)
        np.testing.assert_allclose(reduce(s, pair).entries, brute_force_reduce(s, pair.value),
                                   atol=1e-14)


def test_reduce_rejects_unnormalized():
    with pytest.raises(InvalidState):
        reduce(SingleExcState(1, 1, 0, 0), "AB")
    with pytest.raises(InvalidState):
        concurrence_AB_fast(SingleExcState(1, 1, 0, 0))


@pytest.mark.parametrize("pair", list(QubitPair))
def test_reduced_states_are_valid_x_states(pair, rng):
    for _ in range(50):
        rho = reduce(random_state(rng), pair)
        rho.validate()
        assert is_x_state(rho)
        assert np.linalg.eigvalsh(rho.entries)[0] >= -1e-10


def test_wootters_examples():
    r = 1 / math.sqrt(2)
    assert wootters(reduce(SingleExcState(r, r, 0, 0), "AB")) == pytest.approx(1, abs=1e-12)
    assert wootters(reduce(initial_state(PreparedState("AB", math.pi / 6)), "AB")) == \
        pytest.approx(math.sin(math.pi / 3), abs=1e-12)
    assert wootters(np.eye(4) / 4) == 0.0


def test_wootters_on_pure_two_qubit_states(rng):
    # pure |psi> = a|00> + b|01> + c|10> + d|11> has C = 2|ad - bc|
    for _ in range(100):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        rho = np.outer(v, v.conj())
        assert wootters(rho) == pytest.approx(2 * abs(v[0] * v[3] - v[1] * v[2]), abs=1e-10)


def test_wootters_on_werner_states():
    # p|Φ+><Φ+| + (1-p) I/4 is entangled iff p > 1/3, with C = (3p - 1)/2
    phi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    for p in np.linspace(0, 1, 11):
        rho = p * np.outer(phi, phi) + (1 - p) * np.eye(4) / 4
        assert wootters(rho) == pytest.approx(max(0, (3 * p - 1) / 2), abs=1e-12)
        assert wootters_x(rho) == pytest.approx(max(0, (3 * p - 1) / 2), abs=1e-12)


def test_general_and_shortcut_agree(rng):
    for _ in range(500):
        s = random_state(rng)
        for pair in QubitPair:
            rho = reduce(s, pair)
            assert abs(wootters(rho) - wootters_x(rho)) < 1e-10
            # textbook eigenvalue route only matches to ~sqrt(eps)
            assert abs(wootters_eigen(rho) - wootters_x(rho)) < 1e-7


def test_fast_path_examples():
    r = 1 / math.sqrt(2)
    assert concurrence_AB_fast(SingleExcState(r, r, 0, 0)) == pytest.approx(1)
    assert concurrence_AB_fast(SingleExcState(0, 0, math.cos(0.4), math.sin(0.4))) == 0
    s = SingleExcState(math.sqrt(3) / 2 * math.cos(1.3), 0.5 * math.cos(2.6),
                       -1j * math.sqrt(3) / 2 * math.sin(1.3), -0.5j * math.sin(2.6))
    expected = 2 * (math.sqrt(3) / 2) * abs(math.cos(1.3)) * 0.5 * abs(math.cos(2.6))
    assert concurrence_AB_fast(s) == pytest.approx(expected, abs=1e-15)
    assert wootters(reduce(s, "AB")) == pytest.approx(expected, abs=1e-12)


@given(st.floats(-3, 3), st.floats(0.1, 4), st.floats(0.1, 4), st.floats(0, 40))
def test_local_family_never_entangles_atoms(theta, ga, gb, t):
    s = evolve(initial_state(PreparedState("Aa", theta)), CouplingParams(ga, gb), t)
    assert s.y == 0 and s.k == 0
    assert concurrence_AB_fast(s) == 0


def test_all_pairs_bounded(rng):
    for _ in range(200):
        for value in all_concurrences(random_state(rng)).values():
            assert 0 <= value <= 1 + 1e-12


def test_pair_concurrence_formula(rng):
    # for every pair the reduced state is |eg>,|ge> coherent plus |gg>: C = 2|amp_P||amp_Q|
    slot = {"A": 0, "B": 1, "a": 2, "b": 3}
    for _ in range(50):
        s = random_state(rng)
        amps = np.abs(s.as_array())
        for pair, value in all_concurrences(s).items():
            p, q = pair.value
            assert value == pytest.approx(2 * amps[slot[p]] * amps[slot[q]], abs=1e-12)


@pytest.mark.parametrize("matrix", [
    np.diag([0.5, 0.5, 0.1, 0.0]),                      # trace 1.1
    np.array([[0.5, 0.1, 0, 0], [0.2, 0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),  # not Hermitian
    np.diag([1.2, -0.2, 0, 0]),                         # negative eigenvalue
])
def test_invalid_density_rejected(matrix):
    with pytest.raises(InvalidState):
        wootters(matrix)


def test_shortcut_refuses_non_x():
    v = np.array([1, 1, 1, 1]) / 2
    with pytest.raises(InvalidState):
        wootters_x(np.outer(v, v))
    with pytest.raises(InvalidState):
        TwoQubitDensity(np.eye(3))
