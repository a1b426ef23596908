"""Exact resonant evolution in the single-excitation subspace.

Everything here is in the interaction picture and requires
``params.resonant()``; detuned dynamics are only available through
:mod:`doublejc.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedConfiguration
from .model import BellFamily, CouplingParams, SingleExcState

_CROSS_TOL = 1e-12


def _require_resonance(params: CouplingParams):
    if not params.resonant():
        raise UnsupportedConfiguration(
            f"closed forms need omega_atom == omega_cavity, got "
            f"{params.omega_atom} vs {params.omega_cavity}")


@dataclass(frozen=True)
class DressedEigensystem:
    eigenvalues: np.ndarray
    eigenvectors: tuple[SingleExcState, ...]

    def matrix(self) -> np.ndarray:
        """Eigenvectors as columns, in the (x, y, z, k) basis."""
        return np.column_stack([v.as_array() for v in self.eigenvectors])


def dressed_eigensystem(params: CouplingParams) -> DressedEigensystem:
    """Dressed states (|up 0> +- |down 1>)/sqrt(2) of each cavity, energies +-g."""
    _require_resonance(params)
    s = 1 / np.sqrt(2)
    eigenvalues = np.array([params.g_a, -params.g_a, params.g_b, -params.g_b])
    eigenvectors = (
        SingleExcState(s, 0, s, 0),
        SingleExcState(s, 0, -s, 0),
        SingleExcState(0, s, 0, s),
        SingleExcState(0, s, 0, -s),
    )
    return DressedEigensystem(eigenvalues, eigenvectors)


def evolve_amplitudes(state0: SingleExcState, params: CouplingParams, t) -> np.ndarray:
    """Amplitudes at time(s) ``t``; shape ``(4,)`` for scalar t, ``(n, 4)`` otherwise."""
    _require_resonance(params)
    t = np.asarray(t, dtype=float)
    ca, sa = np.cos(params.g_a * t), np.sin(params.g_a * t)
    cb, sb = np.cos(params.g_b * t), np.sin(params.g_b * t)
    x0, y0, z0, k0 = state0.as_array()
    x = x0 * ca - 1j * z0 * sa
    y = y0 * cb - 1j * k0 * sb
    z = z0 * ca - 1j * x0 * sa
    k = k0 * cb - 1j * y0 * sb
    return np.stack([x, y, z, k], axis=-1)


def evolve(state0: SingleExcState, params: CouplingParams, t: float) -> SingleExcState:
    return SingleExcState.from_array(evolve_amplitudes(state0, params, float(t)))


_ENVELOPE_FACTORS = {
    # (factor in g_a t, factor in g_b t)
    BellFamily.AB: (np.cos, np.cos),
    BellFamily.ab: (np.sin, np.sin),
    BellFamily.Ab: (np.cos, np.sin),
    BellFamily.Ba: (np.sin, np.cos),
}


def envelope_factors(family: BellFamily):
    """The two trigonometric factors of the concurrence envelope, or None if it vanishes."""
    return _ENVELOPE_FACTORS.get(BellFamily(family))


def q_envelope(family: BellFamily, theta: float, params: CouplingParams, t):
    """Atomic concurrence for a partial-Bell initial state, analytically.

    ``|sin 2θ| · |f(g_a t) · h(g_b t)|`` with f, h in {cos, sin} picked by the
    family. Aa and Bb keep one atom in its ground state, so they give 0.
    Scalar t returns a float, array t an array.
    """
    _require_resonance(params)
    family = BellFamily(family)
    t_arr = np.asarray(t, dtype=float)
    factors = envelope_factors(family)
    if factors is None:
        out = np.zeros_like(t_arr)
    else:
        f, h = factors
        out = np.abs(np.sin(2 * theta) * f(params.g_a * t_arr) * h(params.g_b * t_arr))
    return float(out) if out.ndim == 0 else out


def amplitude_moduli(state0: SingleExcState, params: CouplingParams, t):
    """|x(t)| and |y(t)| from the moduli of the initial amplitudes.

    Exact only when the x/z and y/k interference terms vanish, i.e.
    Im(x0 z0*) = Im(y0 k0*) = 0. That holds for every partial-Bell state and
    any real initial amplitudes; other inputs are refused.
    """
    _require_resonance(params)
    x0, y0, z0, k0 = state0.as_array()
    if abs((x0 * np.conj(z0)).imag) > _CROSS_TOL or abs((y0 * np.conj(k0)).imag) > _CROSS_TOL:
        raise UnsupportedConfiguration(
            "moduli formula needs Im(x0 z0*) = Im(y0 k0*) = 0; "
            "evolve the state and use the concurrence module instead")
    t = np.asarray(t, dtype=float)
    ca2, sa2 = np.cos(params.g_a * t) ** 2, np.sin(params.g_a * t) ** 2
    cb2, sb2 = np.cos(params.g_b * t) ** 2, np.sin(params.g_b * t) ** 2
    mod_x = np.sqrt(abs(x0) ** 2 * ca2 + abs(z0) ** 2 * sa2)
    mod_y = np.sqrt(abs(y0) ** 2 * cb2 + abs(k0) ** 2 * sb2)
    return mod_x, mod_y


def concurrence_closed(state0: SingleExcState, params: CouplingParams, t):
    mod_x, mod_y = amplitude_moduli(state0, params, t)
    out = 2 * mod_x * mod_y
    return float(out) if np.ndim(out) == 0 else out
