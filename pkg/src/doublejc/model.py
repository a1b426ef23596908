"""Physical parameters, the single-excitation state and partial-Bell initial states.

Basis of the single-excitation subspace, written |A B a b>::

    x -> |up, down, 0, 0>    (atom A excited)
    y -> |down, up, 0, 0>    (atom B excited)
    z -> |down, down, 1, 0>  (photon in cavity a)
    k -> |down, down, 0, 1>  (photon in cavity b)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidArgument, InvalidState

NORM_TOL = 1e-12
MIN_NORM = 1e-9
RESONANCE_RTOL = 1e-12


@dataclass(frozen=True)
class CouplingParams:
    """Couplings and bare frequencies of the double Jaynes-Cummings Hamiltonian.

    All quantities are angular frequencies (rad per unit time). The free
    frequencies only matter for the full-space oracle; the closed forms work in
    the interaction picture and need ``resonant()``.
    """

    g_a: float
    g_b: float
    omega_atom: float = 1.0
    omega_cavity: float = 1.0
    resonance_rtol: float = RESONANCE_RTOL

    def __post_init__(self):
        for name in ("g_a", "g_b", "omega_atom", "omega_cavity"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidArgument(f"{name} must be finite, got {value!r}")
        if self.g_a <= 0 or self.g_b <= 0:
            raise InvalidArgument(
                f"couplings must be positive, got g_a={self.g_a}, g_b={self.g_b}")

    def resonant(self) -> bool:
        scale = max(abs(self.omega_atom), abs(self.omega_cavity))
        return abs(self.omega_atom - self.omega_cavity) <= self.resonance_rtol * scale

    @property
    def detuning(self) -> float:
        return self.omega_cavity - self.omega_atom

    @property
    def ratio(self) -> float:
        return self.g_a / self.g_b


@dataclass(frozen=True)
class SingleExcState:
    """Amplitudes (x, y, z, k) of a pure state with exactly one excitation.

    Construction stores the amplitudes as given; use :meth:`normalized` to
    project onto the unit sphere.
    """

    x: complex
    y: complex
    z: complex
    k: complex

    def __post_init__(self):
        for name in ("x", "y", "z", "k"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_array(cls, amps) -> SingleExcState:
        amps = np.asarray(amps, dtype=complex)
        if amps.shape != (4,):
            raise InvalidArgument(f"expected 4 amplitudes, got shape {amps.shape}")
        return cls(*amps.tolist())

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.k], dtype=complex)

    def normalized(self) -> SingleExcState:
        n = norm(self)
        if n < MIN_NORM:
            raise InvalidState(f"state norm {n:.3g} is too small to normalize")
        if abs(n - 1.0) <= NORM_TOL:
            return self
        return SingleExcState.from_array(self.as_array() / n)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(norm(self) - 1.0) <= tol


class BellFamily(str, Enum):
    """The six two-party partial Bell families that seed the dynamics."""

    AB = "AB"
    ab = "ab"
    Aa = "Aa"
    Bb = "Bb"
    Ab = "Ab"
    Ba = "Ba"

    @classmethod
    def parse(cls, tag: str) -> BellFamily:
        try:
            return cls(tag)
        except ValueError:
            raise InvalidArgument(
                f"unknown family {tag!r}; expected one of "
                f"{', '.join(f.value for f in cls)}") from None

    def __str__(self):
        return self.value


# slot (0..3 -> x, y, z, k) carrying cos(theta) and sin(theta) respectively
_FAMILY_SLOTS = {
    BellFamily.AB: (0, 1),
    BellFamily.ab: (2, 3),
    BellFamily.Aa: (0, 2),
    BellFamily.Bb: (1, 3),
    BellFamily.Ab: (0, 3),
    BellFamily.Ba: (1, 2),
}


@dataclass(frozen=True)
class PreparedState:
    family: BellFamily
    theta: float

    def __post_init__(self):
        if not isinstance(self.family, BellFamily):
            object.__setattr__(self, "family", BellFamily.parse(self.family))


def family_slots(family: BellFamily) -> tuple[int, int]:
    """Indices into (x, y, z, k) of the cos- and sin-weighted amplitudes."""
    return _FAMILY_SLOTS[BellFamily(family)]


def initial_state(prep: PreparedState) -> SingleExcState:
    """cos(theta)|first> + sin(theta)|second> for the chosen pair of subsystems."""
    theta = float(prep.theta)
    if not math.isfinite(theta):
        raise InvalidArgument(f"theta must be finite, got {theta!r}")
    amps = np.zeros(4, dtype=complex)
    i, j = family_slots(prep.family)
    amps[i] = math.cos(theta)
    amps[j] = math.sin(theta)
    return SingleExcState.from_array(amps)


def norm(state: SingleExcState) -> float:
    return float(np.linalg.norm(state.as_array()))


def subsystem_populations(state: SingleExcState) -> tuple[float, float]:
    """Excitation probability held by the A/a and by the B/b Jaynes-Cummings pair."""
    p_a = abs(state.x) ** 2 + abs(state.z) ** 2
    p_b = abs(state.y) ** 2 + abs(state.k) ** 2
    return p_a, p_b
