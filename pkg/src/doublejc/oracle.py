"""Independent numerical reference for the closed forms.

Two routes, both built from fixed-step classical Runge-Kutta (RK4):

* the four coupled amplitude equations of the single-excitation subspace;
* the full double Jaynes-Cummings Hamiltonian on a truncated Fock space,
  in either the lab or the (resonant) interaction picture.

The generator is time independent, so one RK4 step is a fixed linear map
``P``. It is assembled once by pushing the identity through the four RK4
stages; n steps are then ``P**n`` applied to the state. The result is the
RK4 trajectory itself, not an exponential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidArgument, NumericalFailure, UnsupportedConfiguration
from .model import CouplingParams, SingleExcState

DRIFT_TOL = 1e-9
MAX_STEP = 0.1  # dt * max(g_a, g_b)
DEFAULT_CUTOFF = 2


class Picture(str, Enum):
    LAB = "lab"
    INTERACTION = "interaction"


def default_dt(params: CouplingParams) -> float:
    return 1e-3 / max(params.g_a, params.g_b)


def _check_step(params: CouplingParams, t_final: float, dt: float):
    if not (math.isfinite(t_final) and math.isfinite(dt)):
        raise InvalidArgument("t_final and dt must be finite")
    if t_final < 0:
        raise InvalidArgument(f"t_final must be >= 0, got {t_final}")
    if dt <= 0:
        raise InvalidArgument(f"dt must be positive, got {dt}")
    if dt * max(params.g_a, params.g_b) > MAX_STEP * (1 + 1e-12):
        raise InvalidArgument(
            f"dt*max(g) = {dt * max(params.g_a, params.g_b):.3g} exceeds {MAX_STEP}")


def rk4_step(rhs, y, dt):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)
    return y + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_propagator(h: np.ndarray, dt: float) -> np.ndarray:
    """Matrix of one RK4 step for i d(psi)/dt = H psi."""
    eye = np.eye(h.shape[0], dtype=complex)
    return rk4_step(lambda y: -1j * (h @ y), eye, dt)


def _step_count(t_final: float, dt: float) -> tuple[int, float]:
    """Number of steps and the (<= dt) step that lands exactly on t_final."""
    if t_final == 0:
        return 0, dt
    n = math.ceil(t_final / dt - 1e-9)
    return n, t_final / n


def _check_drift(vec: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(vec)
    if abs(n - 1) > DRIFT_TOL:
        raise NumericalFailure(f"norm drifted to {n:.15g}; reduce dt")
    return vec / n


# -- single-excitation subspace ---------------------------------------------


def subspace_hamiltonian(params: CouplingParams) -> np.ndarray:
    """4x4 generator of the amplitude equations in the (x, y, z, k) basis.

    Includes the detuning on the photon amplitudes, so the resonant case is
    exactly i x' = g_a z, i z' = g_a x, i y' = g_b k, i k' = g_b y.
    """
    ga, gb, det = params.g_a, params.g_b, params.detuning
    return np.array([
        [0, 0, ga, 0],
        [0, 0, 0, gb],
        [ga, 0, det, 0],
        [0, gb, 0, det],
    ], dtype=complex)


def integrate_subspace(state0: SingleExcState, params: CouplingParams,
                       t_final: float, dt: float | None = None) -> SingleExcState:
    dt = default_dt(params) if dt is None else dt
    _check_step(params, t_final, dt)
    n, step = _step_count(t_final, dt)
    if n == 0:
        return state0
    prop = np.linalg.matrix_power(rk4_propagator(subspace_hamiltonian(params), step), n)
    return SingleExcState.from_array(_check_drift(prop @ state0.as_array()))


def subspace_trajectory(state0: SingleExcState, params: CouplingParams,
                        times, dt: float | None = None) -> np.ndarray:
    """RK4 amplitudes on a uniform grid ``times`` (starting at 0); shape (n, 4)."""
    h = subspace_hamiltonian(params)
    return _trajectory(h, state0.as_array(), params, times, dt)


def _trajectory(h, psi0, params, times, dt):
    times = np.asarray(times, dtype=float)
    dt = default_dt(params) if dt is None else dt
    if times.ndim != 1 or times.size < 1 or times[0] != 0:
        raise InvalidArgument("times must be a 1-D grid starting at 0")
    out = np.empty((times.size, psi0.size), dtype=complex)
    out[0] = psi0
    if times.size == 1:
        return out
    spacing = np.diff(times)
    if np.any(spacing <= 0) or np.ptp(spacing) > 1e-9 * spacing[0]:
        raise InvalidArgument("times must be uniformly spaced and increasing")
    _check_step(params, float(times[-1]), dt)
    n, step = _step_count(float(spacing.mean()), dt)
    hop = np.linalg.matrix_power(rk4_propagator(h, step), n)
    psi = psi0
    for i in range(1, times.size):
        psi = hop @ psi
        out[i] = psi
    norms = np.linalg.norm(out, axis=1)
    drift = np.abs(norms - 1).max()
    if drift > DRIFT_TOL:
        raise NumericalFailure(f"norm drift {drift:.3g} along trajectory; reduce dt")
    return out / norms[:, None]


# -- full truncated Fock space ----------------------------------------------


@dataclass(frozen=True)
class FullBasisIndex:
    """Basis label |atom_a, atom_b, n_a, n_b>; atoms use 0 = down, 1 = up."""

    atom_a: int
    atom_b: int
    n_a: int
    n_b: int

    def linear(self, cutoff: int) -> int:
        d = cutoff + 1
        if not (0 <= self.n_a <= cutoff and 0 <= self.n_b <= cutoff):
            raise InvalidArgument(f"photon numbers exceed cutoff {cutoff}")
        return ((self.atom_a * 2 + self.atom_b) * d + self.n_a) * d + self.n_b

    @classmethod
    def from_linear(cls, index: int, cutoff: int) -> FullBasisIndex:
        d = cutoff + 1
        rest, n_b = divmod(index, d)
        atoms, n_a = divmod(rest, d)
        atom_a, atom_b = divmod(atoms, 2)
        if atom_a > 1:
            raise InvalidArgument(f"index {index} out of range for cutoff {cutoff}")
        return cls(atom_a, atom_b, n_a, n_b)


# (x, y, z, k) positions in the product basis
_SUBSPACE_LABELS = (
    FullBasisIndex(1, 0, 0, 0),
    FullBasisIndex(0, 1, 0, 0),
    FullBasisIndex(0, 0, 1, 0),
    FullBasisIndex(0, 0, 0, 1),
)


def full_dim(cutoff: int) -> int:
    return 4 * (cutoff + 1) ** 2


def subspace_indices(cutoff: int) -> np.ndarray:
    return np.array([lab.linear(cutoff) for lab in _SUBSPACE_LABELS])


@dataclass(frozen=True)
class FullStateVector:
    amplitudes: np.ndarray
    cutoff: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (full_dim(self.cutoff),):
            raise InvalidArgument(
                f"expected {full_dim(self.cutoff)} amplitudes for cutoff {self.cutoff}")
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True)
class FullHamiltonian:
    matrix: np.ndarray
    params: CouplingParams
    picture: Picture
    cutoff: int


def _operators(cutoff: int):
    d = cutoff + 1
    lower = np.diag(np.sqrt(np.arange(1, d)), 1).astype(complex)  # a|n> = sqrt(n)|n-1>
    sigma_minus = np.array([[0, 1], [0, 0]], dtype=complex)  # basis (down, up)
    sigma_z = np.diag([-1.0, 1.0]).astype(complex)
    i2, id_ = np.eye(2), np.eye(d)

    def op(atom_a=i2, atom_b=i2, mode_a=id_, mode_b=id_):
        return np.kron(np.kron(np.kron(atom_a, atom_b), mode_a), mode_b)

    return {
        "a": op(mode_a=lower),
        "b": op(mode_b=lower),
        "sm_A": op(atom_a=sigma_minus),
        "sm_B": op(atom_b=sigma_minus),
        "sz_A": op(atom_a=sigma_z),
        "sz_B": op(atom_b=sigma_z),
    }


def build_full_hamiltonian(params: CouplingParams, cutoff: int = DEFAULT_CUTOFF,
                           picture: Picture | str = Picture.LAB) -> FullHamiltonian:
    """Double Jaynes-Cummings Hamiltonian in the product basis A ⊗ B ⊗ a ⊗ b.

    In the interaction picture the free part commutes with the coupling at
    resonance and is dropped; a detuned interaction picture would be time
    dependent and is refused.
    """
    if int(cutoff) != cutoff or cutoff < 1:
        raise InvalidArgument(f"cutoff must be an integer >= 1, got {cutoff}")
    cutoff = int(cutoff)
    picture = Picture(picture)
    ops = _operators(cutoff)
    a, b, sm_a, sm_b = ops["a"], ops["b"], ops["sm_A"], ops["sm_B"]
    coupling = (params.g_a * (a @ sm_a.conj().T + a.conj().T @ sm_a)
                + params.g_b * (b @ sm_b.conj().T + b.conj().T @ sm_b))
    if picture is Picture.INTERACTION:
        if not params.resonant():
            raise UnsupportedConfiguration("interaction picture needs resonance")
        h = coupling
    else:
        free = (0.5 * params.omega_atom * (ops["sz_A"] + ops["sz_B"])
                + params.omega_cavity * (a.conj().T @ a + b.conj().T @ b))
        h = free + coupling
    return FullHamiltonian(h, params, picture, cutoff)


def excitation_operator(cutoff: int) -> np.ndarray:
    """a†a + b†b + (σz_A + σz_B)/2 + 1, diagonal in the product basis."""
    ops = _operators(cutoff)
    a, b = ops["a"], ops["b"]
    eye = np.eye(full_dim(cutoff))
    return a.conj().T @ a + b.conj().T @ b + 0.5 * (ops["sz_A"] + ops["sz_B"]) + eye


def embed(state: SingleExcState, cutoff: int = DEFAULT_CUTOFF) -> FullStateVector:
    if int(cutoff) != cutoff or cutoff < 1:
        raise InvalidArgument(f"cutoff must be an integer >= 1, got {cutoff}")
    amps = np.zeros(full_dim(int(cutoff)), dtype=complex)
    amps[subspace_indices(int(cutoff))] = state.as_array()
    return FullStateVector(amps, int(cutoff))


def project(full: FullStateVector) -> tuple[SingleExcState, float]:
    """Single-excitation amplitudes and the probability found outside them."""
    amps = full.amplitudes[subspace_indices(full.cutoff)]
    total = float(np.vdot(full.amplitudes, full.amplitudes).real)
    leakage = max(0.0, total - float(np.vdot(amps, amps).real))
    return SingleExcState.from_array(amps), leakage


def integrate_full(state0: FullStateVector, h: FullHamiltonian, t_final: float,
                   dt: float | None = None) -> FullStateVector:
    if state0.cutoff != h.cutoff:
        raise InvalidArgument("state and Hamiltonian cutoffs differ")
    dt = default_dt(h.params) if dt is None else dt
    _check_step(h.params, t_final, dt)
    n, step = _step_count(t_final, dt)
    if n == 0:
        return state0
    prop = np.linalg.matrix_power(rk4_propagator(h.matrix, step), n)
    return FullStateVector(_check_drift(prop @ state0.amplitudes), state0.cutoff)


def full_trajectory(state0: FullStateVector, h: FullHamiltonian, times,
                    dt: float | None = None) -> np.ndarray:
    """RK4 amplitudes on a uniform grid ``times`` (starting at 0); shape (n, dim)."""
    if state0.cutoff != h.cutoff:
        raise InvalidArgument("state and Hamiltonian cutoffs differ")
    return _trajectory(h.matrix, state0.amplitudes, h.params, times, dt)
