"""Two-qubit reduced states and the Wootters concurrence.

The four subsystems are ordered (A, B, a, b). Each is a qubit in the
single-excitation subspace, with local index 0 for the excited/occupied
level and 1 for the ground/empty level, so pair bases read
{|ee>, |eg>, |ge>, |gg>} (e.g. {up-up, up-down, down-up, down-down}).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidArgument, InvalidState, NumericalFailure
from .model import SingleExcState, norm

STATE_NORM_TOL = 1e-9
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NEG_EIG_TOL = 1e-10
X_STATE_TOL = 1e-12

_SUBSYSTEM = {"A": 0, "B": 1, "a": 2, "b": 3}
# position of the excited subsystem for each amplitude x, y, z, k
_EXCITED = (0, 1, 2, 3)

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


class QubitPair(str, Enum):
    AB = "AB"
    ab = "ab"
    Aa = "Aa"
    Bb = "Bb"
    Ab = "Ab"
    Ba = "Ba"

    @classmethod
    def parse(cls, tag: str) -> QubitPair:
        try:
            return cls(tag)
        except ValueError:
            raise InvalidArgument(f"unknown qubit pair {tag!r}") from None

    @property
    def subsystems(self) -> tuple[int, int]:
        return _SUBSYSTEM[self.value[0]], _SUBSYSTEM[self.value[1]]

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TwoQubitDensity:
    entries: np.ndarray
    pair: QubitPair | None = None

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (4, 4):
            raise InvalidState(f"expected a 4x4 matrix, got shape {m.shape}")
        object.__setattr__(self, "entries", m)

    def validate(self) -> TwoQubitDensity:
        m = self.entries
        herm_err = np.max(np.abs(m - m.conj().T))
        if herm_err > HERMITIAN_TOL:
            raise InvalidState(f"density matrix not Hermitian (deviation {herm_err:.3g})")
        tr = np.trace(m)
        if abs(tr - 1) > TRACE_TOL:
            raise InvalidState(f"density matrix trace {tr.real:.15g} != 1")
        lowest = np.linalg.eigvalsh(m)[0]
        if lowest < -NEG_EIG_TOL:
            raise InvalidState(f"density matrix has negative eigenvalue {lowest:.3g}")
        return self


def embed_qubits(state: SingleExcState) -> np.ndarray:
    """The state as a (2, 2, 2, 2) tensor over (A, B, a, b)."""
    psi = np.zeros((2, 2, 2, 2), dtype=complex)
    for amp, excited in zip(state.as_array(), _EXCITED):
        idx = [1, 1, 1, 1]
        idx[excited] = 0
        psi[tuple(idx)] = amp
    return psi


def reduce(state: SingleExcState, pair: QubitPair) -> TwoQubitDensity:
    """Partial trace of |psi><psi| over the two subsystems outside ``pair``."""
    pair = QubitPair(pair)
    n = norm(state)
    if abs(n - 1) > STATE_NORM_TOL:
        raise InvalidState(f"state must be normalized, norm is {n:.15g}")
    p, q = pair.subsystems
    psi = np.moveaxis(embed_qubits(state), (p, q), (0, 1)).reshape(4, 4)
    rho = psi @ psi.conj().T
    return TwoQubitDensity(rho, pair)


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, TwoQubitDensity):
        return rho.validate().entries
    return TwoQubitDensity(rho).validate().entries


def wootters(rho) -> float:
    """Concurrence max(0, s1 - s2 - s3 - s4) of a two-qubit density matrix.

    The s_i are the square roots of the eigenvalues of rho·(Y⊗Y)·rho*·(Y⊗Y).
    They are obtained as singular values of ``Wᵀ (Y⊗Y) W`` with
    ``rho = W W†``, which gives the same numbers without taking square roots
    of eigenvalues that rounding has pushed to ~1e-17.
    """
    m = _as_matrix(rho)
    w, u = np.linalg.eigh(m)
    if w[0] < -NEG_EIG_TOL:
        raise NumericalFailure(f"negative eigenvalue {w[0]:.3g} in density matrix")
    w = np.clip(w, 0.0, None)
    # below this the eigenvalue is rounding noise from a rank-deficient matrix
    keep = w > 16 * np.finfo(float).eps * max(w[-1], 1.0)
    factor = u[:, keep] * np.sqrt(w[keep])
    tau = factor.T @ SPIN_FLIP @ factor
    s = np.zeros(4)
    if tau.size:
        sv = np.linalg.svd(tau, compute_uv=False)
        s[: sv.size] = sv
    s = np.sort(s)[::-1]
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def wootters_eigen(rho) -> float:
    """Textbook route: square roots of the eigenvalues of the spin-flipped product.

    Kept for cross-checks; loses accuracy (~1e-8) on rank-deficient inputs.
    """
    m = _as_matrix(rho)
    flipped = SPIN_FLIP @ m.conj() @ SPIN_FLIP
    lam = np.sort(np.linalg.eigvals(m @ flipped).real)[::-1]
    if lam[-1] < -NEG_EIG_TOL:
        raise NumericalFailure(f"spin-flipped product has eigenvalue {lam[-1]:.3g}")
    s = np.sqrt(np.clip(lam, 0.0, None))
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def is_x_state(rho, tol: float = X_STATE_TOL) -> bool:
    m = rho.entries if isinstance(rho, TwoQubitDensity) else np.asarray(rho)
    mask = np.ones((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = False
    mask[np.arange(4), 3 - np.arange(4)] = False
    return bool(np.all(np.abs(m[mask]) <= tol))


def wootters_x(rho) -> float:
    """Closed-form concurrence of an X-shaped density matrix."""
    m = _as_matrix(rho)
    if not is_x_state(m):
        raise InvalidState("matrix has entries off the diagonal and anti-diagonal")
    d = m.diagonal().real.clip(0.0, None)
    c1 = abs(m[1, 2]) - np.sqrt(d[0] * d[3])
    c2 = abs(m[0, 3]) - np.sqrt(d[1] * d[2])
    return float(2 * max(0.0, c1, c2))


def concurrence_AB_fast(state: SingleExcState) -> float:
    """Atom-atom concurrence 2|x||y| of a normalized single-excitation state."""
    n = norm(state)
    if abs(n - 1) > STATE_NORM_TOL:
        raise InvalidState(f"state must be normalized, norm is {n:.15g}")
    return 2 * abs(state.x) * abs(state.y)


def all_concurrences(state: SingleExcState) -> dict[QubitPair, float]:
    """Concurrence of every one of the six pairs, via the general route."""
    return {pair: wootters(reduce(state, pair)) for pair in QubitPair}
