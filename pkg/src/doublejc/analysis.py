"""Periodicity, zero structure and phase-shift relations of the atomic concurrence."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from . import oracle
from .closed_form import envelope_factors, q_envelope
from .concurrence import QubitPair, reduce, wootters
from .errors import InvalidArgument, UnsupportedConfiguration
from .model import BellFamily, CouplingParams, PreparedState, initial_state

DEFAULT_TOL = 1e-9
DEFAULT_MAX_DEN = 64
ZERO_DEDUP_RTOL = 1e-12
PERIOD_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class RatioClass:
    """Numerical verdict on whether g_a/g_b is rational.

    ``p/q`` is the best approximation with ``q <= max_den`` and ``residual``
    its relative error, reported whether or not it passed ``tolerance``.
    """

    rational: bool
    p: int
    q: int
    residual: float
    tolerance: float

    @property
    def integer(self) -> bool:
        return self.rational and self.q == 1

    def label(self) -> str:
        return f"{self.p}/{self.q}" if self.rational else "irrational"


@dataclass
class PeriodReport:
    ratio: RatioClass
    period: float | None = None
    minimal_period: float | None = None
    zeros: list[float] | None = None
    zero_count: int | None = None
    identically_zero: bool = False
    law_verdict: str = "not-applicable"

    def as_dict(self) -> dict:
        return {
            "ratio": self.ratio.label(),
            "period": self.period,
            "minimal_period": self.minimal_period,
            "zeros": self.zeros,
            "zero_count": self.zero_count,
            "identically_zero": self.identically_zero,
            "law_verdict": self.law_verdict,
            "residual": self.ratio.residual,
        }


@dataclass
class ScanResult:
    family: BellFamily
    theta: float
    params: CouplingParams
    times: np.ndarray
    values: np.ndarray
    mode: str = "closed"


def classify_ratio(params: CouplingParams, tol: float = DEFAULT_TOL,
                   max_den: int = DEFAULT_MAX_DEN) -> RatioClass:
    if not tol > 0:
        raise InvalidArgument(f"tol must be positive, got {tol}")
    if max_den < 1:
        raise InvalidArgument(f"max_den must be >= 1, got {max_den}")
    r = params.g_a / params.g_b
    # limit_denominator walks the continued-fraction convergents
    best = Fraction(r).limit_denominator(max_den)
    p, q = best.numerator, best.denominator
    residual = abs(r - p / q) / r
    return RatioClass(rational=p >= 1 and residual <= tol, p=p, q=q,
                      residual=residual, tolerance=tol)


def revival_period(params: CouplingParams, ratio: RatioClass | None = None) -> float | None:
    """Common multiple p·π/g_a = q·π/g_b of the two Rabi cycles, if any."""
    ratio = ratio or classify_ratio(params)
    return ratio.p * math.pi / params.g_a if ratio.rational else None


def _is_trivial(family: BellFamily, theta: float) -> bool:
    return envelope_factors(family) is None or abs(math.sin(2 * theta)) < 1e-15


def shift_mismatch(family: BellFamily, theta: float, params: CouplingParams,
                   shift: float, span: float, n_points: int = 10_000,
                   other: BellFamily | None = None) -> float:
    """max |Q_family(t + shift) - Q_other(t)| on a grid over [0, span)."""
    t = np.linspace(0.0, span, n_points, endpoint=False)
    other = family if other is None else other
    return float(np.max(np.abs(q_envelope(family, theta, params, t + shift)
                               - q_envelope(other, theta, params, t))))


def minimal_period(family: BellFamily, theta: float, params: CouplingParams,
                   period_: float, max_divisor: int = 64,
                   n_points: int = 10_000) -> float | None:
    """Smallest T/j (j <= max_divisor) that still repeats the envelope on the grid."""
    if _is_trivial(family, theta):
        return None
    best = period_
    for j in range(2, max_divisor + 1):
        cand = period_ / j
        if shift_mismatch(family, theta, params, cand, period_, n_points) < PERIOD_MATCH_TOL:
            best = cand
    return best


def period(params: CouplingParams, family: BellFamily = BellFamily.AB,
           theta: float = math.pi / 4, tol: float = DEFAULT_TOL,
           max_den: int = DEFAULT_MAX_DEN) -> PeriodReport:
    ratio = classify_ratio(params, tol, max_den)
    family = BellFamily(family)
    report = PeriodReport(ratio, identically_zero=_is_trivial(family, theta))
    if ratio.rational:
        report.period = revival_period(params, ratio)
        report.minimal_period = minimal_period(family, theta, params, report.period)
    return report


def aperiodicity_witness(params: CouplingParams, family: BellFamily = BellFamily.AB,
                         theta: float = math.pi / 4, m_max: int = 20,
                         span: float | None = None,
                         n_points: int = 200_000) -> dict[int, float]:
    """Mismatch max|Q(t + mπ/g_b) - Q(t)| for each candidate period m = 1..m_max."""
    span = 40 * math.pi / params.g_b if span is None else span
    return {m: shift_mismatch(family, theta, params, m * math.pi / params.g_b, span, n_points)
            for m in range(1, m_max + 1)}


def _factor_zeros(factor, g: float, horizon: float) -> np.ndarray:
    offset = 0.5 if factor is np.cos else 0.0
    j = np.arange(0, math.ceil(horizon * g / math.pi) + 1)
    return (j + offset) * math.pi / g


def lattice_zeros(family: BellFamily, params: CouplingParams, horizon: float) -> list[float]:
    """Zeros of the envelope in [0, horizon): union of the two factors' zero lattices."""
    factors = envelope_factors(family)
    if factors is None:
        raise UnsupportedConfiguration(f"family {family} has identically zero concurrence")
    f, h = factors
    cands = np.concatenate([_factor_zeros(f, params.g_a, horizon),
                            _factor_zeros(h, params.g_b, horizon)])
    dedup = ZERO_DEDUP_RTOL * horizon
    cands = np.sort(cands[cands < horizon - dedup])
    zeros: list[float] = []
    for t in cands:
        if not zeros or t - zeros[-1] > dedup:
            zeros.append(float(t))
    return zeros


def brute_force_zeros(family: BellFamily, params: CouplingParams, horizon: float,
                      n_points: int = 100_000, zero_tol: float = 1e-9) -> list[float]:
    """Zeros of the envelope found without the lattice formula.

    The envelope never changes sign, so candidates are periodic local minima
    of Q on a uniform grid over [0, horizon), each refined by a bounded scalar
    minimization of Q**2 and kept if the refined Q is below ``zero_tol``.
    """
    family = BellFamily(family)
    if envelope_factors(family) is None:
        raise UnsupportedConfiguration(f"family {family} has identically zero concurrence")
    theta = math.pi / 4
    t = np.linspace(0.0, horizon, n_points, endpoint=False)
    q = q_envelope(family, theta, params, t)
    step = horizon / n_points
    local_min = (q <= np.roll(q, 1)) & (q <= np.roll(q, -1))
    found: list[float] = []
    for i in np.flatnonzero(local_min):
        if q[i] == 0.0:
            found.append(float(t[i]))
            continue
        # Q**2 is smooth at a simple zero, Q itself has a kink
        res = minimize_scalar(lambda s: q_envelope(family, theta, params, s) ** 2,
                              bounds=(t[i] - step, t[i] + step), method="bounded",
                              options={"xatol": 1e-14 * max(1.0, horizon)})
        if math.sqrt(res.fun) < zero_tol:
            found.append(float(res.x) % horizon)
    found.sort()
    dedup = 1e-7 * horizon
    zeros: list[float] = []
    for z in found:
        if not zeros or z - zeros[-1] > dedup:
            zeros.append(z)
    if len(zeros) > 1 and horizon - zeros[-1] + zeros[0] <= dedup:
        zeros.pop()  # same zero seen from both ends of the periodic grid
    return zeros


def zero_law_expectation(n: int) -> int:
    """Zeros per period of the AB envelope for integer ratio n."""
    return n if n % 2 else n + 1


def count_zeros(family: BellFamily, params: CouplingParams, tol: float = DEFAULT_TOL,
                max_den: int = DEFAULT_MAX_DEN) -> PeriodReport:
    family = BellFamily(family)
    ratio = classify_ratio(params, tol, max_den)
    if not ratio.rational:
        raise UnsupportedConfiguration(
            f"g_a/g_b = {params.ratio!r} classified irrational; no period to count over")
    T = revival_period(params, ratio)
    report = PeriodReport(ratio, period=T)
    if envelope_factors(family) is None:
        report.identically_zero = True
        return report
    report.zeros = lattice_zeros(family, params, T)
    report.zero_count = len(report.zeros)
    if family is BellFamily.AB and ratio.integer:
        ok = report.zero_count == zero_law_expectation(ratio.p)
        report.law_verdict = "holds" if ok else "violated"
    return report


# predicted pairings Q_left(t + π/(2 g_b)) = Q_right(t)
ODD_PAIRS = ((BellFamily.AB, BellFamily.ab), (BellFamily.Ab, BellFamily.Ba))
EVEN_PAIRS = ((BellFamily.AB, BellFamily.Ab), (BellFamily.ab, BellFamily.Ba))
IDENTITY_TOL = 1e-12


@dataclass
class ShiftReport:
    n: int
    theta: float
    shift: float
    parity: str
    mismatches: dict[str, float] = field(default_factory=dict)
    predicted: tuple[str, ...] = ()
    holds: bool = False

    @property
    def opposite(self) -> tuple[str, ...]:
        return tuple(k for k in self.mismatches if k not in self.predicted)


def verify_shift_identity(params: CouplingParams, theta: float,
                          n_points: int = 10_000, tol: float = DEFAULT_TOL,
                          max_den: int = DEFAULT_MAX_DEN) -> ShiftReport:
    """Check the quarter-Rabi-cycle shift relations between envelope families.

    For integer n = g_a/g_b and shift π/(2 g_b): odd n predicts AB→ab and
    Ab→Ba, even n predicts AB→Ab and ab→Ba. All four mismatches are
    measured over one period.
    """
    ratio = classify_ratio(params, tol, max_den)
    if not ratio.integer:
        raise UnsupportedConfiguration(
            f"shift relations need an integer ratio g_a/g_b, got {ratio.label()}")
    n = ratio.p
    shift = math.pi / (2 * params.g_b)
    span = math.pi / params.g_b
    report = ShiftReport(n, theta, shift, "odd" if n % 2 else "even")
    for left, right in ODD_PAIRS + EVEN_PAIRS:
        key = f"{left}->{right}"
        report.mismatches[key] = shift_mismatch(left, theta, params, shift, span,
                                                n_points, other=right)
    pairs = ODD_PAIRS if n % 2 else EVEN_PAIRS
    report.predicted = tuple(f"{l}->{r}" for l, r in pairs)
    report.holds = all(report.mismatches[k] < IDENTITY_TOL for k in report.predicted)
    return report


def scan(family: BellFamily, theta: float, params: CouplingParams, t_max: float,
         n_points: int, mode: str = "closed", cutoff: int = oracle.DEFAULT_CUTOFF,
         dt: float | None = None) -> ScanResult:
    """Atomic concurrence on the uniform grid [0, t_max] with n_points samples.

    ``mode="oracle"`` evolves the embedded state with the lab-frame full
    Hamiltonian and goes through partial trace and Wootters concurrence; it
    also accepts detuned parameters.
    """
    family = BellFamily(family)
    if n_points < 2 or int(n_points) != n_points:
        raise InvalidArgument(f"n_points must be an integer >= 2, got {n_points}")
    if not (math.isfinite(t_max) and t_max > 0):
        raise InvalidArgument(f"t_max must be positive, got {t_max}")
    if not math.isfinite(theta):
        raise InvalidArgument(f"theta must be finite, got {theta}")
    times = np.linspace(0.0, t_max, int(n_points))
    if mode == "closed":
        values = q_envelope(family, theta, params, times)
    elif mode == "oracle":
        psi0 = initial_state(PreparedState(family, theta))
        h = oracle.build_full_hamiltonian(params, cutoff, oracle.Picture.LAB)
        traj = oracle.full_trajectory(oracle.embed(psi0, cutoff), h, times, dt)
        values = np.empty(times.size)
        for i, amps in enumerate(traj):
            sub, _ = oracle.project(oracle.FullStateVector(amps, cutoff))
            values[i] = wootters(reduce(sub, QubitPair.AB))
    else:
        raise InvalidArgument(f"mode must be 'closed' or 'oracle', got {mode!r}")
    return ScanResult(family, float(theta), params, times, np.asarray(values), mode)
