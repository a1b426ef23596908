"""Entanglement dynamics of two Jaynes-Cummings atoms with one shared excitation."""

from .analysis import (
    PeriodReport, RatioClass, ScanResult, ShiftReport, classify_ratio, count_zeros,
    period, scan, verify_shift_identity,
)
from .closed_form import (
    DressedEigensystem, concurrence_closed, dressed_eigensystem, evolve, q_envelope,
)
from .concurrence import (
    QubitPair, TwoQubitDensity, concurrence_AB_fast, reduce, wootters, wootters_x,
)
from .errors import (
    DoubleJCError, InvalidArgument, InvalidState, NumericalFailure, UnsupportedConfiguration,
)
from .model import (
    BellFamily, CouplingParams, PreparedState, SingleExcState, initial_state, norm,
    subsystem_populations,
)
from .oracle import (
    FullBasisIndex, FullHamiltonian, FullStateVector, Picture, build_full_hamiltonian,
    embed, integrate_full, integrate_subspace, project,
)

__version__ = "0.1.0"
