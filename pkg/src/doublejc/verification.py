"""Self-check suites run by ``doublejc verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analysis, oracle
from .closed_form import evolve_amplitudes, q_envelope
from .model import BellFamily, CouplingParams, PreparedState, initial_state, subsystem_populations

NONTRIVIAL = (BellFamily.AB, BellFamily.ab, BellFamily.Ab, BellFamily.Ba)
THETAS = (math.pi / 12, math.pi / 6, math.pi / 4)


@dataclass
class Check:
    name: str
    error: float
    tol: float
    # "<": pass if error < tol; ">": pass if error > tol (separation checks)
    sense: str = "<"

    @property
    def passed(self) -> bool:
        return self.error < self.tol if self.sense == "<" else self.error > self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} max_error={self.error:.3e} (needs {self.sense} {self.tol:g})"


def oracle_suite(params: CouplingParams, dt: float | None = None,
                 cutoff: int = oracle.DEFAULT_CUTOFF, n_points: int = 2001) -> list[Check]:
    """Closed form against RK4 on the subspace and against the full-space pipeline."""
    t_max = 20 * math.pi / min(params.g_a, params.g_b)
    times = np.linspace(0.0, t_max, n_points)
    checks = []
    amp_err = 0.0
    for fam in BellFamily:
        for theta in THETAS:
            psi0 = initial_state(PreparedState(fam, theta))
            numeric = oracle.subspace_trajectory(psi0, params, times, dt)
            amp_err = max(amp_err, float(np.abs(numeric - evolve_amplitudes(psi0, params, times)).max()))
    checks.append(Check("subspace_amplitudes", amp_err, 1e-8))
    conc_err = 0.0
    for fam in NONTRIVIAL:
        theta = math.pi / 6
        res = analysis.scan(fam, theta, params, t_max, n_points, mode="oracle",
                            cutoff=cutoff, dt=dt)
        conc_err = max(conc_err, float(np.abs(res.values - q_envelope(fam, theta, params, times)).max()))
    checks.append(Check("full_space_concurrence", conc_err, 1e-7))
    return checks


def shift_suite(params: CouplingParams, thetas=(math.pi / 6, math.pi / 12)) -> list[Check]:
    checks = []
    for theta in thetas:
        rep = analysis.verify_shift_identity(params, theta)
        label = f"n={rep.n},theta={theta:.6g}"
        for key in rep.predicted:
            checks.append(Check(f"shift[{label}] {key}", rep.mismatches[key],
                                analysis.IDENTITY_TOL))
        for key in rep.opposite:
            checks.append(Check(f"separation[{label}] {key}", rep.mismatches[key], 0.1, ">"))
    return checks


def conservation_suite(params: CouplingParams, cutoff: int = 3, dt: float | None = None,
                       n_points: int = 501) -> list[Check]:
    """Excitation number, sector leakage and per-cavity populations along lab-frame runs."""
    t_max = 4 * math.pi / min(params.g_a, params.g_b)
    times = np.linspace(0.0, t_max, n_points)
    h = oracle.build_full_hamiltonian(params, cutoff, oracle.Picture.LAB)
    number = np.diag(oracle.excitation_operator(cutoff)).real
    idx = oracle.subspace_indices(cutoff)
    leak = drift = pop = 0.0
    for fam in BellFamily:
        psi0 = initial_state(PreparedState(fam, math.pi / 6))
        traj = oracle.full_trajectory(oracle.embed(psi0, cutoff), h, times, dt)
        probs = np.abs(traj) ** 2
        n_mean = probs @ number
        drift = max(drift, float(np.abs(n_mean - n_mean[0]).max()))
        inside = probs[:, idx].sum(axis=1)
        leak = max(leak, float(np.abs(probs.sum(axis=1) - inside).max()))
        sub = traj[:, idx]
        p_a = np.abs(sub[:, 0]) ** 2 + np.abs(sub[:, 2]) ** 2
        pop = max(pop, float(np.abs(p_a - subsystem_populations(psi0)[0]).max()))
    return [Check("excitation_number_drift", drift, 1e-9),
            Check("sector_leakage", leak, 1e-10),
            Check("subsystem_population", pop, 1e-9)]


SUITES = ("oracle", "shift", "conservation")
