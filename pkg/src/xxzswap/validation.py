"""Cross-checks of every closed form against the brute-force oracle.

Used by ``xxzswap validate``. Each check reports the worst observed value
and the tolerance it must stay under.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import evolution
from .field_error import error_report, field_swap_time, rho_up_simple
from .numeric_oracle import evolve_numeric, swap_error_numeric
from .qlinalg import State2
from .sampling import random_params, random_qubit
from .swap_analysis import (
    OpKind,
    phase_factor,
    rational_approx,
    swap_fidelity,
    swap_times,
    tau,
    tau_grid_floor,
)
from .xxz_model import ModelParams, build_hamiltonian, eigensystem

ODD_LAMBDAS = (1.0, 1 / 3, 3 / 5, 5 / 7)
EVEN_LAMBDAS = (0.5, 2 / 3, 0.25)
BOUND_DELTAS = (0.05, 0.1, 0.2)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)


def check_eigensystem(rng, trials):
    residual = ortho = 0.0
    for _ in range(trials):
        p = random_params(rng)
        h, es = build_hamiltonian(p), eigensystem(p)
        for e, psi in zip(es.energies, es.states):
            residual = max(residual, float(np.linalg.norm(h @ psi - e * psi)))
        ortho = max(ortho, float(np.max(np.abs(es.states.conj() @ es.states.T - np.eye(4)))))
    return [Check("eigen_residual", residual, 1e-10), Check("eigen_orthonormality", ortho, 1e-12)]


def check_analytic_vs_oracle(rng, trials):
    worst = 0.0
    for _ in range(trials):
        a, b, p = random_qubit(rng, True), random_qubit(rng, True), random_params(rng)
        t = rng.uniform(0.0, 10.0)
        analytic = evolution.reduced_density_first(a, b, p, t).matrix
        worst = max(worst, float(np.max(np.abs(analytic - evolve_numeric(a, b, p, t).reduced.matrix))))
    return [Check("analytic_vs_oracle", worst, 1e-9)]


def check_swaps(rng, trials):
    xxx = odd = 0.0
    for B in (0.0, 1.3):
        p = ModelParams(J=1.0, lam=1.0, B=B)
        t = math.pi / 2
        for _ in range(trials):
            a, b = random_qubit(rng, True), random_qubit(rng, True)
            xxx = max(xxx, 1 - swap_fidelity(a, b, p, t, np.exp(1j * B * t)))
    for lam in ODD_LAMBDAS[1:]:
        r = rational_approx(lam)
        p = ModelParams(J=1.0, lam=lam, B=0.7)
        for k in (1, 2):
            t = swap_times(p, r, k)
            phase = phase_factor(r, k, OpKind.SWAP, p.B, t)
            for _ in range(max(1, trials // 10)):
                a, b = random_qubit(rng, True), random_qubit(rng, True)
                odd = max(odd, 1 - swap_fidelity(a, b, p, t, phase))
    return [Check("xxx_swap_defect", xxx, 1e-9), Check("odd_odd_swap_defect", odd, 1e-9)]


def check_tau(grid_points=100_000):
    # want tau >= 10 * floor, i.e. 10 * floor - tau <= 0
    worst = -math.inf
    for lam in EVEN_LAMBDAS:
        r = rational_approx(lam)
        t_max = 4 * r.n * math.pi
        value, _ = tau(lam, 1.0, t_max, grid_points)
        worst = max(worst, 10 * tau_grid_floor(lam, 1.0, t_max, grid_points) - value)
    odd_worst = max(tau(lam, 1.0, 2 * rational_approx(lam).n * math.pi, grid_points)[0] for lam in ODD_LAMBDAS)
    return [Check("even_tau_margin", worst, 0.0), Check("odd_tau_zero", odd_worst, 1e-9)]


def check_error_bound(rng, trials):
    excess = gap = -math.inf
    lowest = math.inf
    for delta in BOUND_DELTAS:
        for _ in range(trials):
            rep = error_report(random_qubit(rng), random_qubit(rng), delta)
            excess = max(excess, rep.delta_exact - delta**2 - 2 * delta**3)
            gap = max(gap, abs(rep.delta_exact - rep.delta_quadratic) / delta**3)
            lowest = min(lowest, rep.delta_exact)
    return [
        Check("bound_excess", excess, 0.0),
        Check("quadratic_gap_over_delta3", gap, 5.0),
        Check("negative_error", -lowest, 1e-10),
    ]


def check_simple_case(rng, trials):
    worst = 0.0
    r = rational_approx(1.0)
    for _ in range(trials):
        a = random_qubit(rng, True)
        delta = rng.uniform(0.0, 0.3)
        p = ModelParams(J=1.0, lam=1.0, b=delta)
        t = field_swap_time(p, r)
        exact = evolution.reduced_density_first(a, State2.up(), p, t).up_up
        worst = max(worst, abs(exact - rho_up_simple(a.p_down, delta)))
    return [Check("simple_case_gap", worst, 1e-10)]


def check_field_oracle(rng, trials):
    worst = 0.0
    for lam in ODD_LAMBDAS:
        r = rational_approx(lam)
        for delta in BOUND_DELTAS:
            p = ModelParams(J=1.0, lam=lam, B=0.4, b=delta)
            t = field_swap_time(p, r)
            phase = phase_factor(r, 1, OpKind.SWAP, p.B, t)
            for _ in range(max(1, trials // 10)):
                a, b = random_qubit(rng, True), random_qubit(rng, True)
                chain = error_report(a, b, delta).delta_exact
                worst = max(worst, abs(chain - swap_error_numeric(a, b, p, t, phase)) / delta**3)
    return [Check("field_oracle_gap_over_delta3", worst, 5.0)]


def run_all(trials: int = 200, seed: int = 42, tau_grid_points: int = 100_000) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    checks += check_eigensystem(rng, trials)
    checks += check_analytic_vs_oracle(rng, trials)
    checks += check_swaps(rng, trials)
    checks += check_tau(tau_grid_points)
    checks += check_error_bound(rng, trials)
    checks += check_simple_case(rng, trials)
    checks += check_field_oracle(rng, trials)
    return checks
