"""Brute-force reference evolution.

Builds ``H`` entry by entry, exponentiates it numerically and traces out
spin 2 with the generic primitives in :mod:`xxzswap.qlinalg`. Nothing here
touches the closed-form eigensystem, so a transcription slip in
:mod:`xxzswap.evolution` shows up as a deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import evolution
from .errors import InvalidParamsError
from .qlinalg import Density2, State2, propagator, reduced_first, tensor_product
from .xxz_model import ModelParams, build_hamiltonian

MAX_TIME = 1e3


@dataclass(frozen=True, eq=False)
class OracleResult:
    state: np.ndarray
    reduced: Density2
    purity: float
    fidelity_vs_target: float | None = None


def rk4_evolve(h: np.ndarray, psi0: np.ndarray, t: float, steps: int = 4000) -> np.ndarray:
    """Fixed-step RK4 for ``i dpsi/dt = H psi``; a second, integrator-level cross-check."""
    dt = t / steps
    psi = np.array(psi0, dtype=complex)

    def rhs(v):
        return -1j * (h @ v)

    for _ in range(steps):
        k1 = rhs(psi)
        k2 = rhs(psi + 0.5 * dt * k1)
        k3 = rhs(psi + 0.5 * dt * k2)
        k4 = rhs(psi + dt * k3)
        psi = psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi


def evolve_numeric(
    a: State2,
    b: State2,
    p: ModelParams,
    t: float,
    target: np.ndarray | None = None,
    integrator: str = "expm",
) -> OracleResult:
    """Evolve ``a (x) b`` for time ``t``; optionally score against ``target``.

    ``integrator="rk4"`` swaps the matrix exponential for a fixed-step
    Runge-Kutta integration (slow; debugging only).
    """
    if not math.isfinite(t) or abs(t) > MAX_TIME:
        raise InvalidParamsError(f"|t| must be <= {MAX_TIME}")
    h = build_hamiltonian(p)
    psi0 = tensor_product(a, b)
    if integrator == "expm":
        psi = propagator(h, t) @ psi0
    elif integrator == "rk4":
        psi = rk4_evolve(h, psi0, t, steps=max(1000, int(abs(t) * 400)))
    else:
        raise ValueError(f"unknown integrator {integrator!r}")
    reduced = reduced_first(psi)
    fidelity = None
    if target is not None:
        fidelity = float(abs(np.vdot(target, psi)) ** 2)
    return OracleResult(state=psi, reduced=reduced, purity=reduced.det, fidelity_vs_target=fidelity)


def max_deviation(a: State2, b: State2, p: ModelParams, t_samples) -> float:
    """Largest entrywise gap between closed-form and brute-force spin-1 densities."""
    t_samples = list(t_samples)
    if not t_samples:
        raise InvalidParamsError("need at least one sample time")
    worst = 0.0
    for t in t_samples:
        analytic = evolution.reduced_density_first(a, b, p, t).matrix
        oracle = evolve_numeric(a, b, p, t).reduced.matrix
        worst = max(worst, float(np.max(np.abs(analytic - oracle))))
    return worst


def energy(a: State2, b: State2, p: ModelParams, t: float) -> float:
    psi = evolve_numeric(a, b, p, t).state
    return float(np.real(np.vdot(psi, build_hamiltonian(p) @ psi)))


def swap_error_numeric(a: State2, b_state: State2, p: ModelParams, t: float, phase: complex) -> float:
    """``1 - <chi| rho_1 |chi>`` with ``chi = beta1 |1> + phase beta2 |0>`` after evolving to ``t``."""
    rho = evolve_numeric(a, b_state, p, t).reduced
    return 1.0 - rho.expectation(b_state.with_phase(phase))
