"""Seeded random inputs for Monte-Carlo checks."""

from __future__ import annotations

import math

import numpy as np

from .qlinalg import State2
from .xxz_model import ModelParams


def random_qubit(rng: np.random.Generator, global_phase: bool = False) -> State2:
    """Uniform on the Bloch sphere (uniform ``cos(theta)`` and azimuth)."""
    theta = math.acos(rng.uniform(-1.0, 1.0))
    phi = rng.uniform(0.0, 2 * math.pi)
    q = State2.from_bloch(theta, phi)
    if global_phase:
        g = complex(np.exp(1j * rng.uniform(0.0, 2 * math.pi)))
        q = State2(g * q.amp_up, g * q.amp_down)
    return q


def random_params(
    rng: np.random.Generator,
    J_range=(-3.0, 3.0),
    lam_range=(-2.0, 2.0),
    B_range=(0.0, 3.0),
    b_range=(-2.0, 2.0),
) -> ModelParams:
    J = 0.0
    while J == 0.0:
        J = rng.uniform(*J_range)
    return ModelParams(J=J, lam=rng.uniform(*lam_range), B=rng.uniform(*B_range), b=rng.uniform(*b_range))
