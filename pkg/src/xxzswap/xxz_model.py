"""Two-qubit XXZ Hamiltonian in an inhomogeneous z field and its exact eigensystem."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidParamsError

# single-qubit Paulis in basis order (|0>, |1>), |1> = spin up
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SIGMA_Z = np.array([[-1, 0], [0, 1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the XXZ Hamiltonian.

    Attributes:
        J: planar exchange coupling; must be nonzero.
        lam: z anisotropy (``lambda``); 1 is XXX, 0 is XX.
        B: mean field along z, ``B >= 0``.
        b: field inhomogeneity; spin 1 sees ``B + b``, spin 2 sees ``B - b``.
    """

    J: float = 1.0
    lam: float = 1.0
    B: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        for name in ("J", "lam", "B", "b"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
                raise InvalidParamsError(f"{name} must be a finite real, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.J == 0:
            raise InvalidParamsError("J = 0 gives a non-interacting model")
        if self.B < 0:
            raise InvalidParamsError("B must be >= 0 (flip both spins to reverse the field)")

    @property
    def delta(self) -> float:
        """Relative inhomogeneity ``b / J``."""
        return self.b / self.J

    @property
    def eta(self) -> float:
        return math.hypot(self.b, self.J)

    def replace(self, **changes) -> ModelParams:
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class Eigensystem:
    """Closed-form eigenpairs; ``states[i]`` is the eigenvector for ``energies[i]``."""

    energies: np.ndarray
    states: np.ndarray
    eta: float
    eps: float
    zeta: float

    def projector_sum(self) -> np.ndarray:
        """``sum_i E_i |psi_i><psi_i|``."""
        return np.einsum("i,ij,ik->jk", self.energies, self.states, self.states.conj())


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    def two(a, b):
        return np.kron(a, b)

    h = 0.5 * (
        p.J * (two(SIGMA_X, SIGMA_X) + two(SIGMA_Y, SIGMA_Y) + p.lam * two(SIGMA_Z, SIGMA_Z))
        + (p.B + p.b) * two(SIGMA_Z, IDENTITY2)
        + (p.B - p.b) * two(IDENTITY2, SIGMA_Z)
    )
    # real symmetric in this basis; drop the exact-zero imaginary parts
    return h.real.astype(complex)


def eps_zeta(J: float, b: float) -> tuple[float, float, float]:
    """Return ``(eta, eps, zeta)`` with ``eps = b - eta`` and ``zeta = b + eta``.

    Uses ``eps * zeta = -J**2`` to avoid cancellation in whichever of the
    two is small.
    """
    eta = math.hypot(b, J)
    if b >= 0:
        zeta = b + eta
        eps = -J * J / zeta
    else:
        eps = b - eta
        zeta = -J * J / eps
    return eta, eps, zeta


def eigensystem(p: ModelParams) -> Eigensystem:
    J, lam, B = p.J, p.lam, p.B
    eta, eps, zeta = eps_zeta(J, p.b)
    energies = np.array(
        [
            0.5 * (lam * J - 2 * B),
            0.5 * (lam * J + 2 * B),
            -0.5 * lam * J - eta,
            -0.5 * lam * J + eta,
        ]
    )
    states = np.zeros((4, 4), dtype=complex)
    states[0, 0] = 1.0  # |00>
    states[1, 3] = 1.0  # |11>
    n3 = math.hypot(J, eps)
    n4 = math.hypot(J, zeta)
    states[2, 2], states[2, 1] = eps / n3, J / n3
    states[3, 2], states[3, 1] = zeta / n4, J / n4
    return Eigensystem(energies=energies, states=states, eta=eta, eps=eps, zeta=zeta)
