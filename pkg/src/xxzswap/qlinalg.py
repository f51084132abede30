"""Small dense linear algebra for one and two qubits.

Basis convention (shared by every module):

* single qubit: index 0 is ``|0>`` (spin down), index 1 is ``|1>`` (spin up);
* two qubits: ``|00>, |01>, |10>, |11>`` with index ``2*s1 + s2``.

Two-qubit states are plain complex arrays of shape ``(4,)`` (or ``(..., 4)``
when vectorized over time); operators are ``(4, 4)`` complex arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NormalizationError, NotHermitianError

NORM_TOL = 1e-12
INPUT_NORM_TOL = 1e-9
HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10

# Taylor tail cutoff on the scaled exponent; squaring amplifies it by at most
# 2**squarings, which keeps the final residual below 1e-13 for |Ht| < 1e3.
TAYLOR_TAIL = 1e-17


@dataclass(frozen=True)
class State2:
    """Normalized single-qubit state ``amp_up |1> + amp_down |0>``.

    Inputs whose norm deviates by less than ``INPUT_NORM_TOL`` are silently
    renormalized; anything further off raises :class:`NormalizationError`.
    """

    amp_up: complex
    amp_down: complex

    def __post_init__(self):
        up, down = complex(self.amp_up), complex(self.amp_down)
        if not all(math.isfinite(x) for x in (up.real, up.imag, down.real, down.imag)):
            raise NormalizationError("amplitudes must be finite")
        norm = math.sqrt(abs(up) ** 2 + abs(down) ** 2)
        if abs(norm - 1.0) > INPUT_NORM_TOL:
            raise NormalizationError(f"qubit norm {norm!r} deviates from 1 by more than {INPUT_NORM_TOL}")
        if abs(norm - 1.0) > NORM_TOL:
            up, down = up / norm, down / norm
        object.__setattr__(self, "amp_up", up)
        object.__setattr__(self, "amp_down", down)

    @classmethod
    def up(cls) -> State2:
        return cls(1.0, 0.0)

    @classmethod
    def down(cls) -> State2:
        return cls(0.0, 1.0)

    @classmethod
    def from_bloch(cls, theta: float, phi: float) -> State2:
        return cls(math.cos(theta / 2), complex(math.cos(phi), math.sin(phi)) * math.sin(theta / 2))

    @property
    def vector(self) -> np.ndarray:
        """Amplitudes in basis order ``(|0>, |1>)``."""
        return np.array([self.amp_down, self.amp_up], dtype=complex)

    @property
    def p_up(self) -> float:
        return abs(self.amp_up) ** 2

    @property
    def p_down(self) -> float:
        return abs(self.amp_down) ** 2

    def with_phase(self, phase: complex) -> State2:
        """Return ``amp_up |1> + phase * amp_down |0>``."""
        return State2(self.amp_up, phase * self.amp_down)


@dataclass(frozen=True, eq=False)
class Density2:
    """Single-qubit density matrix stored in basis order ``(|0>, |1>)``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("density matrix has non-finite entries")
        if abs(m[1, 0] - np.conj(m[0, 1])) > HERMITIAN_TOL or np.max(np.abs(m.diagonal().imag)) > HERMITIAN_TOL:
            raise NotHermitianError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace {np.trace(m).real!r} != 1")
        evals = np.linalg.eigvalsh(m)
        if evals.min() < -1e-10 or evals.max() > 1 + 1e-10:
            raise ValueError(f"density matrix eigenvalues {evals} outside [0, 1]")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_entries(cls, up_up: float, down_down: float, up_down: complex) -> Density2:
        return cls(np.array([[down_down, np.conj(up_down)], [up_down, up_up]], dtype=complex))

    @classmethod
    def from_state(cls, q: State2) -> Density2:
        v = q.vector
        return cls(np.outer(v, v.conj()))

    @property
    def up_up(self) -> float:
        return float(self.matrix[1, 1].real)

    @property
    def down_down(self) -> float:
        return float(self.matrix[0, 0].real)

    @property
    def up_down(self) -> complex:
        """``<1| rho |0>``."""
        return complex(self.matrix[1, 0])

    @property
    def down_up(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def det(self) -> float:
        """``rho_uu * rho_dd - |rho_ud|**2``; zero iff the state is pure."""
        return self.up_up * self.down_down - abs(self.up_down) ** 2

    def expectation(self, q: State2) -> float:
        """Probability of finding this qubit in state ``q``."""
        v = q.vector
        return float(np.real(v.conj() @ self.matrix @ v))


def check_state4(psi, tol: float = INPUT_NORM_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise ValueError(f"expected a 4-component state, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise NormalizationError(f"state norm {norm!r} deviates from 1")
    return psi


def tensor_product(a: State2, b: State2) -> np.ndarray:
    """``a (x) b`` in the ``|00>, |01>, |10>, |11>`` basis."""
    return np.kron(a.vector, b.vector)


def density_from_state(psi) -> np.ndarray:
    psi = check_state4(psi)
    return np.outer(psi, psi.conj())


def partial_trace_second(rho4) -> Density2:
    """Trace out the second qubit of a two-qubit density matrix."""
    rho4 = np.asarray(rho4, dtype=complex)
    if rho4.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho4.shape}")
    if not is_hermitian(rho4):
        raise NotHermitianError("two-qubit density matrix is not Hermitian")
    if abs(np.trace(rho4) - 1.0) > NORM_TOL:
        raise ValueError("two-qubit density matrix trace != 1")
    reduced = np.einsum("ijkj->ik", rho4.reshape(2, 2, 2, 2))
    # kill the rounding-level anti-Hermitian part before validation
    return Density2((reduced + reduced.conj().T) / 2)


def reduced_first(psi) -> Density2:
    """Reduced density of qubit 1 for a pure two-qubit state."""
    return partial_trace_second(density_from_state(psi))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(a)
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring of a truncated Taylor series."""
    a = np.asarray(a, dtype=complex)
    norm = np.linalg.norm(a, 1)
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    scaled = a / 2**squarings
    result = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, 40):
        term = term @ scaled / k
        result = result + term
        if np.linalg.norm(term, 1) < TAYLOR_TAIL:
            break
    for _ in range(squarings):
        result = result @ result
    return result


def propagator(h, t: float) -> np.ndarray:
    """Return ``exp(-i h t)`` for a Hermitian 4x4 (or 2x2) ``h``."""
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise NotHermitianError("generator is not Hermitian")
    if not math.isfinite(t):
        raise ValueError("time must be finite")
    if t == 0:
        return np.eye(h.shape[0], dtype=complex)
    return expm(-1j * t * h)
