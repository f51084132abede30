"""Closed-form evolution of product states and the reduced density of spin 1.

Every function taking a time ``t`` also accepts a numpy array of times; the
scalar case returns Python scalars / :class:`Density2`, array inputs return
arrays broadcast over ``t`` (see :func:`reduced_coefficients`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParamsError
from .qlinalg import Density2, State2
from .xxz_model import ModelParams, eigensystem

PURITY_TOL = 1e-9


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Amplitudes of ``phi(t)`` on the four eigenstates, plus the shared ``M``, ``N``."""

    a1: complex
    a2: complex
    a3: complex
    a4: complex
    m_coef: complex
    n_coef: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3, self.a4])


@dataclass(frozen=True)
class ReducedCoeffs:
    """Amplitudes of ``phi(t)`` on ``|00>, |11>, |10>, |01>`` (in that order)."""

    b1: complex
    b2: complex
    b3: complex
    b4: complex

    def state(self) -> np.ndarray:
        """The evolved state in the ``|00>, |01>, |10>, |11>`` basis."""
        return np.stack(np.broadcast_arrays(self.b1, self.b4, self.b3, self.b2), axis=-1)


def mixing_amplitudes(a: State2, b: State2, p: ModelParams) -> tuple[complex, complex]:
    """``M = a2 b1 zeta - a1 b2 J`` and ``N = a1 b2 J - a2 b1 eps``."""
    es = eigensystem(p)
    x = a.amp_up * b.amp_down  # weight of |10>
    y = a.amp_down * b.amp_up  # weight of |01>
    return y * es.zeta - x * p.J, x * p.J - y * es.eps


def _phases(p: ModelParams, t):
    es = eigensystem(p)
    t = np.asarray(t, dtype=float)
    return es, [np.exp(-1j * e * t) for e in es.energies]


def expansion_coefficients(a: State2, b: State2, p: ModelParams, t) -> ExpansionCoeffs:
    es, (e1, e2, e3, e4) = _phases(p, t)
    m_coef, n_coef = mixing_amplitudes(a, b, p)
    J, eta = p.J, es.eta
    a1 = a.amp_down * b.amp_down * e1
    a2 = a.amp_up * b.amp_up * e2
    a3 = m_coef * math.hypot(J, es.eps) / (2 * eta * J) * e3
    a4 = n_coef * math.hypot(J, es.zeta) / (2 * eta * J) * e4
    return ExpansionCoeffs(*(_scalar(v) for v in (a1, a2, a3, a4)), m_coef=m_coef, n_coef=n_coef)


def reduced_coefficients(a: State2, b: State2, p: ModelParams, t) -> ReducedCoeffs:
    """Amplitudes ``b1..b4`` of ``phi(t)`` on the product basis."""
    es, (e1, e2, e3, e4) = _phases(p, t)
    m_coef, n_coef = mixing_amplitudes(a, b, p)
    J, eta = p.J, es.eta
    b1 = a.amp_down * b.amp_down * e1
    b2 = a.amp_up * b.amp_up * e2
    b3 = (es.eps * m_coef * e3 + es.zeta * n_coef * e4) / (2 * eta * J)
    b4 = (m_coef * e3 + n_coef * e4) / (2 * eta)
    return ReducedCoeffs(*(_scalar(v) for v in (b1, b2, b3, b4)))


def evolved_state(a: State2, b: State2, p: ModelParams, t) -> np.ndarray:
    """``phi(t)``; shape ``(4,)`` for scalar ``t``, ``t.shape + (4,)`` otherwise."""
    return reduced_coefficients(a, b, p, t).state()


def reduced_entries(a: State2, b: State2, p: ModelParams, t):
    """``(rho_uu, rho_dd, rho_ud)`` of spin 1, vectorized over ``t``."""
    c = reduced_coefficients(a, b, p, t)
    up_up = np.abs(c.b2) ** 2 + np.abs(c.b3) ** 2
    down_down = np.abs(c.b1) ** 2 + np.abs(c.b4) ** 2
    up_down = np.conj(c.b1) * c.b3 + c.b2 * np.conj(c.b4)
    return up_up, down_down, up_down


def reduced_density_first(a: State2, b: State2, p: ModelParams, t: float) -> Density2:
    up_up, down_down, up_down = reduced_entries(a, b, p, t)
    return Density2.from_entries(float(up_up), float(down_down), complex(up_down))


def purity_functional(a: State2, b: State2, p: ModelParams, t):
    """``rho_uu * rho_dd - |rho_ud|**2`` of spin 1; zero exactly when spin 1 is pure."""
    up_up, down_down, up_down = reduced_entries(a, b, p, t)
    return _scalar(up_up * down_down - np.abs(up_down) ** 2)


def purity_factored(a: State2, b: State2, p: ModelParams, t):
    """The same quantity as ``|b1 b2 - b3 b4|**2``."""
    c = reduced_coefficients(a, b, p, t)
    return _scalar(np.abs(c.b1 * c.b2 - c.b3 * c.b4) ** 2)


def purity_closed_form(a: State2, b: State2, p: ModelParams, t):
    """Fully expanded trigonometric form of :func:`purity_factored` for any ``b``."""
    a1, a2, b1, b2 = a.amp_up, a.amp_down, b.amp_up, b.amp_down
    J, lam, eta = p.J, p.lam, p.eta
    t = np.asarray(t, dtype=float)
    prod = a1 * a2 * b1 * b2
    mixing = (J * p.b * (a2**2 * b1**2 - a1**2 * b2**2) - 2 * J**2 * prod) * (1 - np.cos(2 * eta * t))
    rotation = 1j * J * eta * (a2**2 * b1**2 + a1**2 * b2**2) * np.sin(2 * eta * t)
    value = (mixing - rotation) / (2 * eta**2) + prod * (1 - np.exp(-2j * lam * J * t))
    return _scalar(np.abs(value) ** 2)


def purity_homogeneous(a: State2, b: State2, J: float, lam: float, t):
    """Purity functional for ``b = 0`` (independent of ``B``).

    Squares of amplitudes are taken as complex squares, not moduli.
    """
    if J == 0 or not math.isfinite(J) or not math.isfinite(lam):
        raise InvalidParamsError("J must be finite and nonzero, lambda finite")
    a1, a2, b1, b2 = a.amp_up, a.amp_down, b.amp_up, b.amp_down
    t = np.asarray(t, dtype=float)
    prod = a1 * a2 * b1 * b2
    real_part = prod * (np.cos(2 * J * t) - np.cos(2 * lam * J * t))
    imag_part = 0.5 * (a2**2 * b1**2 + a1**2 * b2**2) * np.sin(2 * J * t) - prod * np.sin(2 * lam * J * t)
    return _scalar(np.abs(real_part - 1j * imag_part) ** 2)


def is_pure(rho: Density2, tol: float = PURITY_TOL) -> bool:
    """Purity test via ``det(rho) < tol``; exact in dimension 2."""
    return rho.det < tol


def _scalar(v):
    v = np.asarray(v)
    return v.item() if v.ndim == 0 else v
