"""Swap feasibility versus anisotropy in a homogeneous field.

For ``|lambda| = m/n`` in lowest terms the spins decouple whenever
``sin(2Jt) = sin(2 lambda J t) = 0``. Times where both cosines equal +1 are
return times ``t = k n pi / |J|``; times where both equal -1 exist only for
odd ``m`` and ``n`` and are swap times ``t = (2k - 1) n pi / (2|J|)``.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    InfeasibleSwapError,
    InhomogeneousFieldError,
    InvalidCombinationError,
    InvalidParamsError,
)
from .evolution import evolved_state
from .qlinalg import State2, tensor_product
from .xxz_model import ModelParams

DEFAULT_MAX_DEN = 99
RATIONAL_TOL = 1e-9
TAU_GRID_POINTS = 100_000


def default_max_denominator() -> int:
    """Denominator cap, overridable through ``XXZSWAP_MAX_DEN``."""
    raw = os.environ.get("XXZSWAP_MAX_DEN")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_DEN
    value = int(raw)
    if value < 1:
        raise InvalidParamsError(f"XXZSWAP_MAX_DEN must be >= 1, got {value}")
    return value


class Feasibility(enum.Enum):
    EXACT_SWAP = "ExactSwap"
    RETURN_ONLY = "ReturnOnly"
    APPROXIMATE_ONLY = "ApproximateOnly"


class OpKind(enum.Enum):
    RETURN = "return"
    SWAP = "swap"


@dataclass(frozen=True)
class RationalLambda:
    """``lambda ~= sign * m / n`` with ``gcd(m, n) = 1``."""

    m: int
    n: int
    sign: int = 1
    residual: float = 0.0

    def __post_init__(self):
        if self.m < 0 or self.n < 1:
            raise InvalidParamsError(f"need m >= 0 and n >= 1, got m={self.m}, n={self.n}")
        if math.gcd(self.m, self.n) != 1:
            raise InvalidParamsError(f"m={self.m} and n={self.n} are not coprime")
        if self.sign not in (1, -1):
            raise InvalidParamsError("sign must be +1 or -1")

    @property
    def value(self) -> float:
        return self.sign * self.m / self.n

    @property
    def both_odd(self) -> bool:
        return self.m % 2 == 1 and self.n % 2 == 1

    @property
    def is_xx(self) -> bool:
        return self.m == 0


@dataclass(frozen=True)
class FeasibilityReport:
    lam: float
    rational: RationalLambda
    kind: Feasibility
    return_time: float
    swap_time: float | None
    phase: complex
    tau: float | None = None
    tau_time: float | None = None
    note: str = ""


def rational_approx(lam: float, max_denominator: int | None = None) -> RationalLambda:
    """Best rational approximation of ``lam`` with denominator at most ``max_denominator``.

    ``lam = 0`` (the XX chain) comes back as ``m = 0, n = 1``.
    """
    if not math.isfinite(lam):
        raise InvalidParamsError("lambda must be finite")
    if max_denominator is None:
        max_denominator = default_max_denominator()
    if max_denominator < 1:
        raise InvalidParamsError("max_denominator must be >= 1")
    frac = Fraction(abs(lam)).limit_denominator(max_denominator)
    return RationalLambda(
        m=frac.numerator,
        n=frac.denominator,
        sign=-1 if lam < 0 else 1,
        residual=abs(abs(lam) - frac.numerator / frac.denominator),
    )


def _require_homogeneous(p: ModelParams) -> None:
    if p.b != 0:
        raise InhomogeneousFieldError(f"homogeneous analysis needs b = 0, got b = {p.b}")


def _require_k(k: int) -> None:
    if int(k) != k or k < 1:
        raise InvalidParamsError(f"period index k must be a positive integer, got {k!r}")


def return_times(p: ModelParams, r: RationalLambda, k: int = 1) -> float:
    _require_homogeneous(p)
    _require_k(k)
    return k * r.n * math.pi / abs(p.J)


def swap_times(p: ModelParams, r: RationalLambda, k: int = 1) -> float:
    """k-th exact swap time; raises :class:`InfeasibleSwapError` unless m and n are odd."""
    _require_homogeneous(p)
    _require_k(k)
    if not r.both_odd:
        raise InfeasibleSwapError(f"m or n even (m={r.m}, n={r.n}): cos(2Jt) and cos(2 lambda J t) never both -1")
    return (2 * k - 1) * r.n * math.pi / (2 * abs(p.J))


def phase_sign(r: RationalLambda, k: int, op_kind: OpKind) -> int:
    """The +-1 multiplying ``exp(iBt)`` in the single-spin phase correction."""
    if op_kind is OpKind.RETURN:
        return -1 if (k * (r.m + r.n)) % 2 else 1
    if not r.both_odd:
        raise InvalidCombinationError("swap phase requested with m or n even")
    # sin(Jt) sin(lambda J t) at the swap time; odd in the sign of lambda
    return r.sign * (-1 if ((r.n - r.m) // 2) % 2 else 1)


def phase_factor(r: RationalLambda, k: int, op_kind: OpKind, B: float, t) -> complex:
    """Relative phase acquired by ``|0>`` against ``|1>`` on each spin at a return/swap time."""
    op_kind = OpKind(op_kind)
    return phase_sign(r, k, op_kind) * np.exp(1j * B * np.asarray(t, dtype=float))[()]


def target_swap(a: State2, b: State2, phase: complex) -> np.ndarray:
    """Ideal swapped state ``(b with phase) (x) (a with phase)``."""
    return tensor_product(b.with_phase(phase), a.with_phase(phase))


def _fidelity(target_first: State2, target_second: State2, a, b, p, t, phase):
    psi = evolved_state(a, b, p, t)
    phase = np.asarray(phase)
    # target amplitudes on |00>, |01>, |10>, |11> as functions of the phase
    f1, f2 = target_first, target_second
    target = np.stack(
        np.broadcast_arrays(
            phase * phase * f1.amp_down * f2.amp_down,
            phase * f1.amp_down * f2.amp_up,
            phase * f1.amp_up * f2.amp_down,
            f1.amp_up * f2.amp_up + 0 * phase,
        ),
        axis=-1,
    )
    overlap = np.sum(np.conj(target) * psi, axis=-1)
    value = np.abs(overlap) ** 2
    return value.item() if value.ndim == 0 else value


def swap_fidelity(a: State2, b: State2, p: ModelParams, t, phase: complex = 1.0):
    """``|<target|phi(t)>|**2`` against the phase-corrected swapped product state.

    ``t`` and ``phase`` broadcast against each other.
    """
    if np.any(np.abs(np.abs(np.asarray(phase)) - 1) > 1e-12):
        raise InvalidParamsError("phase must have unit modulus")
    return _fidelity(b, a, a, b, p, t, phase)


def return_fidelity(a: State2, b: State2, p: ModelParams, t, phase: complex = 1.0):
    """Like :func:`swap_fidelity` but against the (phase-corrected) initial state."""
    if np.any(np.abs(np.abs(np.asarray(phase)) - 1) > 1e-12):
        raise InvalidParamsError("phase must have unit modulus")
    return _fidelity(a, b, a, b, p, t, phase)


def _tau_objective(lam: float, J: float):
    return lambda t: 2 + np.cos(2 * J * t) + np.cos(2 * lam * J * t)


def tau(lam: float, J: float, t_max: float, grid_points: int = TAU_GRID_POINTS) -> tuple[float, float]:
    """Minimize ``2 + cos(2Jt) + cos(2 lambda J t)`` over ``(0, t_max]``.

    Uniform grid, ties toward smaller ``t``, then bounded Brent refinement
    inside the neighbouring grid cells. Returns ``(tau, t_argmin)``.
    """
    if not (math.isfinite(lam) and math.isfinite(J) and J != 0):
        raise InvalidParamsError("lambda and J must be finite, J nonzero")
    if not (math.isfinite(t_max) and t_max > 0):
        raise InvalidParamsError("t_max must be positive")
    if grid_points < 1000:
        raise InvalidParamsError("grid_points must be >= 1000")
    f = _tau_objective(lam, J)
    h = t_max / grid_points
    grid = h * np.arange(1, grid_points + 1)
    values = f(grid)
    i = int(np.argmin(values))
    best_t, best_v = float(grid[i]), float(values[i])
    lo, hi = max(grid[i] - h, 0.0), min(grid[i] + h, t_max)
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-14 * max(1.0, t_max)})
    if res.success and float(res.fun) < best_v:
        best_t, best_v = float(res.x), float(res.fun)
    return max(best_v, 0.0), best_t


def tau_grid_floor(lam: float, J: float, t_max: float, grid_points: int = TAU_GRID_POINTS) -> float:
    """Worst-case excess of the raw grid minimum over the true minimum.

    Bound ``max|f''| * (h/2)**2 / 2`` with ``|f''| <= 4 J**2 (1 + lambda**2)``.
    """
    h = t_max / grid_points
    return 0.5 * 4 * J * J * (1 + lam * lam) * (h / 2) ** 2


def classify(
    p: ModelParams,
    k: int = 1,
    max_denominator: int | None = None,
    tol: float = RATIONAL_TOL,
    with_tau: bool = True,
    grid_points: int = TAU_GRID_POINTS,
) -> FeasibilityReport:
    """Decide whether an exact swap exists for ``p.lam`` and time it.

    ``p.b`` is ignored (the classification is a homogeneous-field statement).
    ``lam`` counts as rational when the best convergent with denominator up to
    ``max_denominator`` lies within ``tol``; otherwise the convergent is still
    used for the reported return time and the tau window.
    """
    hp = p.replace(b=0.0)
    r = rational_approx(p.lam, max_denominator)
    note = "XX chain: m = 0 treated as even" if r.is_xx else ""
    if r.residual >= tol:
        kind = Feasibility.APPROXIMATE_ONLY
    elif r.both_odd:
        kind = Feasibility.EXACT_SWAP
    else:
        kind = Feasibility.RETURN_ONLY
    t_return = return_times(hp, r, k)
    if kind is Feasibility.EXACT_SWAP:
        t_swap = swap_times(hp, r, k)
        phase = phase_factor(r, k, OpKind.SWAP, p.B, t_swap)
    else:
        t_swap = None
        phase = phase_factor(r, k, OpKind.RETURN, p.B, t_return)
        if kind is Feasibility.APPROXIMATE_ONLY:
            note = (note + "; " if note else "") + "return time from the best convergent"
    tau_value = tau_time = None
    if with_tau:
        tau_value, tau_time = tau(p.lam, p.J, 2 * r.n * math.pi / abs(p.J), grid_points)
    return FeasibilityReport(
        lam=p.lam,
        rational=r,
        kind=kind,
        return_time=t_return,
        swap_time=t_swap,
        phase=complex(phase),
        tau=tau_value,
        tau_time=tau_time,
        note=note,
    )
