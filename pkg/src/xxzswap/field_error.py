"""Swap errors caused by an inhomogeneous field ``b = delta * J``.

The closed forms here are exact at an idealized swap instant where both
``cos(2 eta t)`` and ``cos(2 lambda J t)`` equal -1 (``eta = |J| sqrt(1 + delta**2)``).
:func:`field_swap_time` returns the instant that satisfies the first condition
exactly; the second then holds up to an ``O(delta**2)`` phase slip that only
touches the off-diagonal of the reduced density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBetaError, InvalidParamsError, NegativeWeightError, OutOfRegimeError
from .qlinalg import Density2, State2
from .swap_analysis import OpKind, RationalLambda, phase_sign
from .xxz_model import ModelParams

WEIGHT_TOL = 1e-10
# below this |beta1 beta2| the general chain loses digits to cancellation
# (|D| ~ delta / |beta1 beta2|), and the simple branch is already within it
DEGENERATE_TOL = 1e-8
BOUND_REGIME = 0.3


@dataclass(frozen=True)
class ErrorReport:
    """Error quantities for one initial product state.

    ``branch`` is ``"general"`` (beta1 * beta2 != 0) or ``"simple"``; the
    mixture fields are ``None`` on the simple branch.
    """

    branch: str
    c_term: float
    d_term: complex | None
    theta: float | None
    p1: float | None
    p2: float | None
    p3: float | None
    p_success: float
    delta_exact: float
    delta_quadratic: float


def _check_delta(delta: float, limit: float = 1.0) -> float:
    delta = float(delta)
    if not math.isfinite(delta):
        raise InvalidParamsError("delta must be finite")
    if abs(delta) >= limit:
        raise OutOfRegimeError(f"|delta| = {abs(delta)} outside the perturbative regime (< {limit})")
    return delta


def field_swap_time(p: ModelParams, r: RationalLambda, k: int = 1) -> float:
    """``(2k - 1) n pi / (2 eta)``: the k-th swap instant shifted to the field-split frequency."""
    if not r.both_odd:
        raise InvalidParamsError("field-error analysis needs m and n both odd")
    return (2 * k - 1) * r.n * math.pi / (2 * p.eta)


def rho_up_simple(alpha2_sq: float, delta: float) -> float:
    """``rho_uu`` of spin 1 at the swap instant when spin 2 starts in ``|1>``."""
    if not 0 <= alpha2_sq <= 1 + 1e-12:
        raise InvalidParamsError("|alpha2|**2 must lie in [0, 1]")
    d2 = float(delta) ** 2
    return 1 - alpha2_sq * d2 / (1 + d2)


def c_term(a: State2, b_state: State2, delta: float) -> float:
    """Population shift ``C``: ``rho_uu = |beta1|**2 + C``."""
    a1, a2, b1, b2 = a.amp_up, a.amp_down, b_state.amp_up, b_state.amp_down
    quad = abs(a1 * b2) ** 2 - abs(a2 * b1) ** 2
    cross = 2 * (np.conj(a1) * a2 * b1 * np.conj(b2)).real
    return float((quad * delta**2 + cross * delta) / (1 + delta**2))


def coherence_numerator(a: State2, b_state: State2, delta: float) -> complex:
    """``beta1 beta2* D = [beta1 beta2* + alpha1 alpha2* (|beta2|^2 - |beta1|^2) delta] / sqrt(1+delta^2)``."""
    a1, a2, b1, b2 = a.amp_up, a.amp_down, b_state.amp_up, b_state.amp_down
    raw = b1 * np.conj(b2) + a1 * np.conj(a2) * (abs(b2) ** 2 - abs(b1) ** 2) * delta
    return complex(raw / math.sqrt(1 + delta**2))


def d_term(a: State2, b_state: State2, delta: float) -> complex:
    """Coherence factor ``D``; equals 1 at ``delta = 0``."""
    bb = b_state.amp_up * np.conj(b_state.amp_down)
    if bb == 0:
        raise DegenerateBetaError("D is undefined for beta1 * beta2 = 0")
    return complex(coherence_numerator(a, b_state, delta) / bb)


def reduced_density_general(
    a: State2,
    b_state: State2,
    delta: float,
    r: RationalLambda,
    k: int = 1,
    B: float = 0.0,
    J: float = 1.0,
) -> tuple[Density2, float, complex]:
    """Reduced density of spin 1 at the k-th field swap instant.

    Returns ``(rho, C, D)``. Raises :class:`DegenerateBetaError` when
    ``beta1 * beta2 = 0``; use :func:`rho_up_simple` there.
    """
    delta = _check_delta(delta)
    d = d_term(a, b_state, delta)
    c = c_term(a, b_state, delta)
    t = field_swap_time(ModelParams(J=J, lam=r.value, B=B, b=delta * J), r, k)
    sign = phase_sign(r, k, OpKind.SWAP)
    up_down = sign * b_state.amp_up * np.conj(b_state.amp_down) * d * np.exp(-1j * B * t)
    rho = Density2.from_entries(b_state.p_up + c, b_state.p_down - c, complex(up_down))
    return rho, c, d


def mixture_decomposition(c: float, d: complex, b_state: State2, strict: bool = True):
    """Split the swapped density into ``(p1, p2, p3, theta)``.

    ``p1`` weights the phase-rotated swapped state, ``p2`` ``|1>``, ``p3``
    ``|0>``. With ``strict`` a weight below ``-WEIGHT_TOL`` raises
    :class:`NegativeWeightError`; without it the affine weights are returned
    as-is (they still reproduce the density exactly).
    """
    mod = abs(d)
    p1 = mod
    p2 = (1 - mod) * b_state.p_up + c
    p3 = (1 - mod) * b_state.p_down - c
    if strict and min(p1, p2, p3) < -WEIGHT_TOL:
        raise NegativeWeightError(f"negative mixture weight in ({p1}, {p2}, {p3})")
    theta = math.atan2(d.imag, d.real)
    return p1, p2, p3, theta


def success_probability(p1: float, p2: float, p3: float, theta: float, b_state: State2) -> float:
    """Probability of finding spin 1 in the phase-corrected swapped state."""
    u, v = b_state.p_up, b_state.p_down
    overlap = abs(u + v * complex(math.cos(theta), -math.sin(theta))) ** 2
    return p1 * overlap + p2 * u + p3 * v


def quadratic_coefficient(alpha1_sq, beta1_sq):
    """``|beta1|^4 - 2 |alpha1 beta1|^2 + |alpha1|^2`` (vectorizes)."""
    return beta1_sq**2 - 2 * alpha1_sq * beta1_sq + alpha1_sq


def error_quadratic(a: State2, b_state: State2, delta: float) -> float:
    """Second-order swap error ``coefficient * delta**2``."""
    return float(quadratic_coefficient(a.p_up, b_state.p_up) * delta**2)


def _simple_error(a: State2, b_state: State2, delta: float) -> float:
    d2 = delta * delta
    # spin 2 starts (nearly) in |1> or |0>; the other branch mirrors the first
    if b_state.p_down <= b_state.p_up:
        return 1 - rho_up_simple(a.p_down, delta)
    return a.p_up * d2 / (1 + d2)


def error_report(a: State2, b_state: State2, delta: float, strict: bool = False) -> ErrorReport:
    """Full chain ``C, D -> (p1, p2, p3, theta) -> p -> 1 - p`` for one input.

    Inputs with ``|beta1 beta2| < DEGENERATE_TOL`` take the simple branch.
    """
    delta = _check_delta(delta)
    c = c_term(a, b_state, delta)
    quad = error_quadratic(a, b_state, delta)
    if abs(b_state.amp_up * b_state.amp_down) < DEGENERATE_TOL:
        err = _simple_error(a, b_state, delta)
        return ErrorReport("simple", c, None, None, None, None, None, 1 - err, err, quad)
    d = d_term(a, b_state, delta)
    p1, p2, p3, theta = mixture_decomposition(c, d, b_state, strict=strict)
    p = success_probability(p1, p2, p3, theta, b_state)
    return ErrorReport("general", c, d, theta, p1, p2, p3, p, 1 - p, quad)


def check_bound(a: State2, b_state: State2, delta: float) -> tuple[float, bool]:
    """Return ``(1 - p, 1 - p <= delta**2 + 2|delta|**3)``."""
    delta = _check_delta(delta)
    if abs(delta) > BOUND_REGIME:
        raise OutOfRegimeError(f"|delta| = {abs(delta)} > {BOUND_REGIME}")
    err = error_report(a, b_state, delta).delta_exact
    return err, bool(err <= delta**2 + 2 * abs(delta) ** 3)


def fig1_surface(delta: float, grid: int) -> np.ndarray:
    """Rows ``(|alpha1|^2, |beta1|^2, error / delta^2)`` on a ``grid x grid`` lattice.

    Real, non-negative amplitudes; ``alpha1_sq`` varies slowest.
    """
    delta = _check_delta(delta)
    if delta == 0:
        raise InvalidParamsError("delta must be nonzero to normalize the surface")
    if grid < 2:
        raise InvalidParamsError("grid must be >= 2")
    axis = np.linspace(0.0, 1.0, grid)
    rows = []
    for x in axis:
        a = State2(math.sqrt(x), math.sqrt(1 - x))
        for y in axis:
            b_state = State2(math.sqrt(y), math.sqrt(1 - y))
            rows.append((x, y, error_report(a, b_state, delta).delta_exact / delta**2))
    return np.array(rows)

