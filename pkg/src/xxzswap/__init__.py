"""Swap operation in the two-qubit Heisenberg XXZ model.

Closed-form evolution, swap feasibility versus anisotropy, field-induced
swap errors, and a brute-force oracle that checks all of them.
"""

from .errors import (
    DegenerateBetaError,
    InfeasibleSwapError,
    InhomogeneousFieldError,
    InvalidCombinationError,
    InvalidParamsError,
    NegativeWeightError,
    NormalizationError,
    NotHermitianError,
    OutOfRegimeError,
    XXZSwapError,
)
from .evolution import (
    expansion_coefficients,
    is_pure,
    purity_functional,
    purity_homogeneous,
    reduced_coefficients,
    reduced_density_first,
)
from .field_error import (
    ErrorReport,
    check_bound,
    error_quadratic,
    error_report,
    fig1_surface,
    field_swap_time,
    mixture_decomposition,
    reduced_density_general,
    rho_up_simple,
    success_probability,
)
from .numeric_oracle import evolve_numeric, max_deviation
from .qlinalg import Density2, State2, density_from_state, partial_trace_second, propagator, tensor_product
from .swap_analysis import (
    Feasibility,
    FeasibilityReport,
    OpKind,
    RationalLambda,
    classify,
    phase_factor,
    rational_approx,
    return_times,
    swap_fidelity,
    swap_times,
    tau,
)
from .xxz_model import Eigensystem, ModelParams, build_hamiltonian, eigensystem

__version__ = "0.1.0"
