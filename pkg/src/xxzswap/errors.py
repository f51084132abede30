"""Exception types raised across the package."""


class XXZSwapError(Exception):
    """Base class for all package errors."""


class NormalizationError(XXZSwapError, ValueError):
    """A state vector is not normalized within the accepted tolerance."""


class NotHermitianError(XXZSwapError, ValueError):
    pass


class InvalidParamsError(XXZSwapError, ValueError):
    """Model parameters or numeric arguments are outside their domain."""


class InhomogeneousFieldError(XXZSwapError, ValueError):
    """A homogeneous-field formula was called with b != 0."""


class InfeasibleSwapError(XXZSwapError):
    """No state-independent exact swap time exists for this anisotropy."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class InvalidCombinationError(XXZSwapError, ValueError):
    pass


class NegativeWeightError(XXZSwapError, ValueError):
    """A mixture weight came out negative (field inhomogeneity out of regime)."""


class DegenerateBetaError(XXZSwapError, ValueError):
    """beta1 * beta2 == 0; the simple-case formula applies instead."""


class OutOfRegimeError(XXZSwapError, ValueError):
    """|delta| too large for the perturbative error analysis."""
