"""Exception types, mapped onto CLI exit codes in bergkern.cli."""


class ValidationError(ValueError):
    """Malformed or inconsistent input (exit code 2)."""


class DegenerateHessianError(ValidationError):
    """Complex Hessian has an eigenvalue below the signature tolerance."""


class WrongDegreeError(ValidationError):
    """Requested form degree q differs from n_minus; the kernel is negligible."""


class ResidualError(RuntimeError):
    """An internal cross-check residual exceeded its tolerance (exit code 3)."""


class TransportInconsistencyError(ResidualError):
    """Transport right-hand side has components in the kernel of L."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending or []


class PhaseUnderdeterminedError(ResidualError):
    """Kernel linear system for the phase coefficients is singular."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending or []


class CrossCheckError(ResidualError):
    """Two independent routes to the same quantity disagree."""


class NumericalError(RuntimeError):
    """Quadrature or fitting failure (exit code 4)."""
