"""Exception hierarchy shared by every pwhlab module."""

from typing import Optional


class PwhError(Exception):
    """Root of all pwhlab errors."""


class InputError(PwhError, ValueError):
    """Invalid input value or violated model invariant."""


class ModelParseError(InputError):
    """Model document does not conform to the schema."""

    def __init__(self, message: str, field_path: str = ""):
        self.field_path = field_path
        prefix = f"{field_path}: " if field_path else ""
        super().__init__(f"{prefix}{message}")


class DomainError(PwhError, ValueError):
    """State outside the operating domain."""


class DomainExitError(DomainError):
    """Iterate left the operating domain and could not be pulled back."""


class PreconditionError(PwhError, ValueError):
    """Structural precondition of a certificate does not hold."""


class NumericError(PwhError, RuntimeError):
    """Numerical routine failed."""


class SingularMatrixError(NumericError):
    pass


class NoConvergenceError(NumericError):
    def __init__(self, message: str, iterations: Optional[int] = None):
        self.iterations = iterations
        super().__init__(message)


class CertificateUnavailableError(PwhError):
    """No region-of-attraction certificate can be emitted."""


class ModeUnavailableError(PwhError):
    """Requested certificate mode does not apply to this system."""


class NoEquilibriumError(PwhError):
    """The model admits no real equilibrium at the given parameters."""

    def __init__(self, message: str, p_e_max: Optional[float] = None):
        self.p_e_max = p_e_max
        super().__init__(message)


class UnsupportedRenderError(PwhError):
    """Requested plot cannot be drawn for this model."""
