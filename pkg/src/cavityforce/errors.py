"""Exception hierarchy shared by all modules."""


class CavityForceError(Exception):
    """Base class for every error raised by the package."""


class DomainError(CavityForceError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateInputError(DomainError):
    """Zero frequency together with zero in-plane wavenumber."""


class SingularityError(CavityForceError, ArithmeticError):
    """A multiple-reflection denominator came too close to zero."""


class QuadratureError(CavityForceError, ArithmeticError):
    """The integrand produced a non-finite value."""


class ConfigurationError(CavityForceError, ValueError):
    """A physical configuration is inconsistent or unsupported."""


class UVDivergenceError(ConfigurationError):
    """A frequency integral diverges at large imaginary frequency."""


class ConvergenceDiagnostic(UserWarning):
    """Emitted when an extrapolation sequence does not converge monotonically."""
