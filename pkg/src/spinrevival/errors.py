"""Exception hierarchy shared by the simulation modules and the CLI."""


class SpinRevivalError(Exception):
    """Base class for all package errors."""


class StructuralError(SpinRevivalError, ValueError):
    """Shapes or dimensions do not agree with the declared Hilbert space."""


class DomainError(SpinRevivalError, ValueError):
    """A parameter lies outside the domain of an operation."""


class NumericalError(SpinRevivalError, ArithmeticError):
    """A numerical routine failed or produced an out-of-tolerance result."""


class TruncationError(NumericalError):
    """A truncated Fock expansion loses more norm than allowed."""

    def __init__(self, message, required_n_max=None):
        super().__init__(message)
        self.required_n_max = required_n_max


class InvalidDensityError(NumericalError):
    """A matrix handed in as a density matrix has a clearly negative eigenvalue."""


class EstimateInvalidError(NumericalError):
    """A closed-form revival estimate is not usable for these parameters."""


class ConfigError(SpinRevivalError, ValueError):
    """A scenario configuration failed validation."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
