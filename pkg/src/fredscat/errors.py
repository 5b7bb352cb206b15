"""Exception types shared across the package.

The split between "validation" and "numerical" subclasses is what the CLI
uses to pick its exit code (1 vs 2).
"""


class FredscatError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FredscatError, ValueError):
    """Bad arguments or configuration, detected before any numerics run."""


class InvalidArgumentError(ValidationError):
    """An argument violates a documented precondition."""


class DomainError(ValidationError):
    """A special function was evaluated outside its domain (branch cut, zero)."""


class SingularPointError(ValidationError):
    """A potential, Green's function, or wave form was evaluated at a singularity."""


class NumericalError(FredscatError, ArithmeticError):
    """A computation failed for numerical reasons despite valid inputs."""


class EvaluationError(NumericalError):
    """A kernel or special function produced a non-finite value."""


class SingularDeterminantError(NumericalError):
    """The Fredholm determinant is (numerically) zero: lambda is a characteristic value."""


class SingularMatrixError(NumericalError):
    """Row reduction found no usable pivot in the discretized linear system."""


class DivergenceError(NumericalError):
    """A fixed-point iteration grew without bound."""
