"""Exception hierarchy shared across the package."""


class UncregError(Exception):
    """Base class for every error raised by uncreg."""


class DomainError(UncregError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(UncregError, ArithmeticError):
    """A computation produced a non-finite value."""


class QuadratureError(NumericError):
    """An integrand was non-finite at an interior node."""

    def __init__(self, alpha, value):
        self.alpha = float(alpha)
        self.value = value
        super().__init__(f"integrand is {value!r} at alpha={self.alpha!r}")


class ConvergenceError(UncregError):
    """An iterative procedure stopped before meeting its tolerance."""

    def __init__(self, message, last_delta=None):
        self.last_delta = last_delta
        super().__init__(message)


class ConstraintError(UncregError, ValueError):
    """Model parameters violate the model's constraints."""


class ContractError(UncregError, ValueError):
    """Arguments are inconsistent with each other (e.g. dimension mismatch)."""


class InfeasibleError(UncregError):
    """No feasible solution exists within the search limits."""


class ValidationError(UncregError, ValueError):
    """Input data failed validation."""
