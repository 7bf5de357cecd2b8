"""Error hierarchy.

Validation failures subclass ``ValueError`` and numerical failures subclass
``ArithmeticError`` so callers can catch them with the built-in types; the CLI maps
the two branches to exit statuses 1 and 2.
"""


class BergmanError(Exception):
    """Base class for all library errors."""


class ValidationFailure(BergmanError, ValueError):
    """Input rejected before any computation."""


class WeightSpecError(ValidationFailure):
    """Malformed weight specification string."""


class WeightDomainError(ValidationFailure):
    """Parameter or evaluation point outside its admissible range."""


class NestingError(ValidationFailure):
    """A cutoff weight was built on top of another cutoff weight."""


class UnsupportedOrderError(ValidationFailure):
    """Derivative order beyond what the weight families provide."""


class NumericalFailure(BergmanError, ArithmeticError):
    """Computation started but could not produce a trustworthy value."""


class QuadratureError(NumericalFailure):
    """Quadrature did not converge within the configured number of levels."""

    def __init__(self, message: str, n: int | None = None) -> None:
        super().__init__(message)
        self.n = n


class DegenerateWeightError(NumericalFailure):
    """A moment integral is zero or not finite."""


class InsufficientTableError(NumericalFailure):
    """The moment table does not reach the index an operation needs."""

    def __init__(self, required: int, available: int, what: str = "operation") -> None:
        super().__init__(f"{what} needs moments up to n={required}, table has n_max={available}")
        self.required = required
        self.available = available


class DegenerateSampleError(NumericalFailure):
    """Every random sample of a sweep had a numerically zero denominator."""


class NumericalError(NumericalFailure):
    """Any other loss of numerical consistency."""
