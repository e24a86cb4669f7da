"""Exception hierarchy shared by every zeta_lab module."""


class ZetaLabError(Exception):
    """Base class for all library errors."""


class DomainError(ZetaLabError, ValueError):
    """Argument outside the domain of an operation."""


class PoleError(ZetaLabError, ValueError):
    """Evaluation at (or too close to) a pole."""


class RangeError(ZetaLabError, OverflowError):
    """An intermediate quantity leaves the supported exponent range."""


class NonFiniteError(ZetaLabError, ArithmeticError):
    """A NaN or infinity escaped an arithmetic operation."""


class BudgetError(ZetaLabError, RuntimeError):
    """A term or refinement budget was exhausted before reaching the target."""


class QuadratureError(BudgetError):
    """Adaptive quadrature did not meet its tolerance."""


class PrecisionError(ZetaLabError, ArithmeticError):
    """Cancellation consumed the available working precision.

    ``required_digits`` is a hint for a precision that should succeed.
    """

    def __init__(self, message, required_digits=None):
        super().__init__(message)
        self.required_digits = required_digits


class DivisionError(ZetaLabError, ZeroDivisionError):
    """Division by a quantity that vanishes at working precision."""


class SearchError(ZetaLabError, RuntimeError):
    """Root search failed to converge."""


class DegenerateError(SearchError):
    """Root search hit a vanishing derivative."""


class BoundViolation(ZetaLabError, AssertionError):
    """A measured quantity exceeded an analytic bound it must obey."""


class ConfigError(ZetaLabError, ValueError):
    """Invalid run configuration."""
