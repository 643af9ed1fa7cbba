"""Exception hierarchy shared across the package."""


class QCDError(ArithmeticError):
    """Base class for every error raised by this package."""


class NonUnit(QCDError):
    """A u-series with zero constant coefficient was inverted."""


class NotDivisible(QCDError):
    """An exact division by u met a nonzero constant coefficient."""


class InsufficientPrecision(QCDError):
    """A result would claim more u-orders than its inputs support."""


class NonzeroInnerConstant(QCDError):
    """Series composition with an inner series that does not vanish at 0."""


class NonPivotDenominator(QCDError):
    """Generating-function denominator whose constant term is not u times a unit."""


class IndexOutOfRange(QCDError, IndexError):
    pass


class IdentityViolation(QCDError):
    """Two routes to the same quantity disagreed."""


class OutOfDomain(QCDError, ValueError):
    """p-adic function evaluated outside its disc of convergence."""


class PrecisionExhausted(QCDError):
    """No p-adic digits of a result are known."""


class BudgetExceeded(QCDError):
    """A direct Riemann sum would exceed the configured term budget."""


class DegenerateRatio(QCDError):
    """Geometric closed form with ratio exactly 1."""


class DivisionByZero(QCDError, ZeroDivisionError):
    pass
