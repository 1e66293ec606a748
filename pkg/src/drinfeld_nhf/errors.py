"""Exception hierarchy shared by all modules."""


class DrinfeldError(Exception):
    """Base class for library errors."""


class DivisionByZero(DrinfeldError, ZeroDivisionError):
    pass


class ZeroLeadingCoefficient(DrinfeldError, ZeroDivisionError):
    pass


class ZeroPolynomial(DrinfeldError):
    pass


class PrecisionExhausted(DrinfeldError):
    pass


class FieldTooSmall(DrinfeldError):
    pass


class NonInvertibleDenominator(DrinfeldError):
    pass


class RouteMismatch(DrinfeldError):
    pass


class InconsistentConvention(DrinfeldError):
    pass


class WeightViolation(DrinfeldError):
    pass


class NonLinearResidue(DrinfeldError):
    pass


class CrossCheckFailure(DrinfeldError):
    pass


class OutsideConvergence(DrinfeldError):
    pass


class DomainError(DrinfeldError):
    pass
