"""Exception hierarchy shared by all ffcf modules."""


class CFError(Exception):
    """Base class for all ffcf errors."""


class FieldMismatch(CFError):
    """Operands live over different prime fields."""


class DivisionByZero(CFError, ZeroDivisionError):
    """Division by a zero polynomial, element or series."""


class BothZero(CFError):
    """gcd(0, 0) requested."""


class ParseError(CFError):
    """Syntax error in a polynomial/equation expression.

    Carries the 0-based offset of the offending token in ``position``.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PrecisionExhausted(DivisionByZero):
    """A series is indistinguishable from zero at the available precision.

    Subclasses :class:`DivisionByZero` because the typical raiser is an
    inversion that cannot tell a tiny series from an exact zero.
    """


class InsufficientPrecision(CFError):
    """Known coefficients do not cover the exponents an operation needs."""


class NotAFrobeniusPower(CFError):
    """Exponent is not a power of the field characteristic."""


class ZeroScalar(CFError):
    """A nonzero field scalar was required."""


class DominantRootViolation(CFError):
    """The dominant-root expansion produced a partial quotient of degree < 1
    past the head position, so its precondition does not hold."""


class SingularRoot(CFError):
    """Newton refinement impossible: the derivative vanishes too deeply."""


class NoConvergence(CFError):
    """Newton refinement did not reach the requested precision."""


class PrecisionBudgetExceeded(CFError):
    """A configured precision/size cap would be exceeded."""


class NonDivisible(CFError):
    """An exact polynomial division required by a construction failed."""


class DegenerateTransformation(CFError):
    """The Moebius transformation has vanishing determinant."""


class UnsupportedFamily(CFError):
    """The named family does not define the requested object."""


class NoClosedForm(CFError):
    """No closed-form irrationality measure is on record for the family."""
