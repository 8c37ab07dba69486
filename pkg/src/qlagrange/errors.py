"""Exception hierarchy.

Every error carries a stable string ``code`` (used in CLI JSON output) and the
process ``exit_code`` the CLI maps it to: 2 for bad input, 3 for internal
consistency failures.
"""


class QLagrangeError(Exception):
    code = "error"
    exit_code = 2


class InversionOfZero(QLagrangeError, ZeroDivisionError):
    code = "inversion_of_zero"


class DivisionByZero(QLagrangeError, ZeroDivisionError):
    code = "division_by_zero"


class ParseError(QLagrangeError, ValueError):
    """Malformed polynomial or CF-word literal; ``position`` is a 0-based offset."""

    code = "syntax_error"

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class CoefficientOutOfRange(QLagrangeError, ValueError):
    code = "coefficient_out_of_range"


class InvalidField(QLagrangeError, ValueError):
    code = "invalid_field"


class InsufficientPrecision(QLagrangeError, ArithmeticError):
    code = "insufficient_precision"

    def __init__(self, message, certified=None):
        super().__init__(message)
        self.certified = certified


class PrecisionExhausted(InsufficientPrecision):
    code = "precision_exhausted"


class ConstantPartialQuotient(QLagrangeError, ValueError):
    code = "constant_partial_quotient"


class NotQuadratic(QLagrangeError, ValueError):
    code = "not_quadratic"


class NotPurelyPeriodic(QLagrangeError, ValueError):
    code = "not_purely_periodic"


class ThetaMembership(QLagrangeError, ValueError):
    """A match against an orbit tail word ran past the Fine-Wilf bound."""

    code = "theta_membership"


class InTheta(QLagrangeError, ValueError):
    """The approximated series lies in the orbit of alpha or its conjugate."""

    code = "in_theta"


class EmptyWindow(QLagrangeError, LookupError):
    code = "empty_window"


class HallBoundViolation(QLagrangeError, RuntimeError):
    code = "hall_bound_violation"
    exit_code = 3
