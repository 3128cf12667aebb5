"""Exception hierarchy.

``MathError`` covers failures that are mathematical in nature (poles,
missing preimages, violated estimates); the CLI maps them to exit code 1.
``ParseError`` is a usage error (exit code 2).
"""


class S2StarError(Exception):
    """Base class for all package errors."""


class MathError(S2StarError):
    pass


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class EvalAtPole(MathError):
    def __init__(self, pole, message=None):
        self.pole = pole
        super().__init__(message or f"evaluation at a pole: h = {pole}")


class NotRegularAtZero(MathError):
    pass


class HbarAtPole(MathError):
    def __init__(self, hbar, message=None):
        self.hbar = hbar
        super().__init__(message or f"h = {hbar} lies in the pole set of the active twist coefficients")


class NotInCartanPart(MathError):
    pass


class NotInNilpotentPart(MathError):
    pass


class SingularBlock(MathError):
    pass


class NotNilpotent(MathError):
    pass


class NotInvariant(MathError):
    pass


class NoPreimageWithinBound(MathError):
    pass


class NoPreimageWithinDegree(MathError):
    pass


class ChartConversionFailed(MathError):
    pass


class NotTraceFree(MathError):
    pass


class NoOrientationValid(MathError):
    pass


class BothOrientationsValid(MathError):
    pass


class DiscTouchesNaturals(MathError):
    pass


class EstimateViolation(MathError):
    def __init__(self, record, message=None):
        self.record = record
        super().__init__(message or f"certified estimate violated: {record}")


class ParseError(S2StarError, ValueError):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = message
        if position is not None:
            detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
