"""Exception types shared across the package."""


class HolomapError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(HolomapError, ZeroDivisionError):
    pass


class DimensionMismatch(HolomapError):
    pass


class NonPositiveParameter(HolomapError):
    pass


class UnsupportedStratum(HolomapError):
    pass


class UnsupportedDimension(HolomapError):
    pass


class PreconditionViolated(HolomapError):
    pass


class NotInBall(HolomapError):
    pass


class NotUnitary(HolomapError):
    pass


class NotUnimodular(HolomapError):
    pass


class NotAStabilizer(HolomapError):
    pass


class CongruenceViolated(HolomapError):
    pass


class BranchViolated(HolomapError):
    pass


class DegenerateBlaschke(HolomapError):
    pass


class ZeroFixRequired(HolomapError):
    pass


class NotInvertible(HolomapError):
    pass


class WrongNodeType(HolomapError):
    pass


class DomainViolation(HolomapError):
    pass


class InstanceTooLarge(HolomapError):
    pass


class ParseError(HolomapError):
    """Syntax error with a 1-based (line, column) position."""

    def __init__(self, position, expected, found):
        self.position = position
        self.expected = expected
        self.found = found
        line, col = position
        super().__init__(
            f"parse error at line {line}, column {col}: "
            f"expected {expected}, found {found}"
        )
