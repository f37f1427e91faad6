"""Exceptions."""
from typing import Optional


class MmrIlpError(Exception):
    """Base class for errors raised by this package."""


class MalformedInstance(MmrIlpError):
    """The instance violates a structural invariant."""


class DimensionMismatch(MmrIlpError):
    """Vectors of different length were combined."""


class InvalidScenario(MmrIlpError):
    """A scenario cost lies outside its interval."""


class LambdaOutOfRange(MmrIlpError):
    """The interpolation parameter is not in [0, 1]."""


class InvalidParameters(MmrIlpError, ValueError):
    """Algorithm or generator parameters are out of range."""


class NumericalBreakdown(MmrIlpError):
    """The simplex method ran out of usable pivots."""


class InfeasibleSolution(MmrIlpError):
    """The solution violates a constraint of the instance."""


class InfeasibleInstance(MmrIlpError):
    """The instance has no feasible solution."""


class EmptyPool(MmrIlpError):
    """The master problem needs at least one cut."""


class StalledDecomposition(MmrIlpError):
    """The decomposition repeated a cut without closing the gap."""


class TooLarge(MmrIlpError):
    """The instance is too large for exhaustive enumeration."""


class ZeroBaseline(MmrIlpError):
    """The relative deviation is undefined for a zero baseline."""


class ParseError(MmrIlpError):
    """The instance text does not follow the RILP format."""

    def __init__(self, reason: str, line: Optional[int] = None) -> None:
        """Initialize."""
        self.reason = reason
        self.line = line
        message = reason if line is None else f"line {line}: {reason}"
        super().__init__(message)


class SchemaError(MmrIlpError):
    """A results file does not have the expected columns or values."""
