"""Utilities for testing."""
from typing import Sequence
from typing import Tuple

from mmrilp.model import BinarySolution
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import LinearConstraint
from mmrilp.model import Sense


def bits(text: str) -> BinarySolution:
    """Create a solution from a bit string such as ``"01"``."""
    return BinarySolution(tuple(int(char) for char in text))


def row(sense: Sense, rhs: float, *terms: Tuple[int, float]) -> LinearConstraint:
    """Create a constraint from its terms."""
    return LinearConstraint(tuple(terms), sense, rhs)


def instance(
    lower: Sequence[float],
    upper: Sequence[float],
    *constraints: LinearConstraint,
    name: str = "test",
) -> IntervalIlpInstance:
    """Create an instance."""
    return IntervalIlpInstance(name, tuple(lower), tuple(upper), constraints)


def trace_is_monotone(trace: Sequence[Tuple[float, float]], tolerance: float) -> bool:
    """Return True if lower bounds rise, upper bounds fall, and they never cross."""
    for (lower, upper), (next_lower, next_upper) in zip(trace, trace[1:]):
        if next_lower < lower - tolerance or next_upper > upper + tolerance:
            return False
    return all(lower <= upper + tolerance for lower, upper in trace)
