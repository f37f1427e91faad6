"""Seeded random instances.

Instances are a pure function of :class:`GeneratorParams`. Random numbers come
from NumPy's Philox counter-based bit generator, read as raw 64-bit words and
converted with fixed formulas, so the same seed gives bit-identical instances
on every platform and NumPy version.

Every number is rounded to 12 significant digits, the precision of the RILP
writer, so generated instances survive a write and parse unchanged.

>>> instance = generate_instance(GeneratorParams(n=5, m=2, seed=7))
>>> instance.name, instance.n, len(instance.constraints)
('gen-n5-m2-s7', 5, 2)
>>> instance == generate_instance(GeneratorParams(n=5, m=2, seed=7))
True
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List
from typing import Tuple

import numpy as np

from mmrilp.errors import InvalidParameters
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import LinearConstraint
from mmrilp.model import Sense
from mmrilp.model import normalize


SIGNIFICANT_DIGITS = 12
MAX_COEFFICIENT = 50


class InstanceKind(str, enum.Enum):
    """Shape of the constraint system."""

    PACKING = "packing"
    COVERING = "covering"


@dataclass(frozen=True)
class GeneratorParams:
    """Parameters of :func:`generate_instance`.

    Attributes:
        n: Number of variables.
        m: Number of constraints.
        density: Probability that a row uses a given variable.
        c_min: Smallest base cost.
        c_max: Largest base cost.
        spread: Relative half-width of the cost intervals.
        rhs_fraction: Right-hand side as a fraction of the row's coefficient sum.
        seed: Seed of the random stream.
        kind: Packing rows keep the zero vector feasible, covering rows the
            all-ones vector.
    """

    n: int
    m: int
    density: float = 0.3
    c_min: int = 1
    c_max: int = 100
    spread: float = 0.5
    rhs_fraction: float = 0.5
    seed: int = 0
    kind: InstanceKind = InstanceKind.PACKING

    def __post_init__(self) -> None:
        """Validate the parameters."""
        if self.n < 1:
            raise InvalidParameters(f"need at least one variable, got {self.n}")
        if self.m < 0:
            raise InvalidParameters(f"number of rows must be >= 0, got {self.m}")
        if not 1 <= self.c_min <= self.c_max:
            raise InvalidParameters(
                f"need 1 <= c_min <= c_max, got [{self.c_min}, {self.c_max}]"
            )
        for name in ("density", "spread", "rhs_fraction"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise InvalidParameters(f"{name} must lie in (0, 1], got {value}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidParameters(f"seed must be a 64-bit integer, got {self.seed}")

    @property
    def name(self) -> str:
        """Return the instance name, which ends with the seed."""
        prefix = "gen" if self.kind is InstanceKind.PACKING else "cover"
        return f"{prefix}-n{self.n}-m{self.m}-s{self.seed}"


class RandomStream:
    """Uniform numbers from a Philox stream, converted without NumPy methods."""

    def __init__(self, seed: int) -> None:
        """Initialize."""
        self.bits = np.random.Philox(seed)

    def word(self) -> int:
        """Return the next 64-bit word."""
        return int(self.bits.random_raw())

    def real(self) -> float:
        """Return a real in [0, 1) from the top 53 bits of a word."""
        return (self.word() >> 11) * 2.0 ** -53

    def uniform(self, low: float, high: float) -> float:
        """Return a real in [low, high]."""
        return low + (high - low) * self.real()

    def integer(self, low: int, high: int) -> int:
        """Return an integer in [low, high]."""
        return min(high, low + math.floor(self.real() * (high - low + 1)))


def quantize(value: float) -> float:
    """Round to 12 significant digits."""
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def _intervals(
    p: GeneratorParams, stream: RandomStream
) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    lower, upper = [], []
    for _ in range(p.n):
        c = stream.integer(p.c_min, p.c_max)
        low = quantize(stream.uniform((1.0 - p.spread) * c, c))
        high = quantize(stream.uniform(c, (1.0 + p.spread) * c))
        if p.kind is InstanceKind.PACKING:
            low, high = -high, -low
        lower.append(low)
        upper.append(high)
    return tuple(lower), tuple(upper)


def _selections(p: GeneratorParams, stream: RandomStream) -> List[List[int]]:
    selections: List[List[int]] = []
    for _ in range(p.m):
        selected: List[int] = []
        while not selected:
            selected = [index for index in range(p.n) if stream.real() < p.density]
        selections.append(selected)

    # Every variable appears in at least one row.
    if selections:
        covered = {index for selected in selections for index in selected}
        for index in range(p.n):
            if index not in covered:
                selections[stream.integer(0, p.m - 1)].append(index)

    return [sorted(selected) for selected in selections]


def _row(
    p: GeneratorParams, selected: List[int], stream: RandomStream
) -> LinearConstraint:
    terms = tuple(
        (index, float(stream.integer(1, MAX_COEFFICIENT))) for index in selected
    )

    total = sum(coefficient for _, coefficient in terms)
    rhs = float(math.ceil(quantize(p.rhs_fraction * total)))

    sense = Sense.LE if p.kind is InstanceKind.PACKING else Sense.GE
    return LinearConstraint(terms, sense, rhs)


def generate_instance(p: GeneratorParams) -> IntervalIlpInstance:
    """Generate a normalized instance with at least one feasible solution.

    Base costs are integers in ``[c_min, c_max]``. The interval around a base
    cost ``c`` has its lower end in ``[(1 - spread) c, c]`` and its upper end in
    ``[c, (1 + spread) c]``. Packing instances negate the intervals, which
    turns the multi-knapsack into a minimization whose optimum is not trivially
    zero. Each row selects variables with probability ``density``; a variable
    left out of every row joins a row chosen at random, so no variable is
    unconstrained.
    """
    stream = RandomStream(p.seed)
    lower, upper = _intervals(p, stream)
    rows = tuple(_row(p, selected, stream) for selected in _selections(p, stream))
    return normalize(IntervalIlpInstance(p.name, lower, upper, rows))
