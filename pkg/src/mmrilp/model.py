"""Instances, scenarios, and binary solutions.

An instance of the min-max regret 0-1 ILP keeps the constraint system
``Ax <= b`` and, instead of a cost vector, an interval ``[l_i, u_i]`` for
every objective coefficient.

>>> ex1 = IntervalIlpInstance(
...     name="ex1",
...     lower=(1.0, 2.0),
...     upper=(3.0, 2.0),
...     constraints=(
...         LinearConstraint(((0, 1.0), (1, 1.0)), Sense.GE, 1.0),
...     ),
... )
>>> normalize(ex1).constraints[0]
LinearConstraint(terms=((0, -1.0), (1, -1.0)), sense=<Sense.LE: 'LE'>, rhs=-1.0)
>>> is_feasible(ex1, BinarySolution((1, 0)))
True
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Iterable
from typing import Iterator
from typing import Sequence
from typing import Tuple

from mmrilp.errors import DimensionMismatch
from mmrilp.errors import InvalidScenario
from mmrilp.errors import MalformedInstance


FEASIBILITY_TOLERANCE = 1e-9

_NAME = re.compile(r"[^\s#]+")


class Sense(str, enum.Enum):
    """Relation between the row activity and the right-hand side."""

    LE = "LE"
    GE = "GE"
    EQ = "EQ"


Term = Tuple[int, float]


@dataclass(frozen=True)
class LinearConstraint:
    """A sparse linear row ``sum(a_i * x_i) <sense> rhs``."""

    terms: Tuple[Term, ...]
    sense: Sense
    rhs: float

    def activity(self, x: Sequence[float]) -> float:
        """Evaluate the left-hand side at ``x``."""
        total = 0.0
        for index, coefficient in self.terms:
            total += coefficient * x[index]
        return total

    def is_satisfied(self, x: Sequence[float], tolerance: float) -> bool:
        """Return True if ``x`` satisfies the row within ``tolerance``."""
        activity = self.activity(x)
        if self.sense is Sense.LE:
            return activity <= self.rhs + tolerance
        if self.sense is Sense.GE:
            return activity >= self.rhs - tolerance
        return abs(activity - self.rhs) <= tolerance

    def negated(self) -> LinearConstraint:
        """Flip the sign of both sides, turning GE into LE."""
        sense = {Sense.LE: Sense.GE, Sense.GE: Sense.LE, Sense.EQ: Sense.EQ}
        terms = tuple((index, -coefficient) for index, coefficient in self.terms)
        return LinearConstraint(terms, sense[self.sense], -self.rhs)

    def sorted(self) -> LinearConstraint:
        """Return the row with terms ordered by variable index."""
        return LinearConstraint(tuple(sorted(self.terms)), self.sense, self.rhs)


def check_constraint(constraint: LinearConstraint, n: int) -> None:
    """Validate indices and values of a row against ``n`` variables."""
    if not constraint.terms:
        raise MalformedInstance("constraint without terms")

    indices = [index for index, _ in constraint.terms]
    if len(set(indices)) != len(indices):
        raise MalformedInstance(f"duplicate variable index in constraint {indices}")

    for index, coefficient in constraint.terms:
        if not 0 <= index < n:
            raise MalformedInstance(f"variable index {index} out of range 0..{n - 1}")
        if not math.isfinite(coefficient):
            raise MalformedInstance(f"coefficient of variable {index} is not finite")

    if not math.isfinite(constraint.rhs):
        raise MalformedInstance("right-hand side is not finite")


@dataclass(frozen=True)
class IntervalIlpInstance:
    """A 0-1 ILP whose objective coefficients are known only as intervals."""

    name: str
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    constraints: Tuple[LinearConstraint, ...] = ()

    def __post_init__(self) -> None:
        """Validate the instance."""
        if not _NAME.fullmatch(self.name):
            raise MalformedInstance(
                f"name {self.name!r} must be one token without whitespace or '#'"
            )

        if len(self.lower) != len(self.upper):
            raise MalformedInstance(
                f"{len(self.lower)} lower bounds but {len(self.upper)} upper bounds"
            )

        if not self.lower:
            raise MalformedInstance("instance without variables")

        for index, (low, high) in enumerate(zip(self.lower, self.upper)):
            if not (math.isfinite(low) and math.isfinite(high)):
                raise MalformedInstance(f"interval of variable {index} is not finite")
            if low > high:
                raise MalformedInstance(
                    f"interval of variable {index} is empty: [{low}, {high}]"
                )

        for constraint in self.constraints:
            check_constraint(constraint, self.n)

    @property
    def n(self) -> int:
        """Return the number of variables."""
        return len(self.lower)

    @property
    def is_normalized(self) -> bool:
        """Return True if every row is a LE row with sorted terms."""
        return all(
            constraint.sense is Sense.LE and constraint == constraint.sorted()
            for constraint in self.constraints
        )

    def with_constraints(
        self, constraints: Iterable[LinearConstraint]
    ) -> IntervalIlpInstance:
        """Return a copy with the given rows."""
        return IntervalIlpInstance(
            self.name, self.lower, self.upper, tuple(constraints)
        )


@dataclass(frozen=True)
class Scenario:
    """One concrete cost vector within the intervals of an instance."""

    costs: Tuple[float, ...]

    @classmethod
    def of(cls, instance: IntervalIlpInstance, costs: Iterable[float]) -> Scenario:
        """Build a scenario, checking it against the intervals of ``instance``."""
        costs = tuple(float(cost) for cost in costs)
        _check_dimension(len(costs), instance.n, "scenario")

        for index, (cost, low, high) in enumerate(
            zip(costs, instance.lower, instance.upper)
        ):
            if not low - FEASIBILITY_TOLERANCE <= cost <= high + FEASIBILITY_TOLERANCE:
                raise InvalidScenario(
                    f"cost {cost} of variable {index} outside [{low}, {high}]"
                )

        return cls(costs)

    def __len__(self) -> int:
        """Return the number of coefficients."""
        return len(self.costs)


@dataclass(frozen=True, order=True)
class BinarySolution:
    """An assignment of 0 or 1 to every variable.

    Solutions order lexicographically, which is the order of ``x`` read as a
    big-endian bit string.
    """

    x: Tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate the entries."""
        if any(value not in (0, 1) for value in self.x):
            raise MalformedInstance(f"solution entries must be 0 or 1: {self.x}")

    def __len__(self) -> int:
        """Return the number of variables."""
        return len(self.x)

    def __iter__(self) -> Iterator[int]:
        """Iterate over the entries."""
        return iter(self.x)

    def __str__(self) -> str:
        """Render as a bit string."""
        return "".join(str(value) for value in self.x)


def _check_dimension(actual: int, expected: int, what: str) -> None:
    if actual != expected:
        raise DimensionMismatch(f"{what} has length {actual}, expected {expected}")


def normalize(instance: IntervalIlpInstance) -> IntervalIlpInstance:
    """Rewrite every row into ``<=`` form with terms sorted by index.

    GE rows are negated, EQ rows become a pair of opposite LE rows.
    """

    def _generate() -> Iterator[LinearConstraint]:
        for constraint in instance.constraints:
            if constraint.sense is Sense.LE:
                yield constraint.sorted()
            elif constraint.sense is Sense.GE:
                yield constraint.negated().sorted()
            else:
                terms, rhs = constraint.terms, constraint.rhs
                yield LinearConstraint(terms, Sense.LE, rhs).sorted()
                yield LinearConstraint(terms, Sense.GE, rhs).negated().sorted()

    return instance.with_constraints(_generate())


def is_feasible(instance: IntervalIlpInstance, x: BinarySolution) -> bool:
    """Return True if ``x`` satisfies every row of the instance."""
    _check_dimension(len(x), instance.n, "solution")
    return all(
        constraint.is_satisfied(x.x, FEASIBILITY_TOLERANCE)
        for constraint in instance.constraints
    )


def cost(x: BinarySolution, s: Scenario) -> float:
    """Return ``F(x, S)``, summed in index order."""
    _check_dimension(len(x), len(s), "solution")
    total = 0.0
    for value, coefficient in zip(x.x, s.costs):
        total += coefficient * value
    return total
