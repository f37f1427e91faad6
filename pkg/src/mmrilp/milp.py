"""Depth-first branch and bound for 0-1 programs.

Two shapes are supported: pure binary programs, and binary programs with a
single free continuous column ``theta`` that is maximized through a negative
objective coefficient and bounded above by rows with a positive ``theta``
coefficient. The second shape is the master problem of the decomposition.

The search order fixes which optimum is returned when there are ties:

- nodes are explored depth-first, the 0-branch before the 1-branch;
- the branching variable is the lowest-index free variable whose LP value is
  fractional, else the lowest-index free variable;
- the incumbent changes only on strict improvement.

>>> from mmrilp.model import LinearConstraint, Sense
>>> problem = MilpProblem(
...     objective=(3.0, 2.0),
...     rows=(LinearConstraint(((0, -1.0), (1, -1.0)), Sense.LE, -1.0),),
... )
>>> result = solve_milp(problem)
>>> result.status.value, result.x.x, result.objective
('OPTIMAL', (0, 1), 2.0)
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np

from mmrilp.errors import InvalidParameters
from mmrilp.errors import MalformedInstance
from mmrilp.lp import LpStatus
from mmrilp.lp import dense_rows
from mmrilp.lp import solve_arrays
from mmrilp.model import FEASIBILITY_TOLERANCE
from mmrilp.model import BinarySolution
from mmrilp.model import LinearConstraint
from mmrilp.model import Sense
from mmrilp.utils import Deadline


FRACTIONALITY = 1e-6
IMPROVEMENT = 1e-9
CHECK_INTERVAL = 64

Fixing = Tuple[Optional[int], ...]


class MilpStatus(str, enum.Enum):
    """Outcome of a branch-and-bound run."""

    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    TIME_LIMIT = "TIME_LIMIT"


@dataclass(frozen=True)
class Theta:
    """The continuous column of the master problem."""

    objective: float = -1.0


@dataclass(frozen=True)
class MilpProblem:
    """A 0-1 program, optionally with the ``theta`` column at index ``n``."""

    objective: Tuple[float, ...]
    rows: Tuple[LinearConstraint, ...] = ()
    theta: Optional[Theta] = None
    time_limit: Optional[float] = None
    cutoff: Optional[float] = None

    def __post_init__(self) -> None:
        """Validate the problem."""
        if not self.objective:
            raise MalformedInstance("problem without binary columns")

        for row in self.rows:
            if row.sense is not Sense.LE:
                raise MalformedInstance("rows must be LE rows")
            for index, coefficient in row.terms:
                if not 0 <= index < self.columns:
                    raise MalformedInstance(f"row refers to unknown column {index}")
                if index == self.n and coefficient <= 0:
                    raise InvalidParameters("theta may only be bounded from above")

        if self.theta is not None:
            if self.theta.objective >= 0:
                raise InvalidParameters("theta must have a negative objective")
            if not any(self._bounds_theta(row) for row in self.rows):
                raise InvalidParameters("theta needs at least one bounding row")

        if self.time_limit is not None and self.time_limit < 0:
            raise InvalidParameters("time limit must be non-negative")

    @property
    def n(self) -> int:
        """Return the number of binary columns."""
        return len(self.objective)

    @property
    def columns(self) -> int:
        """Return the number of columns including theta."""
        return self.n + (self.theta is not None)

    def _bounds_theta(self, row: LinearConstraint) -> bool:
        return self.theta is not None and any(index == self.n for index, _ in row.terms)


@dataclass(frozen=True)
class MilpResult:
    """Result of :func:`solve_milp`.

    ``x`` is None when no feasible solution was found; ``objective`` is then
    infinite.
    """

    status: MilpStatus
    x: Optional[BinarySolution]
    theta: Optional[float]
    objective: float
    nodes: int
    dual_bound: float


def _complete(fixing: Fixing) -> Optional[Tuple[int, ...]]:
    """Return the fixing as a 0-1 vector if no variable is free."""
    if any(value is None for value in fixing):
        return None
    return tuple(value for value in fixing if value is not None)


class _BranchAndBound:
    def __init__(self, problem: MilpProblem) -> None:
        self.problem = problem
        self.deadline = Deadline(problem.time_limit)
        self.matrix, self.rhs = dense_rows(problem.rows, problem.columns)
        objective = list(problem.objective)
        if problem.theta is not None:
            objective.append(problem.theta.objective)
        self.costs = np.array(objective, dtype=np.float64)
        self.incumbent: Optional[Tuple[int, ...]] = None
        self.incumbent_theta: Optional[float] = None
        self.objective = math.inf
        self.nodes = 0

    def leaf_value(self, x: Tuple[int, ...]) -> Tuple[float, Optional[float]]:
        """Return the exact objective and theta of a full fixing."""
        problem = self.problem
        theta = math.inf if problem.theta is not None else None

        for row in problem.rows:
            activity = 0.0
            weight = 0.0
            for index, coefficient in row.terms:
                if index == problem.n:
                    weight = coefficient
                else:
                    activity += coefficient * x[index]

            if weight > 0:
                assert theta is not None  # noqa: S101
                theta = min(theta, (row.rhs - activity) / weight)
            elif activity > row.rhs + FEASIBILITY_TOLERANCE:
                return math.inf, None

        total = 0.0
        for value, coefficient in zip(x, problem.objective):
            total += coefficient * value

        if problem.theta is not None and theta is not None:
            total += problem.theta.objective * theta

        return total, theta

    def lower_bound(self, fixing: Fixing) -> Tuple[float, Optional[Tuple[float, ...]]]:
        """Return the LP bound of a node and the LP solution, if any.

        A fully fixed node is bounded by its exact objective, an infeasible node
        by +inf. When the LP fails to finish the bound is -inf so the node is
        never pruned.
        """
        complete = _complete(fixing)
        if complete is not None:
            value, _ = self.leaf_value(complete)
            return value, None

        lower = [0.0 if value is None else float(value) for value in fixing]
        upper = [1.0 if value is None else float(value) for value in fixing]
        if self.problem.theta is not None:
            lower.append(-math.inf)
            upper.append(math.inf)

        solution = solve_arrays(
            self.costs,
            np.array(lower),
            np.array(upper),
            self.matrix,
            self.rhs,
        )

        if solution.status is LpStatus.OPTIMAL:
            assert solution.objective is not None  # noqa: S101
            return solution.objective, solution.x
        if solution.status is LpStatus.INFEASIBLE:
            return math.inf, None
        return -math.inf, None

    def _branching_variable(
        self, fixing: Fixing, relaxation: Optional[Tuple[float, ...]]
    ) -> int:
        free = [index for index, value in enumerate(fixing) if value is None]
        if relaxation is not None:
            for index in free:
                value = relaxation[index]
                if min(value, 1.0 - value) > FRACTIONALITY:
                    return index
        return free[0]

    def _result(self, status: MilpStatus, dual_bound: float) -> MilpResult:
        x = BinarySolution(self.incumbent) if self.incumbent is not None else None
        return MilpResult(
            status=status,
            x=x,
            theta=self.incumbent_theta,
            objective=self.objective,
            nodes=self.nodes,
            dual_bound=min(dual_bound, self.objective),
        )

    def run(self) -> MilpResult:
        problem = self.problem
        cutoff = problem.cutoff if problem.cutoff is not None else math.inf
        stack: List[Tuple[Fixing, float]] = [((None,) * problem.n, -math.inf)]

        while stack:
            if (
                self.nodes
                and self.nodes % CHECK_INTERVAL == 0
                and self.deadline.expired()
            ):
                return self._result(
                    MilpStatus.TIME_LIMIT, min(bound for _, bound in stack)
                )

            fixing, parent_bound = stack.pop()
            self.nodes += 1

            bound, relaxation = self.lower_bound(fixing)
            bound = max(bound, parent_bound)

            if bound == math.inf:
                continue
            if bound >= self.objective - IMPROVEMENT:
                continue
            if bound >= cutoff - IMPROVEMENT:
                continue

            x = _complete(fixing)
            if x is not None:
                value, theta = self.leaf_value(x)
                if value < self.objective - IMPROVEMENT:
                    self.incumbent, self.incumbent_theta = x, theta
                    self.objective = value
                continue

            index = self._branching_variable(fixing, relaxation)
            for branch in (1, 0):
                child = fixing[:index] + (branch,) + fixing[index + 1 :]
                stack.append((child, bound))

        if self.incumbent is None:
            return self._result(MilpStatus.INFEASIBLE, math.inf)
        return self._result(MilpStatus.OPTIMAL, self.objective)


def solve_milp(p: MilpProblem) -> MilpResult:
    """Solve the 0-1 program exactly, or until its time limit expires.

    With a cutoff, nodes whose bound reaches the cutoff are pruned, so an
    ``INFEASIBLE`` status then means that no solution beats the cutoff.

    Args:
        p: The problem.

    Returns:
        The best solution found and the proven dual bound.
    """
    return _BranchAndBound(p).run()
