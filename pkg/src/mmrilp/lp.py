"""Bounded-variable primal simplex on a dense tableau.

The solver handles ``min c'x`` subject to ``Ax <= b`` and column bounds
``lo <= x <= hi``, where bounds may be infinite. Nonbasic columns rest at one
of their bounds, or at zero when they are free.

>>> from mmrilp.model import LinearConstraint, Sense
>>> problem = LpProblem(
...     objective=(3.0, 2.0),
...     bounds=((0.0, 1.0), (0.0, 1.0)),
...     rows=(LinearConstraint(((0, -1.0), (1, -1.0)), Sense.LE, -1.0),),
... )
>>> solution = solve_lp(problem)
>>> solution.status.value, solution.x, solution.objective
('OPTIMAL', (0.0, 1.0), 2.0)
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
import numpy.typing as npt

from mmrilp.errors import MalformedInstance
from mmrilp.errors import NumericalBreakdown
from mmrilp.model import LinearConstraint
from mmrilp.model import Sense


Array = npt.NDArray[np.float64]
Bound = Tuple[float, float]

PIVOT_TOLERANCE = 1e-10
OPTIMALITY_TOLERANCE = 1e-9
PRIMAL_TOLERANCE = 1e-9
INFEASIBILITY_TOLERANCE = 1e-7
DEGENERATE_STEP = 1e-12
REFACTOR_INTERVAL = 64


class LpStatus(str, enum.Enum):
    """Outcome of a simplex run."""

    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"
    ITERATION_LIMIT = "ITERATION_LIMIT"


@dataclass(frozen=True)
class LpProblem:
    """A linear program in minimization form with LE rows."""

    objective: Tuple[float, ...]
    bounds: Tuple[Bound, ...]
    rows: Tuple[LinearConstraint, ...] = ()

    def __post_init__(self) -> None:
        """Validate the problem."""
        if len(self.bounds) != len(self.objective):
            raise MalformedInstance(
                f"{len(self.bounds)} bounds for {len(self.objective)} columns"
            )

        for index, (lo, hi) in enumerate(self.bounds):
            if lo > hi:
                raise MalformedInstance(f"column {index} has bounds {lo} > {hi}")

        for row in self.rows:
            if row.sense is not Sense.LE:
                raise MalformedInstance("LP rows must be LE rows")
            for index, _ in row.terms:
                if not 0 <= index < len(self.objective):
                    raise MalformedInstance(f"row refers to unknown column {index}")


@dataclass(frozen=True)
class LpSolution:
    """Result of :func:`solve_lp`."""

    status: LpStatus
    x: Optional[Tuple[float, ...]] = None
    objective: Optional[float] = None
    iterations: int = 0


def _resting_value(lo: float, hi: float) -> float:
    if math.isfinite(lo):
        return lo
    if math.isfinite(hi):
        return hi
    return 0.0


class _Simplex:
    """Tableau, basis, and primal values of one LP."""

    def __init__(
        self,
        matrix: Array,
        rhs: Array,
        lower: Array,
        upper: Array,
        basis: Sequence[int],
        value: Array,
        *,
        max_iterations: int,
        degeneracy_limit: int,
    ) -> None:
        """Initialize."""
        self.matrix = matrix
        self.rhs = rhs
        self.lower = lower
        self.upper = upper
        self.m, self.size = matrix.shape
        self.basis = np.array(basis, dtype=np.int64)
        self.is_basic = np.zeros(self.size, dtype=bool)
        self.is_basic[self.basis] = True
        self.value = value
        self.tableau = np.zeros_like(matrix)
        self.max_iterations = max_iterations
        self.degeneracy_limit = degeneracy_limit
        self.iterations = 0
        self.degenerate = 0
        self.bland = False
        self.refactor()

    def refactor(self) -> None:
        """Recompute the tableau and basic values from the basis."""
        if self.m == 0:
            return

        nonbasic = self.value.copy()
        nonbasic[self.basis] = 0.0
        residual = self.rhs - self.matrix @ nonbasic
        basis_matrix = self.matrix[:, self.basis]

        try:
            self.tableau = np.linalg.solve(basis_matrix, self.matrix)
            self.value[self.basis] = np.linalg.solve(basis_matrix, residual)
        except np.linalg.LinAlgError as error:
            raise NumericalBreakdown(f"singular basis: {error}") from error

    def _entering(self, reduced: Array) -> Optional[Tuple[int, int]]:
        movable = ~self.is_basic & (self.upper - self.lower > PRIMAL_TOLERANCE)
        increase = (
            movable
            & (reduced < -OPTIMALITY_TOLERANCE)
            & (self.value < self.upper - PRIMAL_TOLERANCE)
        )
        decrease = (
            movable
            & (reduced > OPTIMALITY_TOLERANCE)
            & (self.value > self.lower + PRIMAL_TOLERANCE)
        )
        eligible = increase | decrease

        if not eligible.any():
            return None

        if self.bland:
            column = int(np.flatnonzero(eligible)[0])
        else:
            column = int(np.argmax(np.where(eligible, np.abs(reduced), 0.0)))

        return column, 1 if increase[column] else -1

    def _leaving(self, column: int, change: Array) -> Tuple[float, Optional[int]]:
        """Return the step length and the leaving row, or None for a bound flip."""
        basic_value = self.value[self.basis]
        basic_lower = self.lower[self.basis]
        basic_upper = self.upper[self.basis]

        falling = (change > PIVOT_TOLERANCE) & np.isfinite(basic_lower)
        rising = (change < -PIVOT_TOLERANCE) & np.isfinite(basic_upper)
        steps = np.full(self.m, math.inf)

        with np.errstate(divide="ignore", invalid="ignore"):
            steps[falling] = (basic_value[falling] - basic_lower[falling]) / change[
                falling
            ]
            steps[rising] = (basic_upper[rising] - basic_value[rising]) / -change[
                rising
            ]

        steps = np.maximum(steps, 0.0)
        flip = self.upper[column] - self.lower[column]
        best = float(steps.min()) if self.m else math.inf

        if math.isinf(best) and math.isinf(flip):
            bounded = np.isfinite(basic_lower) | np.isfinite(basic_upper)
            tiny = (np.abs(change) > 0.0) & (np.abs(change) <= PIVOT_TOLERANCE)
            if (tiny & bounded).any():
                raise NumericalBreakdown(
                    f"only pivots below {PIVOT_TOLERANCE} for column {column}"
                )
            return math.inf, None

        if flip <= best:
            return float(flip), None

        ties = np.flatnonzero(steps <= best + DEGENERATE_STEP)
        if self.bland:
            row = int(ties[np.argmin(self.basis[ties])])
        else:
            row = int(ties[np.argmax(np.abs(change[ties]))])

        return best, row

    def _pivot(self, row: int, column: int) -> None:
        pivot = self.tableau[row, column]
        if abs(pivot) <= PIVOT_TOLERANCE:
            raise NumericalBreakdown(f"pivot {pivot} at row {row}, column {column}")

        factors = self.tableau[:, column].copy()
        factors[row] = 0.0
        self.tableau[row] /= pivot
        self.tableau -= np.outer(factors, self.tableau[row])

        leaving = self.basis[row]
        self.is_basic[leaving] = False
        self.is_basic[column] = True
        self.basis[row] = column

    def run(self, cost: Array) -> LpStatus:
        """Iterate until optimal, unbounded, or out of iterations."""
        while True:
            reduced = cost - cost[self.basis] @ self.tableau
            choice = self._entering(reduced)
            if choice is None:
                return LpStatus.OPTIMAL

            if self.iterations >= self.max_iterations:
                return LpStatus.ITERATION_LIMIT

            column, direction = choice
            change = direction * self.tableau[:, column]
            step, row = self._leaving(column, change)
            if math.isinf(step):
                return LpStatus.UNBOUNDED

            self.iterations += 1
            if step <= DEGENERATE_STEP:
                self.degenerate += 1
                if self.degenerate > self.degeneracy_limit:
                    self.bland = True

            self.value[self.basis] -= step * change
            self.value[column] += direction * step

            if row is None:
                bound = self.upper if direction > 0 else self.lower
                self.value[column] = bound[column]
            else:
                leaving = self.basis[row]
                bound = self.lower if change[row] > 0 else self.upper
                self.value[leaving] = bound[leaving]
                self._pivot(row, column)

            if self.iterations % REFACTOR_INTERVAL == 0:
                self.refactor()


def solve_arrays(
    objective: Array,
    lower: Array,
    upper: Array,
    matrix: Array,
    rhs: Array,
) -> LpSolution:
    """Solve ``min c'x, Ax <= b, lower <= x <= upper`` given dense arrays."""
    m, n = matrix.shape
    max_iterations = 100 * (m + n + 1)

    value = np.array(
        [_resting_value(lo, hi) for lo, hi in zip(lower, upper)], dtype=np.float64
    )
    residual = rhs - matrix @ value
    violated = np.flatnonzero(residual < -PRIMAL_TOLERANCE)
    k = len(violated)

    artificial = np.zeros((m, k))
    artificial[violated, np.arange(k)] = -1.0
    full = np.hstack([matrix, np.eye(m), artificial])

    full_lower = np.concatenate([lower, np.zeros(m + k)])
    full_upper = np.concatenate([upper, np.full(m, math.inf), np.full(k, math.inf)])
    full_value = np.concatenate([value, np.zeros(m + k)])

    basis = [n + row for row in range(m)]
    for position, row in enumerate(violated):
        basis[row] = n + m + position

    simplex = _Simplex(
        full,
        rhs.astype(np.float64),
        full_lower,
        full_upper,
        basis,
        full_value,
        max_iterations=max_iterations,
        degeneracy_limit=2 * (m + n),
    )

    if k:
        phase_one = np.concatenate([np.zeros(n + m), np.ones(k)])
        status = simplex.run(phase_one)
        if status is not LpStatus.OPTIMAL:
            return LpSolution(LpStatus.ITERATION_LIMIT, iterations=simplex.iterations)

        infeasibility = float(simplex.value[n + m :].sum())
        if infeasibility > INFEASIBILITY_TOLERANCE:
            return LpSolution(LpStatus.INFEASIBLE, iterations=simplex.iterations)

        simplex.upper[n + m :] = 0.0
        nonbasic = ~simplex.is_basic
        nonbasic[: n + m] = False
        simplex.value[nonbasic] = 0.0

    phase_two = np.concatenate([objective, np.zeros(m + k)])
    status = simplex.run(phase_two)
    if status is not LpStatus.OPTIMAL:
        return LpSolution(status, iterations=simplex.iterations)

    simplex.refactor()
    x = np.clip(simplex.value[:n], lower, upper)
    return LpSolution(
        LpStatus.OPTIMAL,
        x=tuple(float(v) for v in x),
        objective=float(objective @ x),
        iterations=simplex.iterations,
    )


def dense_rows(rows: Sequence[LinearConstraint], columns: int) -> Tuple[Array, Array]:
    """Convert sparse LE rows into a dense matrix and right-hand side."""
    matrix = np.zeros((len(rows), columns))
    rhs = np.zeros(len(rows))
    for position, row in enumerate(rows):
        for index, coefficient in row.terms:
            matrix[position, index] = coefficient
        rhs[position] = row.rhs
    return matrix, rhs


def solve_lp(p: LpProblem) -> LpSolution:
    """Solve the linear program with the bounded-variable primal simplex.

    Bland's rule takes over after ``2 * (rows + cols)`` degenerate pivots, and
    the run stops with ``ITERATION_LIMIT`` after ``100 * (rows + cols + 1)``
    pivots.

    Args:
        p: The linear program.

    Returns:
        The solution, with ``x`` and ``objective`` set when optimal.
    """
    matrix, rhs = dense_rows(p.rows, len(p.objective))
    lower = np.array([lo for lo, _ in p.bounds], dtype=np.float64)
    upper = np.array([hi for _, hi in p.bounds], dtype=np.float64)
    objective = np.array(p.objective, dtype=np.float64)
    return solve_arrays(objective, lower, upper, matrix, rhs)
