"""Exhaustive enumeration of small instances.

These functions share nothing with the solvers except the instance model, so
their results can be used to check the solvers.

>>> from mmrilp.model import IntervalIlpInstance, LinearConstraint, Sense
>>> ex1 = IntervalIlpInstance(
...     "ex1", (1.0, 2.0), (3.0, 2.0),
...     (LinearConstraint(((0, -1.0), (1, -1.0)), Sense.LE, -1.0),),
... )
>>> [str(x) for x in enumerate_feasible(ex1)]
['01', '10', '11']
>>> x, z = exact_minmax_regret(ex1)
>>> str(x), z
('01', 1.0)
"""
from __future__ import annotations

import itertools
import time
from typing import List
from typing import Tuple

import numpy as np
import numpy.typing as npt

from mmrilp.errors import InfeasibleInstance
from mmrilp.errors import InfeasibleSolution
from mmrilp.errors import TooLarge
from mmrilp.model import BinarySolution
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import is_feasible
from mmrilp.regret import EvaluationStatus
from mmrilp.regret import RegretEvaluation
from mmrilp.regret import worst_case_scenario
from mmrilp.report import SolveReport
from mmrilp.report import Status


MAX_VARIABLES = 25

Matrix = npt.NDArray[np.float64]


def enumerate_feasible(instance: IntervalIlpInstance) -> List[BinarySolution]:
    """Return every feasible solution in lexicographic order.

    Raises:
        TooLarge: The instance has more than 25 variables.
    """
    if instance.n > MAX_VARIABLES:
        raise TooLarge(
            f"cannot enumerate 2^{instance.n} assignments"
            f" (at most {MAX_VARIABLES} variables)"
        )

    solutions = (
        BinarySolution(values)
        for values in itertools.product((0, 1), repeat=instance.n)
    )
    return [x for x in solutions if is_feasible(instance, x)]


def _worst_costs(instance: IntervalIlpInstance, x: BinarySolution) -> Matrix:
    return np.array(worst_case_scenario(instance, x).costs, dtype=np.float64)


def _regret_in_worst_case(
    instance: IntervalIlpInstance,
    feasible: Matrix,
    row: int,
) -> Tuple[float, int]:
    """Return ``Z`` of the solution in ``row`` and the row of its adversary."""
    x = BinarySolution(tuple(int(value) for value in feasible[row]))
    values = feasible @ _worst_costs(instance, x)
    adversary = int(np.argmin(values))
    return float(values[row] - values[adversary]), adversary


def _matrix(solutions: List[BinarySolution]) -> Matrix:
    return np.array([x.x for x in solutions], dtype=np.float64)


def exact_robustness(instance: IntervalIlpInstance, x: BinarySolution) -> float:
    """Return ``Z(x)`` by comparing against every feasible solution.

    Raises:
        TooLarge: The instance has more than 25 variables.
        InfeasibleSolution: ``x`` violates a constraint.
    """
    if not is_feasible(instance, x):
        raise InfeasibleSolution(f"solution {x} violates the constraints")

    feasible = enumerate_feasible(instance)
    z, _ = _regret_in_worst_case(instance, _matrix(feasible), feasible.index(x))
    return z


def exact_minmax_regret(instance: IntervalIlpInstance) -> Tuple[BinarySolution, float]:
    """Return the lexicographically smallest min-max regret solution and ``Z``.

    Raises:
        TooLarge: The instance has more than 25 variables.
        InfeasibleInstance: The instance has no feasible solution.
    """
    x, z, _ = _minimize(instance)
    return x, z


def _minimize(
    instance: IntervalIlpInstance,
) -> Tuple[BinarySolution, float, BinarySolution]:
    feasible = enumerate_feasible(instance)
    if not feasible:
        raise InfeasibleInstance(f"instance {instance.name!r} has no solution")

    matrix = _matrix(feasible)
    regrets = [
        _regret_in_worst_case(instance, matrix, row) for row in range(len(feasible))
    ]
    best = int(np.argmin([z for z, _ in regrets]))
    z, adversary = regrets[best]
    return feasible[best], z, feasible[adversary]


def solve_brute(instance: IntervalIlpInstance) -> SolveReport:
    """Solve by enumeration and report like the other algorithms."""
    start = time.monotonic()
    x, z, adversary = _minimize(instance)

    worst = worst_case_scenario(instance, x)
    f_x = float(np.dot(x.x, worst.costs))
    evaluation = RegretEvaluation(
        x=x,
        worst=worst,
        f_x=f_x,
        f_star=f_x - z,
        adversary=adversary,
        z=z,
        status=EvaluationStatus.EXACT,
    )
    return SolveReport(
        algorithm="brute",
        instance=instance.name,
        status=Status.OPTIMAL,
        incumbent=x,
        z=z,
        lower_bound=z,
        elapsed=time.monotonic() - start,
        evaluation=evaluation,
    )
