"""Scenarios and robustness costs.

The regret of ``x`` is largest in the scenario that charges the upper cost to
the variables ``x`` uses and the lower cost to all others. The robustness cost
``Z(x)`` is therefore one deterministic ILP away:

>>> from mmrilp.model import BinarySolution, IntervalIlpInstance
>>> from mmrilp.model import LinearConstraint, Sense
>>> ex1 = IntervalIlpInstance(
...     "ex1", (1.0, 2.0), (3.0, 2.0),
...     (LinearConstraint(((0, -1.0), (1, -1.0)), Sense.LE, -1.0),),
... )
>>> evaluation = robustness_cost(ex1, BinarySolution((1, 0)))
>>> evaluation.worst.costs, evaluation.adversary.x, evaluation.z
((3.0, 2.0), (0, 1), 1.0)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from mmrilp.errors import DimensionMismatch
from mmrilp.errors import InfeasibleSolution
from mmrilp.errors import LambdaOutOfRange
from mmrilp.milp import MilpProblem
from mmrilp.milp import MilpResult
from mmrilp.milp import MilpStatus
from mmrilp.milp import solve_milp
from mmrilp.model import BinarySolution
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import Scenario
from mmrilp.model import cost
from mmrilp.model import is_feasible
from mmrilp.model import normalize


class EvaluationStatus(str, enum.Enum):
    """Whether the adversary problem was solved to optimality."""

    EXACT = "EXACT"
    TIME_LIMIT = "TIME_LIMIT"


@dataclass(frozen=True)
class RegretEvaluation:
    """The robustness cost of a solution, with its certificate.

    With status ``TIME_LIMIT``, ``f_star`` is the adversary's dual bound, so
    ``z`` overestimates the robustness cost.
    """

    x: BinarySolution
    worst: Scenario
    f_x: float
    f_star: float
    adversary: BinarySolution
    z: float
    status: EvaluationStatus


def worst_case_scenario(instance: IntervalIlpInstance, x: BinarySolution) -> Scenario:
    """Return the scenario maximizing the regret of ``x``."""
    if len(x) != instance.n:
        raise DimensionMismatch(f"solution has length {len(x)}, expected {instance.n}")
    return Scenario.of(
        instance,
        (
            high if value else low
            for value, low, high in zip(x.x, instance.lower, instance.upper)
        ),
    )


def scenario_at(instance: IntervalIlpInstance, lam: float) -> Scenario:
    """Interpolate between the lower (0) and the upper (1) scenario."""
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda must lie in [0, 1], got {lam}")
    return Scenario.of(
        instance,
        (
            min(high, max(low, (1.0 - lam) * low + lam * high))
            for low, high in zip(instance.lower, instance.upper)
        ),
    )


def deterministic_problem(
    instance: IntervalIlpInstance,
    scenario: Scenario,
    time_limit: Optional[float] = None,
) -> MilpProblem:
    """Return the 0-1 ILP of the instance under fixed costs."""
    if not instance.is_normalized:
        instance = normalize(instance)
    return MilpProblem(
        objective=scenario.costs,
        rows=instance.constraints,
        time_limit=time_limit,
    )


def solve_deterministic(
    instance: IntervalIlpInstance,
    scenario: Scenario,
    time_limit: Optional[float] = None,
) -> MilpResult:
    """Solve the 0-1 ILP of the instance under fixed costs."""
    return solve_milp(deterministic_problem(instance, scenario, time_limit))


def robustness_cost(
    instance: IntervalIlpInstance,
    x: BinarySolution,
    time_limit: Optional[float] = None,
) -> RegretEvaluation:
    """Compute ``Z(x)`` by solving the adversary problem in ``S^x``.

    Args:
        instance: The instance.
        x: A feasible solution.
        time_limit: Seconds for the adversary ILP, or None for no limit.

    Returns:
        The robustness cost and the scenario and adversary attaining it.

    Raises:
        InfeasibleSolution: ``x`` violates a constraint.
    """
    if not is_feasible(instance, x):
        raise InfeasibleSolution(f"solution {x} violates the constraints")

    worst = worst_case_scenario(instance, x)
    f_x = cost(x, worst)
    result = solve_deterministic(instance, worst, time_limit)

    if result.status is MilpStatus.OPTIMAL and result.x is not None:
        status = EvaluationStatus.EXACT
        f_star = result.objective
        adversary = result.x
    elif result.status is MilpStatus.TIME_LIMIT:
        status = EvaluationStatus.TIME_LIMIT
        f_star = result.dual_bound
        adversary = result.x if result.x is not None else x
    else:
        raise InfeasibleSolution(f"no adversary solution found for {x}")

    return RegretEvaluation(
        x=x,
        worst=worst,
        f_x=f_x,
        f_star=f_star,
        adversary=adversary,
        z=f_x - f_star,
        status=status,
    )
