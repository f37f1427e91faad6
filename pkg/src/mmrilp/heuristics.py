"""Scenario-based heuristics.

Each heuristic solves the deterministic problem in a few scenarios between
the lower and the upper cost vector, computes the robustness cost of every
solution found, and keeps the best one. AMU inspects the mean and the upper
scenario; SBA sweeps from ``alpha`` to ``beta`` in steps of ``gamma``.

>>> [round(lam, 2) for lam in target_lambdas(SbaParams(0.5, 1.0, 0.25))]
[0.5, 0.75, 1.0]
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict
from typing import Optional
from typing import Sequence
from typing import Tuple

from mmrilp import events
from mmrilp.base.bus import Bus
from mmrilp.errors import InfeasibleInstance
from mmrilp.errors import InvalidParameters
from mmrilp.milp import MilpStatus
from mmrilp.model import BinarySolution
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import normalize
from mmrilp.regret import EvaluationStatus
from mmrilp.regret import RegretEvaluation
from mmrilp.regret import robustness_cost
from mmrilp.regret import scenario_at
from mmrilp.regret import solve_deterministic
from mmrilp.report import SolveReport
from mmrilp.report import Status
from mmrilp.utils import Deadline


LAMBDA_TOLERANCE = 1e-9
MEAN = 0.5
UPPER = 1.0
AMU_LAMBDAS = (MEAN, UPPER)


@dataclass(frozen=True)
class SbaParams:
    """Initial scenario, final scenario, and step of the SBA sweep."""

    alpha: float = 0.5
    beta: float = 1.0
    gamma: float = 0.05

    def __post_init__(self) -> None:
        """Validate the parameters."""
        if not 0.0 <= self.alpha <= self.beta <= 1.0:
            raise InvalidParameters(
                f"need 0 <= alpha <= beta <= 1, got alpha={self.alpha},"
                f" beta={self.beta}"
            )
        if not self.gamma > 0.0:
            raise InvalidParameters(f"gamma must be positive, got {self.gamma}")


DEFAULT_SBA = SbaParams()


def target_lambdas(p: SbaParams) -> Tuple[float, ...]:
    """Return ``alpha + k * gamma`` for every step ``k`` that stays within beta."""
    lambdas = []
    step = 0
    while True:
        lam = p.alpha + step * p.gamma
        if lam > p.beta + LAMBDA_TOLERANCE:
            break
        lambdas.append(min(lam, 1.0))
        step += 1
    return tuple(lambdas)


def _sweep(
    instance: IntervalIlpInstance,
    lambdas: Sequence[float],
    algorithm: str,
    time_limit: Optional[float],
    bus: Optional[Bus],
) -> SolveReport:
    """Solve each scenario in turn and keep the first candidate of least regret."""
    bus = bus or Bus()
    deadline = Deadline(time_limit)
    if not instance.is_normalized:
        instance = normalize(instance)

    evaluations: Dict[BinarySolution, RegretEvaluation] = {}
    best: Optional[RegretEvaluation] = None
    timed_out = False
    scenarios = 0

    for position, lam in enumerate(lambdas):
        budget = deadline.share(len(lambdas) - position)
        result = solve_deterministic(instance, scenario_at(instance, lam), budget)
        scenarios += 1

        if result.status is MilpStatus.INFEASIBLE:
            raise InfeasibleInstance(f"instance {instance.name!r} has no solution")

        timed_out |= result.status is MilpStatus.TIME_LIMIT
        bus.events.publish(events.ScenarioSolved(lam, result.x))

        candidate = result.x
        if candidate is None:
            continue

        if candidate not in evaluations:
            evaluation = robustness_cost(instance, candidate, budget)
            evaluations[candidate] = evaluation
            timed_out |= evaluation.status is EvaluationStatus.TIME_LIMIT
            bus.events.publish(events.CandidateEvaluated(candidate, evaluation.z))

        evaluation = evaluations[candidate]
        if best is None or evaluation.z < best.z:
            best = evaluation

    status = Status.TIME_LIMIT if timed_out else Status.FEASIBLE
    if best is None:
        return SolveReport(
            algorithm=algorithm,
            instance=instance.name,
            status=Status.TIME_LIMIT,
            scenarios=scenarios,
            elapsed=deadline.elapsed,
        )

    return SolveReport(
        algorithm=algorithm,
        instance=instance.name,
        status=status,
        incumbent=best.x,
        z=best.z,
        scenarios=scenarios,
        elapsed=deadline.elapsed,
        evaluation=best,
    )


def solve_amu(
    instance: IntervalIlpInstance,
    time_limit: Optional[float] = None,
    *,
    bus: Optional[Bus] = None,
) -> SolveReport:
    """Run the mean-upper heuristic.

    The result is at most twice the optimal robustness cost. On ties the
    mean-scenario candidate wins.

    Raises:
        InfeasibleInstance: The instance has no feasible solution.
    """
    return _sweep(instance, AMU_LAMBDAS, "amu", time_limit, bus)


def solve_sba(
    instance: IntervalIlpInstance,
    params: SbaParams = DEFAULT_SBA,
    time_limit: Optional[float] = None,
    *,
    bus: Optional[Bus] = None,
) -> SolveReport:
    """Run the scenario sweep heuristic.

    With the default parameters the sweep contains both AMU scenarios, so the
    result is never worse than AMU's. On ties the smallest ``lambda`` wins.

    Raises:
        InfeasibleInstance: The instance has no feasible solution.
    """
    return _sweep(instance, target_lambdas(params), "sba", time_limit, bus)


def solve_scenario(
    instance: IntervalIlpInstance,
    lam: float,
    time_limit: Optional[float] = None,
    *,
    algorithm: str = "scenario",
    bus: Optional[Bus] = None,
) -> SolveReport:
    """Solve a single scenario and report the robustness cost of its optimum."""
    scenario_at(instance, lam)
    return _sweep(instance, (lam,), algorithm, time_limit, bus)
