"""Tests for the scenario-based heuristics."""
from typing import List
from typing import Optional

import pytest
from hypothesis import given
from hypothesis import settings
from pytest import MonkeyPatch

from mmrilp import events
from mmrilp import heuristics
from mmrilp.base.bus import Bus
from mmrilp.bruteforce import exact_minmax_regret
from mmrilp.errors import InfeasibleInstance
from mmrilp.errors import InvalidParameters
from mmrilp.errors import LambdaOutOfRange
from mmrilp.generate import GeneratorParams
from mmrilp.generate import generate_instance
from mmrilp.heuristics import SbaParams
from mmrilp.heuristics import solve_amu
from mmrilp.heuristics import solve_sba
from mmrilp.heuristics import solve_scenario
from mmrilp.heuristics import target_lambdas
from mmrilp.milp import MilpResult
from mmrilp.model import BinarySolution
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import Scenario
from mmrilp.regret import RegretEvaluation
from mmrilp.regret import robustness_cost
from mmrilp.regret import solve_deterministic
from mmrilp.report import Status

from .helpers import bits
from .strategies import instances


def test_target_lambdas_default() -> None:
    """It inspects eleven scenarios from the mean to the upper one."""
    lambdas = target_lambdas(SbaParams())
    assert len(lambdas) == 11
    assert lambdas[0] == 0.5
    assert lambdas[-1] == pytest.approx(1.0)


@pytest.mark.parametrize(
    "params,expected",
    [
        (SbaParams(0.5, 1.0, 0.5), [0.5, 1.0]),
        (SbaParams(0.7, 0.7, 0.1), [0.7]),
        (SbaParams(0.0, 0.3, 0.1), [0.0, 0.1, 0.2, 0.3]),
    ],
)
def test_target_lambdas(params: SbaParams, expected: List[float]) -> None:
    """It steps from alpha to beta."""
    assert list(target_lambdas(params)) == pytest.approx(expected)


@pytest.mark.parametrize(
    "alpha,beta,gamma",
    [(0.5, 1.0, 0.0), (0.5, 1.0, -0.1), (0.8, 0.5, 0.1), (-0.1, 0.5, 0.1)],
)
def test_sba_params_invalid(alpha: float, beta: float, gamma: float) -> None:
    """It rejects an empty range or a step that is not positive."""
    with pytest.raises(InvalidParameters):
        SbaParams(alpha, beta, gamma)


def test_amu_ex1(ex1: IntervalIlpInstance) -> None:
    """It keeps the mean-scenario candidate."""
    report = solve_amu(ex1)
    assert report.status is Status.FEASIBLE
    assert report.z == 1.0
    assert report.incumbent == bits("01")
    assert report.scenarios == 2


def test_sba_ex1(ex1: IntervalIlpInstance) -> None:
    """It solves eleven scenarios."""
    report = solve_sba(ex1)
    assert report.z == 1.0
    assert report.scenarios == 11


def test_sba_single_scenario(ex1: IntervalIlpInstance) -> None:
    """It equals the mean scenario when alpha equals beta."""
    sba = solve_sba(ex1, SbaParams(0.5, 0.5, 0.05))
    mean = solve_scenario(ex1, 0.5)
    assert (sba.incumbent, sba.z, sba.scenarios) == (mean.incumbent, mean.z, 1)


def test_degenerate(degenerate: IntervalIlpInstance) -> None:
    """It finds zero regret."""
    assert solve_amu(degenerate).z == 0.0
    assert solve_sba(degenerate).z == 0.0


def test_infeasible(infeasible: IntervalIlpInstance) -> None:
    """It raises on instances without solutions."""
    with pytest.raises(InfeasibleInstance):
        solve_amu(infeasible)


def test_scenario_out_of_range(ex1: IntervalIlpInstance) -> None:
    """It rejects interpolation parameters outside [0, 1]."""
    with pytest.raises(LambdaOutOfRange):
        solve_scenario(ex1, 1.5)


def test_lower_scenario(ex1: IntervalIlpInstance) -> None:
    """It reports under the given name."""
    report = solve_scenario(ex1, 0.0, algorithm="lower")
    assert report.algorithm == "lower"
    assert report.incumbent == bits("10")
    assert report.z == 1.0


def test_events(ex1: IntervalIlpInstance) -> None:
    """It publishes each scenario and each new candidate once."""
    scenarios: List[float] = []
    candidates: List[str] = []
    bus = Bus()

    @bus.events.subscribe
    def _scenario(event: events.ScenarioSolved) -> None:
        scenarios.append(event.lam)

    @bus.events.subscribe
    def _candidate(event: events.CandidateEvaluated) -> None:
        candidates.append(str(event.candidate))

    solve_amu(ex1, bus=bus)

    assert scenarios == [0.5, 1.0]
    assert candidates == ["01"]


@settings(max_examples=40, deadline=None)
@given(instances(max_variables=7))
def test_bounds(instance: IntervalIlpInstance) -> None:
    """AMU is within twice the optimum, and SBA is no worse than AMU."""
    _, optimum = exact_minmax_regret(instance)
    amu = solve_amu(instance)
    sba = solve_sba(instance)

    assert amu.z is not None and sba.z is not None
    assert amu.z <= 2 * optimum + 1e-6
    assert sba.z <= amu.z + 1e-9
    assert sba.z >= optimum - 1e-6


def test_time_limit(monkeypatch: MonkeyPatch) -> None:
    """It reports the time limit when a subproblem stops early."""
    problem = generate_instance(GeneratorParams(n=40, m=5, seed=3))

    def _solve(
        instance: IntervalIlpInstance, scenario: Scenario, budget: Optional[float]
    ) -> MilpResult:
        return solve_deterministic(instance, scenario, 0.0)

    def _evaluate(
        instance: IntervalIlpInstance, x: BinarySolution, budget: Optional[float]
    ) -> RegretEvaluation:
        return robustness_cost(instance, x, 0.0)

    monkeypatch.setattr(heuristics, "solve_deterministic", _solve)
    monkeypatch.setattr(heuristics, "robustness_cost", _evaluate)
    report = solve_amu(problem, time_limit=60.0)
    assert report.status is Status.TIME_LIMIT
    assert report.incumbent is not None
    assert report.z is not None and report.z >= 0.0
