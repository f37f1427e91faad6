"""Tests for the decomposition."""
from typing import List

import pytest
from hypothesis import given
from hypothesis import settings

from mmrilp import events
from mmrilp.base.bus import Bus
from mmrilp.benders import CutPool
from mmrilp.benders import build_master
from mmrilp.benders import cut_row
from mmrilp.benders import solve_bda
from mmrilp.bruteforce import exact_minmax_regret
from mmrilp.errors import EmptyPool
from mmrilp.milp import MilpStatus
from mmrilp.milp import solve_milp
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import Sense
from mmrilp.report import Status

from .helpers import bits
from .helpers import row
from .helpers import trace_is_monotone
from .strategies import instances


def test_cut_row(ex1: IntervalIlpInstance) -> None:
    """It charges the interval width of the adversary's variables."""
    assert cut_row(ex1, bits("01")) == row(Sense.LE, 2.0, (2, 1.0))
    assert cut_row(ex1, bits("10")) == row(Sense.LE, 1.0, (0, -2.0), (2, 1.0))


def test_build_master(ex1: IntervalIlpInstance) -> None:
    """It adds one row per cut to the instance rows."""
    pool = CutPool((bits("01"),)).add(bits("10"))
    master = build_master(ex1, pool)
    assert master.objective == ex1.upper
    assert master.rows == ex1.constraints + (
        row(Sense.LE, 2.0, (2, 1.0)),
        row(Sense.LE, 1.0, (0, -2.0), (2, 1.0)),
    )
    assert master.theta is not None


def test_build_master_single_cut(ex1: IntervalIlpInstance) -> None:
    """It bounds theta by the seed's cut alone."""
    result = solve_milp(build_master(ex1, CutPool((bits("01"),))))
    assert result.status is MilpStatus.OPTIMAL
    assert result.x == bits("01")
    assert result.theta == 2.0
    assert result.objective == 0.0


def test_build_master_empty_pool(ex1: IntervalIlpInstance) -> None:
    """It needs at least one cut."""
    with pytest.raises(EmptyPool):
        build_master(ex1, CutPool())


def test_cut_pool_rejects_duplicates() -> None:
    """It holds every adversary once."""
    pool = CutPool((bits("01"),))
    assert bits("01") in pool
    with pytest.raises(ValueError):
        pool.add(bits("01"))


def test_ex1(ex1: IntervalIlpInstance) -> None:
    """It closes the gap in two iterations."""
    report = solve_bda(ex1)
    assert report.status is Status.OPTIMAL
    assert report.z == 1.0
    assert report.lower_bound == 1.0
    assert report.incumbent == bits("01")
    assert report.iterations == 2
    assert report.cuts == 2


def test_ex1_trace(ex1: IntervalIlpInstance) -> None:
    """It records the bounds before and after every iteration."""
    trace = solve_bda(ex1).trace
    assert [(entry.lower, entry.upper) for entry in trace] == [
        (0.0, 1.0),
        (0.0, 1.0),
        (1.0, 1.0),
    ]


def test_degenerate(degenerate: IntervalIlpInstance) -> None:
    """It proves zero regret in one iteration."""
    report = solve_bda(degenerate)
    assert report.status is Status.OPTIMAL
    assert report.z == 0.0
    assert report.iterations == 1


def test_infeasible(infeasible: IntervalIlpInstance) -> None:
    """It reports infeasible instances without an incumbent."""
    report = solve_bda(infeasible)
    assert report.status is Status.INFEASIBLE
    assert report.incumbent is None


def test_time_limit_zero(ex1: IntervalIlpInstance) -> None:
    """It stops before the first iteration with the seed as incumbent."""
    report = solve_bda(ex1, time_limit=0.0)
    assert report.status is Status.TIME_LIMIT
    assert report.iterations == 0
    assert report.z == 1.0
    assert report.lower_bound == 0.0


def test_events(ex1: IntervalIlpInstance) -> None:
    """It publishes the seed, every iteration, and every cut."""
    seen: List[object] = []
    bus = Bus()

    @bus.events.subscribe
    def _seed(event: events.SeedSolved) -> None:
        seen.append(event)

    @bus.events.subscribe
    def _iteration(event: events.BendersIteration) -> None:
        seen.append(event)

    @bus.events.subscribe
    def _cut(event: events.CutAdded) -> None:
        seen.append(event)

    solve_bda(ex1, bus=bus)

    assert [type(event).__name__ for event in seen] == [
        "SeedSolved",
        "BendersIteration",
        "CutAdded",
        "BendersIteration",
    ]


@settings(max_examples=40, deadline=None)
@given(instances(max_variables=7))
def test_matches_enumeration(instance: IntervalIlpInstance) -> None:
    """It finds the min-max regret and keeps its bounds in order."""
    report = solve_bda(instance)
    _, z = exact_minmax_regret(instance)

    assert report.status is Status.OPTIMAL
    assert report.z == pytest.approx(z, abs=1e-6)
    assert trace_is_monotone(
        [(entry.lower, entry.upper) for entry in report.trace], 1e-6
    )
