"""Tests for the instance model."""
import itertools
from typing import List
from typing import Sequence
from typing import Tuple

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmrilp.errors import DimensionMismatch
from mmrilp.errors import InvalidScenario
from mmrilp.errors import MalformedInstance
from mmrilp.model import BinarySolution
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import LinearConstraint
from mmrilp.model import Scenario
from mmrilp.model import Sense
from mmrilp.model import cost
from mmrilp.model import is_feasible
from mmrilp.model import normalize

from .helpers import bits
from .helpers import instance
from .helpers import row


def test_normalize_ge() -> None:
    """It negates GE rows."""
    problem = instance([0, 0], [1, 1], row(Sense.GE, 1.0, (0, 1.0), (1, 1.0)))
    [constraint] = normalize(problem).constraints
    assert constraint == row(Sense.LE, -1.0, (0, -1.0), (1, -1.0))


def test_normalize_eq() -> None:
    """It splits EQ rows into two LE rows."""
    problem = instance([0], [1], row(Sense.EQ, 1.0, (0, 1.0)))
    assert normalize(problem).constraints == (
        row(Sense.LE, 1.0, (0, 1.0)),
        row(Sense.LE, -1.0, (0, -1.0)),
    )


def test_normalize_sorts_terms() -> None:
    """It orders the terms by variable index."""
    problem = instance([0, 0], [1, 1], row(Sense.LE, 1.0, (1, 1.0), (0, 2.0)))
    [constraint] = normalize(problem).constraints
    assert constraint.terms == ((0, 2.0), (1, 1.0))


def test_normalize_idempotent(ex1: IntervalIlpInstance) -> None:
    """It leaves normalized instances unchanged."""
    assert ex1.is_normalized
    assert normalize(normalize(ex1)) == normalize(ex1)


@pytest.mark.parametrize(
    "lower,upper,constraints",
    [
        ([1.0], [0.0], ()),
        ([], [], ()),
        ([0.0, 0.0], [1.0], ()),
        ([0.0], [float("inf")], ()),
        ([0.0, 0.0], [1.0, 1.0], (row(Sense.LE, 1.0, (2, 1.0)),)),
        ([0.0, 0.0], [1.0, 1.0], (row(Sense.LE, 1.0, (0, 1.0), (0, 1.0)),)),
        ([0.0], [1.0], (row(Sense.LE, 1.0),)),
    ],
    ids=[
        "empty-interval",
        "no-variables",
        "length-mismatch",
        "infinite-cost",
        "index-out-of-range",
        "duplicate-index",
        "no-terms",
    ],
)
def test_malformed(
    lower: Sequence[float],
    upper: Sequence[float],
    constraints: Tuple[LinearConstraint, ...],
) -> None:
    """It rejects structurally invalid instances."""
    with pytest.raises(MalformedInstance):
        instance(lower, upper, *constraints)


@pytest.mark.parametrize("name", ["", "two words", "tab\tname", "ex#1", "line\n"])
def test_malformed_name(name: str) -> None:
    """It rejects names that do not survive as a single RILP token."""
    with pytest.raises(MalformedInstance):
        instance([0.0], [1.0], name=name)


@pytest.mark.parametrize(
    "x,expected",
    [("00", False), ("10", True), ("01", True), ("11", True)],
)
def test_is_feasible(ex1: IntervalIlpInstance, x: str, expected: bool) -> None:
    """It checks every row."""
    assert is_feasible(ex1, bits(x)) is expected


def test_is_feasible_dimension(ex1: IntervalIlpInstance) -> None:
    """It rejects solutions of the wrong length."""
    with pytest.raises(DimensionMismatch):
        is_feasible(ex1, bits("1"))


@pytest.mark.parametrize(
    "x,expected",
    [("10", 3.0), ("11", 5.0), ("00", 0.0)],
)
def test_cost(x: str, expected: float) -> None:
    """It sums the costs of the selected variables."""
    assert cost(bits(x), Scenario((3.0, 2.0))) == expected


def test_scenario_outside_interval(ex1: IntervalIlpInstance) -> None:
    """It rejects costs outside the intervals."""
    with pytest.raises(InvalidScenario):
        Scenario.of(ex1, (4.0, 2.0))


def test_scenario_within_interval(ex1: IntervalIlpInstance) -> None:
    """It accepts costs within the intervals."""
    assert Scenario.of(ex1, (2, 2)).costs == (2.0, 2.0)


def test_solution_rejects_non_binary() -> None:
    """It accepts only zeros and ones."""
    with pytest.raises(MalformedInstance):
        BinarySolution((0, 2))


def test_solution_order() -> None:
    """It orders solutions lexicographically."""
    assert sorted([bits("11"), bits("01"), bits("10")]) == [
        bits("01"),
        bits("10"),
        bits("11"),
    ]
    assert str(BinarySolution((1, 1, 1))) == "111"
    assert str(BinarySolution((0, 0))) == "00"


@st.composite
def unnormalized(draw: st.DrawFn) -> IntervalIlpInstance:
    """Draw a small instance whose rows have any sense."""
    n = draw(st.integers(min_value=1, max_value=5))
    constraints: List[LinearConstraint] = []
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        indices = draw(st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1))
        terms = tuple(
            (index, float(draw(st.integers(min_value=-3, max_value=3).filter(bool))))
            for index in sorted(indices)
        )
        rhs = float(draw(st.integers(min_value=-4, max_value=4)))
        constraints.append(LinearConstraint(terms, draw(st.sampled_from(Sense)), rhs))
    return instance([0.0] * n, [1.0] * n, *constraints)


@given(unnormalized())
def test_normalize_keeps_feasible_set(problem: IntervalIlpInstance) -> None:
    """It accepts exactly the solutions the original rows accept."""
    normalized = normalize(problem)
    assert normalized.is_normalized
    for values in itertools.product((0, 1), repeat=problem.n):
        x = BinarySolution(values)
        assert is_feasible(problem, x) == is_feasible(normalized, x)
