"""Fixtures."""
from pathlib import Path
from typing import List

import pytest

from mmrilp.generate import GeneratorParams
from mmrilp.generate import InstanceKind
from mmrilp.generate import generate_instance
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import LinearConstraint
from mmrilp.model import Sense
from mmrilp.rilp import EXAMPLE


@pytest.fixture
def ex1() -> IntervalIlpInstance:
    """Two variables, one cover row, and the first cost uncertain."""
    return IntervalIlpInstance(
        name="ex1",
        lower=(1.0, 2.0),
        upper=(3.0, 2.0),
        constraints=(LinearConstraint(((0, -1.0), (1, -1.0)), Sense.LE, -1.0),),
    )


@pytest.fixture
def degenerate() -> IntervalIlpInstance:
    """Instance whose intervals are points, so every regret is zero."""
    return IntervalIlpInstance(
        name="degenerate",
        lower=(4.0, 1.0, 3.0),
        upper=(4.0, 1.0, 3.0),
        constraints=(
            LinearConstraint(((0, -1.0), (1, -1.0), (2, -1.0)), Sense.LE, -2.0),
        ),
    )


@pytest.fixture
def infeasible() -> IntervalIlpInstance:
    """Instance without feasible solutions."""
    return IntervalIlpInstance(
        name="infeasible",
        lower=(1.0, 1.0),
        upper=(2.0, 2.0),
        constraints=(
            LinearConstraint(((0, -1.0), (1, -1.0)), Sense.LE, -1.0),
            LinearConstraint(((0, 1.0), (1, 1.0)), Sense.LE, 0.0),
        ),
    )


@pytest.fixture
def generated() -> List[IntervalIlpInstance]:
    """A handful of small generated instances of both kinds."""
    return [
        generate_instance(GeneratorParams(n=6, m=3, seed=seed, kind=kind))
        for seed in range(1, 4)
        for kind in InstanceKind
    ]


@pytest.fixture
def ex1_path(tmp_path: Path) -> Path:
    """The canonical instance written to a file."""
    path = tmp_path / "ex1.rilp"
    path.write_text(EXAMPLE, encoding="utf-8")
    return path
