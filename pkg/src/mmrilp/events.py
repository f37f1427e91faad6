"""Events and contexts for the message bus."""
from dataclasses import dataclass
from typing import Optional

from mmrilp.base import bus
from mmrilp.model import BinarySolution


@dataclass
class Solving(bus.Context):
    """An algorithm is running on an instance."""

    instance: str
    algorithm: str


@dataclass
class Benchmarking(bus.Context):
    """A benchmark batch is running."""

    runs: int


@dataclass
class SeedSolved(bus.Event):
    """The decomposition found its seed solution."""

    seed: BinarySolution
    z: float


@dataclass
class BendersIteration(bus.Event):
    """The decomposition finished an iteration."""

    iteration: int
    lower: float
    upper: float
    cuts: int


@dataclass
class CutAdded(bus.Event):
    """An adversary solution joined the cut pool."""

    adversary: BinarySolution


@dataclass
class ScenarioSolved(bus.Event):
    """A heuristic solved the deterministic problem in one scenario."""

    lam: float
    candidate: Optional[BinarySolution]


@dataclass
class CandidateEvaluated(bus.Event):
    """A heuristic computed the robustness cost of a candidate."""

    candidate: BinarySolution
    z: float


@dataclass
class RunFinished(bus.Event):
    """A benchmark run completed."""

    instance: str
    algorithm: str
    status: str
    z: Optional[float]
    seconds: float


@dataclass
class RunFailed(bus.Event):
    """A benchmark run raised an exception."""

    instance: str
    algorithm: str
    message: str


@dataclass
class InstanceUnreadable(bus.Event):
    """An instance file could not be read or parsed."""

    path: str
    message: str


@dataclass
class InstanceInfeasible(bus.Event):
    """The instance has no feasible solution."""

    instance: str


@dataclass
class NoIncumbent(bus.Event):
    """The time limit expired before any feasible solution was found."""

    instance: str
    algorithm: str


@dataclass
class InstanceTooLarge(bus.Event):
    """The instance has too many variables for the chosen algorithm."""

    instance: str
    algorithm: str
    message: str


@dataclass
class NumericalFailure(bus.Event):
    """The LP solver broke down."""

    message: str


@dataclass
class BadBenchmarkSetup(bus.Event):
    """The benchmark options are inconsistent."""

    message: str


@dataclass
class SchemaMismatch(bus.Event):
    """A results file does not have the expected columns."""

    path: str
    message: str
