"""Solver reports."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional
from typing import Tuple

from mmrilp.model import BinarySolution
from mmrilp.regret import RegretEvaluation


class Status(str, enum.Enum):
    """How a solver run ended."""

    OPTIMAL = "OPTIMAL"
    FEASIBLE = "FEASIBLE"
    TIME_LIMIT = "TIME_LIMIT"
    INFEASIBLE = "INFEASIBLE"
    ERROR = "ERROR"


@dataclass(frozen=True)
class Bounds:
    """Bounds on the min-max regret after one decomposition iteration."""

    iteration: int
    lower: float
    upper: float
    cuts: int


@dataclass(frozen=True)
class SolveReport:
    """Output of a min-max regret algorithm.

    ``z`` is the robustness cost of the incumbent, an upper bound on the
    optimum. Only exact methods set ``lower_bound``.
    """

    algorithm: str
    instance: str
    status: Status
    incumbent: Optional[BinarySolution] = None
    z: Optional[float] = None
    lower_bound: Optional[float] = None
    iterations: int = 0
    cuts: int = 0
    scenarios: int = 0
    elapsed: float = 0.0
    evaluation: Optional[RegretEvaluation] = None
    trace: Tuple[Bounds, ...] = ()

    @property
    def gap(self) -> Optional[float]:
        """Return the absolute gap between the bounds, if both are known."""
        if self.z is None or self.lower_bound is None:
            return None
        return max(0.0, self.z - self.lower_bound) if math.isfinite(self.z) else None


@dataclass(frozen=True)
class BenchRecord:
    """One row of a benchmark results file."""

    instance: str
    algorithm: str
    status: Status
    z: Optional[float] = None
    lower_bound: Optional[float] = None
    time_ms: float = 0.0
    seed: Optional[int] = None

    @property
    def gap(self) -> Optional[float]:
        """Return the absolute gap between the bounds, if both are known."""
        if self.z is None or self.lower_bound is None:
            return None
        return max(0.0, self.z - self.lower_bound)

    @classmethod
    def from_report(
        cls, report: SolveReport, seconds: float, seed: Optional[int] = None
    ) -> BenchRecord:
        """Create a record from a solver report and the run's wall time."""
        return cls(
            instance=report.instance,
            algorithm=report.algorithm,
            status=report.status,
            z=report.z,
            lower_bound=report.lower_bound,
            time_ms=seconds * 1000.0,
            seed=seed,
        )
