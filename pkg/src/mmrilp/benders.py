"""Benders-like decomposition for the min-max regret problem.

The exact formulation bounds ``theta`` by one row per feasible solution
``y``. The decomposition keeps a finite pool of such rows: the master problem
over the pool yields a lower bound and a candidate, the candidate's
robustness cost yields an upper bound, and the candidate's adversary joins
the pool. The loop ends when the bounds meet.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from dataclasses import field
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Tuple

from mmrilp import events
from mmrilp.base.bus import Bus
from mmrilp.errors import EmptyPool
from mmrilp.errors import StalledDecomposition
from mmrilp.milp import MilpProblem
from mmrilp.milp import MilpStatus
from mmrilp.milp import Theta
from mmrilp.milp import solve_milp
from mmrilp.model import BinarySolution
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import LinearConstraint
from mmrilp.model import Sense
from mmrilp.model import normalize
from mmrilp.regret import EvaluationStatus
from mmrilp.regret import RegretEvaluation
from mmrilp.regret import robustness_cost
from mmrilp.regret import scenario_at
from mmrilp.regret import solve_deterministic
from mmrilp.report import Bounds
from mmrilp.report import SolveReport
from mmrilp.report import Status
from mmrilp.utils import Deadline


DEFAULT_EPSILON = 1e-6
SEED_LAMBDA = 0.5


@dataclass(frozen=True)
class CutPool:
    """Adversary solutions whose rows bound ``theta`` in the master."""

    cuts: Tuple[BinarySolution, ...] = ()

    def __contains__(self, y: object) -> bool:
        """Return True if ``y`` already generated a row."""
        return y in self.cuts

    def __len__(self) -> int:
        """Return the number of cuts."""
        return len(self.cuts)

    def __iter__(self) -> Iterator[BinarySolution]:
        """Iterate over the cuts in insertion order."""
        return iter(self.cuts)

    def add(self, y: BinarySolution) -> CutPool:
        """Return the pool extended by ``y``."""
        if y in self.cuts:
            raise ValueError(f"{y} is already in the pool")
        return CutPool(self.cuts + (y,))


@dataclass(frozen=True)
class BendersState:
    """Bound bookkeeping of the decomposition."""

    lower: float
    upper: float
    incumbent: BinarySolution
    pool: CutPool
    iterations: int = 0
    elapsed: float = 0.0
    trace: Tuple[Bounds, ...] = field(default=())

    def bounds(self) -> Bounds:
        """Return the current bounds as a trace entry."""
        return Bounds(self.iterations, self.lower, self.upper, len(self.pool))


def cut_row(instance: IntervalIlpInstance, y: BinarySolution) -> LinearConstraint:
    """Return ``theta - sum((u - l) * y * x) <= sum(l * y)``."""
    terms: List[Tuple[int, float]] = []
    rhs = 0.0
    for index, used in enumerate(y.x):
        if not used:
            continue
        low, high = instance.lower[index], instance.upper[index]
        rhs += low
        if high != low:
            terms.append((index, -(high - low)))
    terms.append((instance.n, 1.0))
    return LinearConstraint(tuple(terms), Sense.LE, rhs)


def build_master(
    instance: IntervalIlpInstance,
    pool: CutPool,
    *,
    time_limit: Optional[float] = None,
    cutoff: Optional[float] = None,
) -> MilpProblem:
    """Return ``min u'x - theta`` over the instance rows and the pool's cuts.

    Raises:
        EmptyPool: Without cuts ``theta`` is unbounded.
    """
    if not len(pool):
        raise EmptyPool("the master problem needs at least one cut")

    if not instance.is_normalized:
        instance = normalize(instance)

    cuts = tuple(cut_row(instance, y) for y in pool)
    return MilpProblem(
        objective=instance.upper,
        rows=instance.constraints + cuts,
        theta=Theta(-1.0),
        time_limit=time_limit,
        cutoff=cutoff,
    )


class _Decomposition:
    def __init__(
        self,
        instance: IntervalIlpInstance,
        epsilon: float,
        deadline: Deadline,
        bus: Bus,
    ) -> None:
        self.instance = instance
        self.epsilon = epsilon
        self.deadline = deadline
        self.bus = bus
        self.evaluations: Dict[BinarySolution, RegretEvaluation] = {}

    def evaluate(self, x: BinarySolution) -> RegretEvaluation:
        if x not in self.evaluations:
            self.evaluations[x] = robustness_cost(
                self.instance, x, self.deadline.limit()
            )
        return self.evaluations[x]

    def report(self, status: Status, state: Optional[BendersState]) -> SolveReport:
        if state is None:
            return SolveReport(
                algorithm="bda",
                instance=self.instance.name,
                status=status,
                elapsed=self.deadline.elapsed,
            )
        return SolveReport(
            algorithm="bda",
            instance=self.instance.name,
            status=status,
            incumbent=state.incumbent,
            z=state.upper,
            lower_bound=state.lower,
            iterations=state.iterations,
            cuts=len(state.pool),
            elapsed=self.deadline.elapsed,
            evaluation=self.evaluations[state.incumbent],
            trace=state.trace,
        )

    def seed(self) -> Tuple[Optional[Status], Optional[BendersState]]:
        mean = scenario_at(self.instance, SEED_LAMBDA)
        result = solve_deterministic(self.instance, mean, self.deadline.limit())

        if result.status is MilpStatus.INFEASIBLE:
            return Status.INFEASIBLE, None
        if result.x is None:
            return Status.TIME_LIMIT, None

        evaluation = self.evaluate(result.x)
        self.bus.events.publish(events.SeedSolved(result.x, evaluation.z))
        state = BendersState(
            lower=0.0,
            upper=evaluation.z,
            incumbent=result.x,
            pool=CutPool((result.x,)),
        )
        return None, state

    def iterate(self, state: BendersState) -> Tuple[Optional[Status], BendersState]:
        """Run one master and slave solve; return a status when done."""
        master = solve_milp(
            build_master(
                self.instance,
                state.pool,
                time_limit=self.deadline.limit(),
                cutoff=state.upper,
            )
        )

        lower, upper, incumbent = state.lower, state.upper, state.incumbent
        if master.status is MilpStatus.INFEASIBLE:
            lower = upper
        elif master.status is MilpStatus.OPTIMAL:
            lower = max(lower, master.objective)
        else:
            lower = max(lower, master.dual_bound)

        evaluation = None
        if master.x is not None:
            evaluation = self.evaluate(master.x)
            if evaluation.z < upper:
                upper, incumbent = evaluation.z, master.x

        iterations = state.iterations + 1
        state = BendersState(
            lower=min(lower, upper),
            upper=upper,
            incumbent=incumbent,
            pool=state.pool,
            iterations=iterations,
            elapsed=self.deadline.elapsed,
            trace=state.trace,
        )
        state = dataclasses.replace(state, trace=state.trace + (state.bounds(),))
        self.bus.events.publish(
            events.BendersIteration(
                iterations, state.lower, state.upper, len(state.pool)
            )
        )

        if state.upper - state.lower <= self.epsilon:
            return Status.OPTIMAL, state

        if master.status is MilpStatus.TIME_LIMIT or evaluation is None:
            return Status.TIME_LIMIT, state

        adversary = evaluation.adversary
        if adversary in state.pool:
            if evaluation.status is not EvaluationStatus.EXACT:
                return Status.TIME_LIMIT, state
            raise StalledDecomposition(
                f"adversary {adversary} repeated with gap"
                f" {state.upper - state.lower} > {self.epsilon}"
            )

        self.bus.events.publish(events.CutAdded(adversary))
        state = dataclasses.replace(state, pool=state.pool.add(adversary))
        return None, state


def solve_bda(
    instance: IntervalIlpInstance,
    epsilon: float = DEFAULT_EPSILON,
    time_limit: Optional[float] = None,
    *,
    bus: Optional[Bus] = None,
) -> SolveReport:
    """Solve the min-max regret problem exactly by decomposition.

    The cut pool starts with the optimal solution of the mean scenario, which
    also serves as the upper bound before the first iteration. The lower bound
    starts at zero, as no robustness cost is negative.

    Args:
        instance: The instance.
        epsilon: Absolute gap at which the bounds count as equal.
        time_limit: Seconds for the whole run, or None for no limit.
        bus: Bus for progress events.

    Returns:
        The report, with the incumbent, both bounds, and the bound trace.

    Raises:
        StalledDecomposition: An adversary repeated while the gap stayed open.
    """
    deadline = Deadline(time_limit)
    if not instance.is_normalized:
        instance = normalize(instance)

    decomposition = _Decomposition(instance, epsilon, deadline, bus or Bus())
    status, state = decomposition.seed()
    if state is None:
        assert status is not None  # noqa: S101
        return decomposition.report(status, None)

    state = dataclasses.replace(state, trace=(state.bounds(),))

    while status is None:
        if deadline.expired():
            status = Status.TIME_LIMIT
            break
        status, state = decomposition.iterate(state)

    return decomposition.report(status, state)
