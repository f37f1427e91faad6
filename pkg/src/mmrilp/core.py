"""Core module."""
from dataclasses import dataclass
from typing import Optional

from mmrilp import events
from mmrilp.base.bus import Bus
from mmrilp.benders import DEFAULT_EPSILON
from mmrilp.benders import solve_bda
from mmrilp.bruteforce import solve_brute
from mmrilp.errors import InvalidParameters
from mmrilp.heuristics import DEFAULT_SBA
from mmrilp.heuristics import SbaParams
from mmrilp.heuristics import solve_amu
from mmrilp.heuristics import solve_sba
from mmrilp.heuristics import solve_scenario
from mmrilp.model import IntervalIlpInstance
from mmrilp.report import SolveReport


DEFAULT_TIME_LIMIT = 7200.0

SCENARIOS = {"lower": 0.0, "mean": 0.5, "upper": 1.0}
ALGORITHMS = ("bda", "amu", "sba", "brute", *SCENARIOS)


@dataclass(frozen=True)
class SolveOptions:
    """Options shared by the algorithms."""

    time_limit: Optional[float] = DEFAULT_TIME_LIMIT
    epsilon: float = DEFAULT_EPSILON
    sba: SbaParams = DEFAULT_SBA


def solve(
    instance: IntervalIlpInstance,
    algorithm: str,
    options: SolveOptions = SolveOptions(),
    *,
    bus: Optional[Bus] = None,
) -> SolveReport:
    """Run an algorithm by name.

    Args:
        instance: The instance.
        algorithm: One of ``bda``, ``amu``, ``sba``, ``brute``, ``lower``,
            ``mean``, and ``upper``.
        options: Time limit, convergence gap, and sweep parameters.
        bus: Bus for progress events.

    Returns:
        The solver report.

    Raises:
        InvalidParameters: The algorithm is unknown.
    """
    bus = bus or Bus()
    if algorithm not in ALGORITHMS:
        raise InvalidParameters(f"unknown algorithm {algorithm!r}")

    with bus.contexts.publish(events.Solving(instance.name, algorithm)):
        if algorithm == "bda":
            return solve_bda(instance, options.epsilon, options.time_limit, bus=bus)
        if algorithm == "amu":
            return solve_amu(instance, options.time_limit, bus=bus)
        if algorithm == "sba":
            return solve_sba(instance, options.sba, options.time_limit, bus=bus)
        if algorithm == "brute":
            return solve_brute(instance)

        return solve_scenario(
            instance,
            SCENARIOS[algorithm],
            options.time_limit,
            algorithm=algorithm,
            bus=bus,
        )
