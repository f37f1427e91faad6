"""Benchmark harness.

Every algorithm runs on every instance under the same time limit. The
baseline's result, normally the decomposition's upper bound, is the reference
for the relative deviations of the others. Results are written as CSV with the
columns ``instance,algorithm,status,z,lower_bound,gap,time_ms,seed``.
"""
from __future__ import annotations

import csv
import re
import time
from concurrent.futures import as_completed
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import TextIO
from typing import Tuple

from mmrilp import events
from mmrilp.base.bus import Bus
from mmrilp.core import ALGORITHMS
from mmrilp.core import solve
from mmrilp.core import SolveOptions
from mmrilp.errors import InfeasibleInstance
from mmrilp.errors import InvalidParameters
from mmrilp.errors import SchemaError
from mmrilp.model import IntervalIlpInstance
from mmrilp.report import BenchRecord
from mmrilp.report import Status
from mmrilp.stats import aggregate
from mmrilp.stats import AlgorithmSummary
from mmrilp.stats import is_significant
from mmrilp.stats import paired_deviations
from mmrilp.stats import Summary
from mmrilp.stats import wilcoxon_signed_rank


COLUMNS = (
    "instance",
    "algorithm",
    "status",
    "z",
    "lower_bound",
    "gap",
    "time_ms",
    "seed",
)
REQUIRED = ("instance", "algorithm", "status", "z", "time_ms")

_SEED = re.compile(r"-s(\d+)$")


def instance_seed(name: str) -> Optional[int]:
    """Return the seed encoded in a generated instance name."""
    match = _SEED.search(name)
    return int(match.group(1)) if match else None


@dataclass(frozen=True)
class Run:
    """One algorithm on one instance."""

    instance: IntervalIlpInstance
    algorithm: str
    options: SolveOptions


@dataclass(frozen=True)
class Outcome:
    """The record of a run, and the error message if it failed."""

    record: BenchRecord
    error: Optional[str] = None


def execute(run: Run) -> Outcome:
    """Run the algorithm and capture any failure in the record."""
    name, algorithm = run.instance.name, run.algorithm
    seed = instance_seed(name)
    start = time.perf_counter()
    try:
        report = solve(run.instance, algorithm, run.options)
    except InfeasibleInstance:
        seconds = time.perf_counter() - start
        return Outcome(
            BenchRecord(
                name, algorithm, Status.INFEASIBLE, time_ms=seconds * 1000.0, seed=seed
            )
        )
    except Exception as error:
        seconds = time.perf_counter() - start
        record = BenchRecord(
            name, algorithm, Status.ERROR, time_ms=seconds * 1000.0, seed=seed
        )
        return Outcome(record, f"{type(error).__name__}: {error}")

    return Outcome(BenchRecord.from_report(report, time.perf_counter() - start, seed))


@dataclass(frozen=True)
class Comparison:
    """Signed-rank test between the deviations of two algorithms."""

    first: str
    second: str
    pairs: int
    statistic: float
    p: float
    first_time: Optional[Summary]
    second_time: Optional[Summary]

    @property
    def significant(self) -> bool:
        """Return True if the deviations differ at the 5% level."""
        return is_significant(self.p)

    @property
    def faster(self) -> Optional[str]:
        """Return the algorithm with the smaller mean time, if both ran."""
        if self.first_time is None or self.second_time is None:
            return None
        if self.first_time.mean <= self.second_time.mean:
            return self.first
        return self.second


@dataclass(frozen=True)
class BenchResult:
    """Records sorted by instance and algorithm, with their summary."""

    records: Tuple[BenchRecord, ...]
    summary: Tuple[AlgorithmSummary, ...]
    comparison: Optional[Comparison]
    baseline: str = "bda"

    @property
    def failures(self) -> int:
        """Return the number of runs that raised an exception."""
        return sum(record.status is Status.ERROR for record in self.records)

    @property
    def infeasible(self) -> Tuple[str, ...]:
        """Return the instances some algorithm proved infeasible."""
        return tuple(
            sorted(
                {
                    record.instance
                    for record in self.records
                    if record.status is Status.INFEASIBLE
                }
            )
        )


def compare(
    records: Sequence[BenchRecord], baseline: str, first: str, second: str
) -> Comparison:
    """Test whether two algorithms deviate differently from the baseline.

    Raises:
        SchemaError: No instance has a deviation for both algorithms.
    """
    pairs = paired_deviations(records, baseline, first, second)
    if not pairs:
        raise SchemaError(
            f"no instance has results for {first}, {second}, and {baseline}"
        )

    statistic, p = wilcoxon_signed_rank(pairs)
    times = {row.algorithm: row.time for row in aggregate(records, baseline)}
    return Comparison(
        first=first,
        second=second,
        pairs=len(pairs),
        statistic=statistic,
        p=p,
        first_time=times.get(first),
        second_time=times.get(second),
    )


def _runs(
    instances: Iterable[IntervalIlpInstance],
    algorithms: Sequence[str],
    options: SolveOptions,
) -> Iterator[Run]:
    for instance in instances:
        for algorithm in algorithms:
            yield Run(instance, algorithm, options)


def _execute_all(runs: List[Run], jobs: int) -> Iterator[Outcome]:
    if jobs <= 1:
        yield from map(execute, runs)
        return

    with ProcessPoolExecutor(max_workers=jobs) as executor:
        futures = [executor.submit(execute, run) for run in runs]
        for future in as_completed(futures):
            yield future.result()


def run_benchmark(
    instances: Sequence[IntervalIlpInstance],
    algorithms: Sequence[str],
    time_limit: Optional[float],
    baseline: str = "bda",
    *,
    options: SolveOptions = SolveOptions(),
    jobs: int = 1,
    bus: Optional[Bus] = None,
) -> BenchResult:
    """Run every algorithm on every instance.

    A failing run becomes a record with status ``ERROR``; the batch always
    completes. With ``jobs`` above 1, runs execute in worker processes and
    the records are sorted afterwards, so the result does not depend on the
    completion order.

    Args:
        instances: The instances.
        algorithms: Names of the algorithms to run.
        time_limit: Seconds per run, or None for no limit.
        baseline: The algorithm whose results the deviations refer to.
        options: Convergence gap and sweep parameters.
        jobs: Number of worker processes.
        bus: Bus for progress events.

    Returns:
        The records, the summary per algorithm, and the signed-rank test
        between the first two algorithms other than the baseline.

    Raises:
        InvalidParameters: An algorithm is unknown, or the baseline is not run.
    """
    bus = bus or Bus()
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise InvalidParameters(f"unknown algorithm {algorithm!r}")
    if baseline not in algorithms:
        raise InvalidParameters(f"baseline {baseline!r} must be among the algorithms")
    if jobs < 1:
        raise InvalidParameters(f"need at least one job, got {jobs}")

    options = SolveOptions(time_limit, options.epsilon, options.sba)
    runs = list(_runs(instances, algorithms, options))
    records: List[BenchRecord] = []

    with bus.contexts.publish(events.Benchmarking(len(runs))):
        for outcome in _execute_all(runs, jobs):
            record = outcome.record
            records.append(record)
            if outcome.error is not None:
                bus.events.publish(
                    events.RunFailed(record.instance, record.algorithm, outcome.error)
                )
            else:
                bus.events.publish(
                    events.RunFinished(
                        record.instance,
                        record.algorithm,
                        record.status.value,
                        record.z,
                        record.time_ms / 1000.0,
                    )
                )

    records.sort(key=lambda record: (record.instance, record.algorithm))
    heuristics = [algorithm for algorithm in algorithms if algorithm != baseline]

    comparison = None
    if len(heuristics) >= 2:
        try:
            comparison = compare(records, baseline, heuristics[0], heuristics[1])
        except SchemaError:
            comparison = None

    return BenchResult(
        records=tuple(records),
        summary=tuple(aggregate(records, baseline)),
        comparison=comparison,
        baseline=baseline,
    )


def _format(value: Optional[float]) -> str:
    return "" if value is None else repr(value)


def write_csv(
    records: Iterable[BenchRecord], stream: TextIO, *, header: bool = True
) -> None:
    """Write records in the results format, by default with the header first."""
    writer = csv.writer(stream, lineterminator="\n")
    if header:
        writer.writerow(COLUMNS)
    for record in records:
        writer.writerow(
            [
                record.instance,
                record.algorithm,
                record.status.value,
                _format(record.z),
                _format(record.lower_bound),
                _format(record.gap),
                f"{record.time_ms:.3f}",
                "" if record.seed is None else str(record.seed),
            ]
        )


def _optional_float(value: Optional[str], column: str, line: int) -> Optional[float]:
    if value is None or value == "":
        return None
    try:
        return float(value)
    except ValueError:
        raise SchemaError(f"line {line}: {column} is not a number: {value!r}") from None


def read_csv(stream: TextIO) -> List[BenchRecord]:
    """Read records in the results format.

    Raises:
        SchemaError: A required column is missing or a value is invalid.
    """
    reader = csv.DictReader(stream)
    missing = [column for column in REQUIRED if column not in (reader.fieldnames or ())]
    if missing:
        raise SchemaError(f"missing column(s): {', '.join(missing)}")

    records: List[BenchRecord] = []
    for line, row in enumerate(reader, start=2):
        try:
            status = Status(row["status"])
        except ValueError:
            raise SchemaError(
                f"line {line}: unknown status {row['status']!r}"
            ) from None

        seed = row.get("seed") or None
        if seed is not None and not seed.isdigit():
            raise SchemaError(f"line {line}: seed is not an integer: {seed!r}")

        time_ms = _optional_float(row["time_ms"], "time_ms", line)
        lower_bound = _optional_float(row.get("lower_bound"), "lower_bound", line)
        records.append(
            BenchRecord(
                instance=row["instance"],
                algorithm=row["algorithm"],
                status=status,
                z=_optional_float(row["z"], "z", line),
                lower_bound=lower_bound,
                time_ms=0.0 if time_ms is None else time_ms,
                seed=None if seed is None else int(seed),
            )
        )
    return records
