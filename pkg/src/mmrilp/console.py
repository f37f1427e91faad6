"""Application console."""
import contextlib
from typing import ContextManager
from typing import Iterator
from typing import Optional
from typing import Sequence

import rich.console
import rich.table
import rich.theme
import rich.traceback
from rich.markup import escape

from mmrilp import events
from mmrilp.base.bus import Bus
from mmrilp.bench import BenchResult
from mmrilp.bench import Comparison
from mmrilp.report import SolveReport
from mmrilp.stats import AlgorithmSummary
from mmrilp.stats import Summary


THEME = rich.theme.Theme(
    {
        "success": "green",
        "failure": "red",
        "hint": "yellow",
        "instance": "blue",
        "algorithm": "cyan",
        "value": "bold",
        "path": "blue",
        "detail": "bright_black",
    }
)


class Console:
    """Console."""

    def __init__(self) -> None:
        """Create the console."""
        self.console = rich.console.Console(stderr=True, highlight=False, theme=THEME)

    def success(self, message: str) -> None:
        """Display a success message."""
        self.console.print(f"[success]✓[/] {message}")

    def failure(self, message: str) -> None:
        """Display a failure message."""
        self.console.print(f"[failure]⨯[/] {message}")

    def hint(self, message: str) -> None:
        """Display a hint for the user."""
        self.console.print(f"[hint]☞ {message}[/]")

    def detail(self, message: str) -> None:
        """Display a progress detail."""
        self.console.print(f"[detail]{message}[/]")

    @contextlib.contextmanager
    def progress(self, message: str) -> Iterator[None]:
        """Display a status message with a spinner."""
        try:
            with self.console.status(message):
                yield
        except Exception:
            self.failure(message)
            raise


def start(*, bus: Bus, verbose: bool = False) -> Console:
    """Create the console and subscribe to events.

    Failures are always shown. Progress is shown only if ``verbose`` is set.
    """
    rich.traceback.install()

    console = Console()
    _subscribe_failures(console, bus)
    if verbose:
        _subscribe_progress(console, bus)
    return console


def _subscribe_failures(console: Console, bus: Bus) -> None:
    @bus.events.subscribe
    def _(event: events.InstanceUnreadable) -> None:
        console.failure(f"Cannot read instance [path]{escape(event.path)}[/]")
        console.hint(escape(event.message))

    @bus.events.subscribe
    def _(event: events.InstanceInfeasible) -> None:
        console.failure(
            f"Instance [instance]{escape(event.instance)}[/] has no feasible solution"
        )

    @bus.events.subscribe
    def _(event: events.NoIncumbent) -> None:
        console.failure(
            f"[algorithm]{event.algorithm}[/] found no solution for"
            f" [instance]{escape(event.instance)}[/] within the time limit"
        )
        console.hint("Try a larger --time-limit.")

    @bus.events.subscribe
    def _(event: events.InstanceTooLarge) -> None:
        console.failure(
            f"[algorithm]{event.algorithm}[/] cannot solve"
            f" [instance]{escape(event.instance)}[/]: {escape(event.message)}"
        )
        console.hint("Use --algo bda or a heuristic for instances this large.")

    @bus.events.subscribe
    def _(event: events.NumericalFailure) -> None:
        console.failure(f"Numerical failure: {escape(event.message)}")
        console.hint("Coefficients of very different magnitudes can cause this.")

    @bus.events.subscribe
    def _(event: events.BadBenchmarkSetup) -> None:
        console.failure(escape(event.message))

    @bus.events.subscribe
    def _(event: events.SchemaMismatch) -> None:
        console.failure(f"Unexpected results file [path]{escape(event.path)}[/]")
        console.hint(escape(event.message))

    @bus.events.subscribe
    def _(event: events.RunFailed) -> None:
        console.failure(
            f"[algorithm]{event.algorithm}[/] failed on"
            f" [instance]{escape(event.instance)}[/]: {escape(event.message)}"
        )


def _subscribe_progress(console: Console, bus: Bus) -> None:  # noqa: C901
    @bus.contexts.subscribe
    def _(context: events.Solving) -> ContextManager[None]:
        return console.progress(
            f"Solving [instance]{escape(context.instance)}[/]"
            f" with [algorithm]{context.algorithm}[/]"
        )

    @bus.contexts.subscribe
    def _(context: events.Benchmarking) -> ContextManager[None]:
        return console.progress(f"Running [value]{context.runs}[/] benchmark runs")

    @bus.events.subscribe
    def _(event: events.SeedSolved) -> None:
        console.detail(f"seed {event.seed}  z = {event.z:.6g}")

    @bus.events.subscribe
    def _(event: events.BendersIteration) -> None:
        console.detail(
            f"iteration {event.iteration}  lower = {event.lower:.6g}"
            f"  upper = {event.upper:.6g}  cuts = {event.cuts}"
        )

    @bus.events.subscribe
    def _(event: events.CutAdded) -> None:
        console.detail(f"cut {event.adversary}")

    @bus.events.subscribe
    def _(event: events.ScenarioSolved) -> None:
        candidate = "none" if event.candidate is None else str(event.candidate)
        console.detail(f"lambda = {event.lam:.4g}  candidate {candidate}")

    @bus.events.subscribe
    def _(event: events.CandidateEvaluated) -> None:
        console.detail(f"candidate {event.candidate}  z = {event.z:.6g}")

    @bus.events.subscribe
    def _(event: events.RunFinished) -> None:
        z = "-" if event.z is None else f"{event.z:.6g}"
        console.success(
            f"[instance]{escape(event.instance)}[/] [algorithm]{event.algorithm}[/]"
            f" {event.status} z = {z} ({event.seconds:.2f} s)"
        )


def number(value: Optional[float]) -> str:
    """Format an optional number for reports."""
    return "-" if value is None else f"{value:.6g}"


def report_lines(report: SolveReport, *, explain: bool = False) -> Iterator[str]:
    """Render a solver report as lines of text."""
    yield f"instance     {report.instance}"
    yield f"algorithm    {report.algorithm}"
    yield f"status       {report.status.value}"
    yield f"z            {number(report.z)}"
    yield f"lower bound  {number(report.lower_bound)}"
    yield f"gap          {number(report.gap)}"
    yield f"time         {report.elapsed:.3f} s"
    if report.iterations:
        yield f"iterations   {report.iterations}"
    if report.scenarios:
        yield f"scenarios    {report.scenarios}"
    if report.incumbent is not None:
        yield f"solution     {report.incumbent}"

    evaluation = report.evaluation
    if explain and evaluation is not None:
        costs = " ".join(f"{cost:.6g}" for cost in evaluation.worst.costs)
        yield f"worst case   {costs}"
        yield f"adversary    {evaluation.adversary}"
        yield f"F(x, S)      {evaluation.f_x:.6g}"
        yield f"F(S)         {evaluation.f_star:.6g}"


def _cell(summary: Optional[Summary]) -> str:
    return "-" if summary is None else str(summary)


def summary_table(
    rows: Sequence[AlgorithmSummary], baseline: str
) -> rich.table.Table:
    """Render the benchmark summary as a single row.

    The baseline's time comes first, then the deviation and time of every
    other algorithm. The caption holds the baseline's gap and the number of
    runs excluded from each deviation.
    """
    reference = next((row for row in rows if row.algorithm == baseline), None)
    others = [row for row in rows if row.algorithm != baseline]

    table = rich.table.Table(title="Summary")
    table.add_column(f"{baseline} time (s)", justify="right")
    cells = [_cell(None if reference is None else reference.time)]
    for row in others:
        table.add_column(f"{row.algorithm} dev (%)", justify="right")
        table.add_column(f"{row.algorithm} time (s)", justify="right")
        cells += [_cell(row.deviation), _cell(row.time)]
    table.add_row(*cells)

    notes = [f"{baseline} gap {_cell(None if reference is None else reference.gap)}"]
    notes += [f"{row.algorithm} excluded {row.excluded}" for row in others]
    table.caption = ", ".join(notes)
    return table


def comparison_lines(comparison: Comparison) -> Iterator[str]:
    """Render the signed-rank test and its verdict."""
    yield (
        f"wilcoxon {comparison.first} vs {comparison.second}:"
        f" W+ = {comparison.statistic:g}, p = {comparison.p:.4g}"
        f" ({comparison.pairs} pairs)"
    )
    if comparison.significant:
        yield "significant (p ≤ 0.05)"
    else:
        yield "not significant (p > 0.05)"

    faster = comparison.faster
    if faster is not None:
        assert comparison.first_time is not None  # noqa: S101
        assert comparison.second_time is not None  # noqa: S101
        yield (
            f"faster on average: {faster}"
            f" ({comparison.first} {comparison.first_time.mean:.3f} s,"
            f" {comparison.second} {comparison.second_time.mean:.3f} s)"
        )


def show_benchmark(result: BenchResult) -> None:
    """Print the summary table and the signed-rank test to standard output."""
    output = rich.console.Console(highlight=False)
    output.print(summary_table(result.summary, result.baseline))
    if result.comparison is not None:
        for line in comparison_lines(result.comparison):
            output.print(line, markup=False)
