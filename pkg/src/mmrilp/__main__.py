"""Command-line interface."""
from pathlib import Path
from typing import Dict
from typing import List
from typing import NoReturn
from typing import Optional
from typing import Type

import click

from mmrilp import console
from mmrilp import events
from mmrilp.base.bus import Bus
from mmrilp.base.bus import Error
from mmrilp.base.bus import Event
from mmrilp.base.exceptionhandlers import ExceptionHandler
from mmrilp.base.exceptionhandlers import exceptionhandler
from mmrilp.bench import compare as compare_algorithms
from mmrilp.bench import instance_seed
from mmrilp.bench import read_csv
from mmrilp.bench import run_benchmark
from mmrilp.bench import write_csv
from mmrilp.benders import DEFAULT_EPSILON
from mmrilp.core import ALGORITHMS
from mmrilp.core import DEFAULT_TIME_LIMIT
from mmrilp.core import solve as solve_instance
from mmrilp.core import SolveOptions
from mmrilp.errors import InfeasibleInstance
from mmrilp.errors import InvalidParameters
from mmrilp.errors import MalformedInstance
from mmrilp.errors import NumericalBreakdown
from mmrilp.errors import ParseError
from mmrilp.errors import SchemaError
from mmrilp.errors import StalledDecomposition
from mmrilp.errors import TooLarge
from mmrilp.generate import GeneratorParams
from mmrilp.generate import generate_instance
from mmrilp.generate import InstanceKind
from mmrilp.heuristics import DEFAULT_SBA
from mmrilp.heuristics import SbaParams
from mmrilp.model import IntervalIlpInstance
from mmrilp.report import BenchRecord
from mmrilp.report import Status
from mmrilp.rilp import parse_rilp
from mmrilp.rilp import write_rilp
from mmrilp.stats import aggregate


EXIT_CODES: Dict[Type[Event], int] = {
    events.InstanceInfeasible: 1,
    events.InstanceUnreadable: 2,
    events.BadBenchmarkSetup: 2,
    events.SchemaMismatch: 2,
    events.InstanceTooLarge: 2,
    events.NoIncumbent: 3,
    events.NumericalFailure: 4,
}


@exceptionhandler
def exithandler(exception: Error) -> NoReturn:
    """Exit with the status code of the error event."""
    raise SystemExit(EXIT_CODES.get(type(exception.event), 1))


def mainhandler(*, bus: Bus) -> ExceptionHandler:
    """Render error events and exit."""
    return bus.events.errorhandler() >> exithandler


def instancehandler(path: Path, *, bus: Bus) -> ExceptionHandler:
    """Handle errors reading an instance file."""

    @exceptionhandler(OSError, UnicodeDecodeError, ParseError, MalformedInstance)
    def _(error: Exception) -> NoReturn:
        bus.events.raise_(events.InstanceUnreadable(str(path), str(error)))

    return _


def solverhandler(instance: str, algorithm: str, *, bus: Bus) -> ExceptionHandler:
    """Handle errors raised by the algorithms."""

    @exceptionhandler
    def infeasible(error: InfeasibleInstance) -> NoReturn:
        bus.events.raise_(events.InstanceInfeasible(instance))

    @exceptionhandler(NumericalBreakdown, StalledDecomposition)
    def numerical(error: Exception) -> NoReturn:
        bus.events.raise_(events.NumericalFailure(str(error)))

    @exceptionhandler
    def too_large(error: TooLarge) -> NoReturn:
        bus.events.raise_(events.InstanceTooLarge(instance, algorithm, str(error)))

    return infeasible >> numerical >> too_large


def sba_params(alpha: float, beta: float, gamma: float) -> SbaParams:
    """Validate the scenario sweep given on the command line."""
    try:
        return SbaParams(alpha, beta, gamma)
    except InvalidParameters as error:
        raise click.UsageError(str(error)) from None


def load_instance(path: Path, *, bus: Bus) -> IntervalIlpInstance:
    """Read and parse an RILP file."""
    with instancehandler(path, bus=bus):
        return parse_rilp(path.read_text(encoding="utf-8"))


@click.group(context_settings={"auto_envvar_prefix": "MMRILP", "show_default": True})
@click.version_option()
def main() -> None:
    """Min-max regret solvers for 0-1 ILPs with interval objective costs.

    Instances are read from RILP files. Every option can also be set in the
    environment, for example MMRILP_SOLVE_TIME_LIMIT for the --time-limit
    option of the solve command.
    """


@main.command()
@click.argument("instance", type=click.Path(dir_okay=False, path_type=Path))
@click.option(
    "--algo",
    type=click.Choice(ALGORITHMS),
    default="bda",
    help="Exact decomposition, heuristics, enumeration, or a single scenario.",
)
@click.option(
    "--time-limit",
    type=click.FloatRange(min=0),
    default=DEFAULT_TIME_LIMIT,
    help="Seconds for the whole run.",
)
@click.option(
    "--epsilon",
    type=click.FloatRange(min=0),
    default=DEFAULT_EPSILON,
    help="Gap at which the decomposition stops.",
)
@click.option(
    "--sba-alpha", type=float, default=DEFAULT_SBA.alpha, help="First SBA scenario."
)
@click.option(
    "--sba-beta", type=float, default=DEFAULT_SBA.beta, help="Last SBA scenario."
)
@click.option("--sba-gamma", type=float, default=DEFAULT_SBA.gamma, help="SBA step.")
@click.option(
    "--explain", is_flag=True, help="Show the worst-case scenario and adversary."
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Append the result to this CSV file.",
)
@click.option("--verbose", "-v", is_flag=True, help="Show progress.")
def solve(
    instance: Path,
    algo: str,
    time_limit: float,
    epsilon: float,
    sba_alpha: float,
    sba_beta: float,
    sba_gamma: float,
    explain: bool,
    out: Optional[Path],
    verbose: bool,
) -> None:
    """Solve the min-max regret problem of an instance.

    The exit status is 1 if the instance is infeasible, 2 if it cannot be
    read, 3 if the time limit expired before any solution was found, and 4
    on numerical failure.
    """
    sba = sba_params(sba_alpha, sba_beta, sba_gamma)
    bus = Bus()
    console.start(bus=bus, verbose=verbose)
    options = SolveOptions(time_limit, epsilon, sba)

    with mainhandler(bus=bus):
        problem = load_instance(instance, bus=bus)

        with solverhandler(problem.name, algo, bus=bus):
            report = solve_instance(problem, algo, options, bus=bus)

        if report.status is Status.INFEASIBLE:
            bus.events.raise_(events.InstanceInfeasible(problem.name))
        if report.incumbent is None:
            bus.events.raise_(events.NoIncumbent(problem.name, algo))

    for line in console.report_lines(report, explain=explain):
        click.echo(line)

    if out is not None:
        header = not out.exists() or out.stat().st_size == 0
        with out.open("a", encoding="utf-8", newline="") as stream:
            seed = instance_seed(report.instance)
            record = BenchRecord.from_report(report, report.elapsed, seed)
            write_csv([record], stream, header=header)


@main.command()
@click.option("--vars", "n", type=int, required=True, help="Number of variables.")
@click.option("--cons", "m", type=int, default=5, help="Number of constraints.")
@click.option("--density", type=float, default=0.3, help="Row density.")
@click.option("--spread", type=float, default=0.5, help="Relative interval width.")
@click.option(
    "--rhs-fraction", type=float, default=0.5, help="Right-hand side fraction."
)
@click.option("--cmin", type=int, default=1, help="Smallest base cost.")
@click.option("--cmax", type=int, default=100, help="Largest base cost.")
@click.option("--seed", type=int, default=0, help="Random seed.")
@click.option(
    "--kind",
    type=click.Choice([kind.value for kind in InstanceKind]),
    default=InstanceKind.PACKING.value,
    help="Packing or covering rows.",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, allow_dash=True, path_type=Path),
    default=Path("-"),
    help="Output file, or - for standard output.",
)
def generate(
    n: int,
    m: int,
    density: float,
    spread: float,
    rhs_fraction: float,
    cmin: int,
    cmax: int,
    seed: int,
    kind: str,
    output: Path,
) -> None:
    """Generate a random instance in RILP format."""
    try:
        params = GeneratorParams(
            n=n,
            m=m,
            density=density,
            c_min=cmin,
            c_max=cmax,
            spread=spread,
            rhs_fraction=rhs_fraction,
            seed=seed,
            kind=InstanceKind(kind),
        )
    except InvalidParameters as error:
        raise click.UsageError(str(error)) from None

    text = write_rilp(generate_instance(params))
    if str(output) == "-":
        click.echo(text, nl=False)
        return

    output.write_text(text, encoding="utf-8")
    click.echo(f"{output}: n={n} m={m} seed={seed}")


@main.command()
@click.argument(
    "directory", type=click.Path(exists=True, file_okay=False, path_type=Path)
)
@click.option(
    "--algos", default="bda,amu,sba", help="Comma-separated algorithms to run."
)
@click.option(
    "--time-limit",
    type=click.FloatRange(min=0),
    default=DEFAULT_TIME_LIMIT,
    help="Seconds per run.",
)
@click.option(
    "--epsilon",
    type=click.FloatRange(min=0),
    default=DEFAULT_EPSILON,
    help="Gap at which the decomposition stops.",
)
@click.option(
    "--sba-alpha", type=float, default=DEFAULT_SBA.alpha, help="First SBA scenario."
)
@click.option(
    "--sba-beta", type=float, default=DEFAULT_SBA.beta, help="Last SBA scenario."
)
@click.option("--sba-gamma", type=float, default=DEFAULT_SBA.gamma, help="SBA step.")
@click.option("--baseline", default="bda", help="Reference for the deviations.")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=Path("results.csv"),
    help="Results file.",
)
@click.option(
    "--jobs", type=click.IntRange(min=1), default=1, help="Worker processes."
)
@click.option("--verbose", "-v", is_flag=True, help="Show progress.")
def bench(
    directory: Path,
    algos: str,
    time_limit: float,
    epsilon: float,
    sba_alpha: float,
    sba_beta: float,
    sba_gamma: float,
    baseline: str,
    out: Path,
    jobs: int,
    verbose: bool,
) -> None:
    """Run algorithms on every .rilp file of a directory.

    Writes one CSV row per instance and algorithm, then prints the mean and
    standard deviation of time and deviation from the baseline. The exit
    status is 1 if any run failed or any instance is infeasible.
    """
    sba = sba_params(sba_alpha, sba_beta, sba_gamma)
    bus = Bus()
    console.start(bus=bus, verbose=verbose)
    algorithms = [name.strip() for name in algos.split(",") if name.strip()]

    with mainhandler(bus=bus):
        instances = [
            load_instance(path, bus=bus) for path in sorted(directory.glob("*.rilp"))
        ]
        with bus.events.reraise(
            events.BadBenchmarkSetup(
                f"cannot run {algos!r} against baseline {baseline!r};"
                f" choose from {', '.join(ALGORITHMS)} and include the baseline"
            ),
            when=InvalidParameters,
        ):
            result = run_benchmark(
                instances,
                algorithms,
                time_limit,
                baseline,
                options=SolveOptions(time_limit, epsilon, sba),
                jobs=jobs,
                bus=bus,
            )

    with out.open("w", encoding="utf-8", newline="") as stream:
        write_csv(result.records, stream)

    console.show_benchmark(result)

    for name in result.infeasible:
        bus.events.publish(events.InstanceInfeasible(name))

    if result.failures or result.infeasible:
        raise SystemExit(1)


@main.command()
@click.argument(
    "results", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@click.option("--baseline", default="bda", help="Reference for the deviations.")
@click.option("--first", default="amu", help="First algorithm to compare.")
@click.option("--second", default="sba", help="Second algorithm to compare.")
def compare(results: Path, baseline: str, first: str, second: str) -> None:
    """Test whether two algorithms deviate differently from the baseline.

    Prints the mean and standard deviation of each algorithm's deviation and
    the two-sided p-value of the Wilcoxon signed-rank test.
    """
    bus = Bus()
    console.start(bus=bus)

    with mainhandler(bus=bus):
        with _schemahandler(results, bus=bus):
            with results.open(encoding="utf-8", newline="") as stream:
                records = read_csv(stream)
            comparison = compare_algorithms(records, baseline, first, second)

    lines: List[str] = []
    for row in aggregate(records, baseline):
        if row.algorithm in (first, second) and row.deviation is not None:
            lines.append(f"{row.algorithm}: dev (%) {row.deviation}")
    lines.extend(console.comparison_lines(comparison))

    for line in lines:
        click.echo(line)


def _schemahandler(path: Path, *, bus: Bus) -> ExceptionHandler:
    @exceptionhandler
    def _(error: SchemaError) -> NoReturn:
        bus.events.raise_(events.SchemaMismatch(str(path), str(error)))

    return _


if __name__ == "__main__":
    main(prog_name="mmrilp")  # pragma: no cover
