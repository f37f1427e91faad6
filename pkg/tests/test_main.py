"""Test cases for the __main__ module."""
from pathlib import Path
from typing import List

import pytest
from click.testing import CliRunner

from mmrilp import __main__
from mmrilp.bruteforce import MAX_VARIABLES
from mmrilp.generate import GeneratorParams
from mmrilp.generate import generate_instance
from mmrilp.model import IntervalIlpInstance
from mmrilp.rilp import EXAMPLE
from mmrilp.rilp import write_rilp


@pytest.fixture
def runner() -> CliRunner:
    """Fixture for invoking command-line interfaces."""
    return CliRunner()


@pytest.fixture
def bench_dir(tmp_path: Path) -> Path:
    """Directory with the canonical instance."""
    directory = tmp_path / "instances"
    directory.mkdir()
    (directory / "ex1.rilp").write_text(EXAMPLE, encoding="utf-8")
    return directory


@pytest.mark.parametrize(
    "args",
    [
        ["--help"],
        ["solve", "--help"],
        ["generate", "--help"],
        ["bench", "--help"],
        ["compare", "--help"],
    ],
)
def test_help(runner: CliRunner, args: List[str]) -> None:
    """It succeeds when asked for help."""
    result = runner.invoke(__main__.main, args)
    assert result.exit_code == 0, result.output


@pytest.mark.parametrize("algorithm", ["bda", "amu", "sba", "brute", "mean"])
def test_solve(runner: CliRunner, ex1_path: Path, algorithm: str) -> None:
    """It prints the robustness cost of the solution."""
    args = ["solve", f"--algo={algorithm}", str(ex1_path)]
    result = runner.invoke(__main__.main, args)
    assert result.exit_code == 0, result.output
    assert "z            1\n" in result.output
    assert "solution     01\n" in result.output


def test_solve_explain(runner: CliRunner, ex1_path: Path) -> None:
    """It shows the adversary of the solution."""
    result = runner.invoke(__main__.main, ["solve", "--explain", str(ex1_path)])
    assert result.exit_code == 0, result.output
    assert "adversary    10\n" in result.output


def test_solve_environment(runner: CliRunner, ex1_path: Path) -> None:
    """It reads options from the environment."""
    result = runner.invoke(
        __main__.main, ["solve", str(ex1_path)], env={"MMRILP_SOLVE_ALGO": "amu"}
    )
    assert result.exit_code == 0, result.output
    assert "algorithm    amu\n" in result.output


def test_solve_invalid_sweep(runner: CliRunner, ex1_path: Path) -> None:
    """It rejects a sweep without a positive step."""
    result = runner.invoke(__main__.main, ["solve", "--sba-gamma=0", str(ex1_path)])
    assert result.exit_code == 2


def test_solve_missing_file(runner: CliRunner, tmp_path: Path) -> None:
    """It exits with status 2 if the instance cannot be read."""
    result = runner.invoke(__main__.main, ["solve", str(tmp_path / "none.rilp")])
    assert result.exit_code == 2


def test_solve_malformed_file(runner: CliRunner, tmp_path: Path) -> None:
    """It exits with status 2 if the instance cannot be parsed."""
    path = tmp_path / "bad.rilp"
    path.write_text("RILP 2\n", encoding="utf-8")
    result = runner.invoke(__main__.main, ["solve", str(path)])
    assert result.exit_code == 2


@pytest.mark.parametrize("algorithm", ["bda", "amu", "sba"])
def test_solve_infeasible(
    runner: CliRunner,
    tmp_path: Path,
    infeasible: IntervalIlpInstance,
    algorithm: str,
) -> None:
    """It exits with status 1 if the instance is infeasible."""
    path = tmp_path / "infeasible.rilp"
    path.write_text(write_rilp(infeasible), encoding="utf-8")
    result = runner.invoke(__main__.main, ["solve", f"--algo={algorithm}", str(path)])
    assert result.exit_code == 1


def test_solve_too_large(runner: CliRunner, tmp_path: Path) -> None:
    """It exits with status 2 if enumeration is asked for too many variables."""
    path = tmp_path / "large.rilp"
    problem = generate_instance(GeneratorParams(n=MAX_VARIABLES + 1, m=2, seed=1))
    path.write_text(write_rilp(problem), encoding="utf-8")
    result = runner.invoke(__main__.main, ["solve", "--algo=brute", str(path)])
    assert result.exit_code == 2


def test_solve_out(runner: CliRunner, ex1_path: Path, tmp_path: Path) -> None:
    """It appends a result row, writing the header once."""
    out = tmp_path / "results.csv"
    for algorithm in ("bda", "amu"):
        result = runner.invoke(
            __main__.main,
            ["solve", f"--algo={algorithm}", f"--out={out}", str(ex1_path)],
        )
        assert result.exit_code == 0, result.output

    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "instance,algorithm,status,z,lower_bound,gap,time_ms,seed"
    assert lines[1].startswith("ex1,bda,OPTIMAL,1.0,1.0,0.0,")
    assert lines[2].startswith("ex1,amu,FEASIBLE,1.0,,,")
    assert len(lines) == 3


def test_generate_stdout(runner: CliRunner) -> None:
    """It writes the same instance for the same seed."""
    args = ["generate", "--vars=8", "--cons=3", "--seed=5"]
    first = runner.invoke(__main__.main, args)
    second = runner.invoke(__main__.main, args)
    assert first.exit_code == 0, first.output
    assert first.output.startswith("RILP 1\nNAME gen-n8-m3-s5\n")
    assert first.output == second.output


def test_generate_file(runner: CliRunner, tmp_path: Path) -> None:
    """It writes the instance to a file and reports its size."""
    path = tmp_path / "cover.rilp"
    result = runner.invoke(
        __main__.main,
        ["generate", "--vars=6", "--cons=2", "--kind=covering", f"-o{path}"],
    )
    assert result.exit_code == 0, result.output
    assert result.output == f"{path}: n=6 m=2 seed=0\n"
    assert "NAME cover-n6-m2-s0" in path.read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "args", [["--vars=0"], ["--vars=4", "--spread=2"], ["--vars=4", "--cmin=0"]]
)
def test_generate_invalid(runner: CliRunner, args: List[str]) -> None:
    """It rejects parameters out of range."""
    result = runner.invoke(__main__.main, ["generate", *args])
    assert result.exit_code == 2


def test_bench(runner: CliRunner, bench_dir: Path, tmp_path: Path) -> None:
    """It writes one row per algorithm and prints the summary."""
    out = tmp_path / "results.csv"
    result = runner.invoke(__main__.main, ["bench", str(bench_dir), f"--out={out}"])
    assert result.exit_code == 0, result.output

    lines = out.read_text(encoding="utf-8").splitlines()
    assert [line.split(",")[:2] for line in lines[1:]] == [
        ["ex1", "amu"],
        ["ex1", "bda"],
        ["ex1", "sba"],
    ]
    assert "Summary" in result.output
    assert "wilcoxon amu vs sba" in result.output


def test_bench_empty(runner: CliRunner, tmp_path: Path) -> None:
    """It writes only the header for an empty directory."""
    out = tmp_path / "results.csv"
    result = runner.invoke(__main__.main, ["bench", str(tmp_path), f"--out={out}"])
    assert result.exit_code == 0, result.output
    assert out.read_text(encoding="utf-8").splitlines() == [
        "instance,algorithm,status,z,lower_bound,gap,time_ms,seed"
    ]


def test_bench_infeasible(
    runner: CliRunner,
    bench_dir: Path,
    tmp_path: Path,
    infeasible: IntervalIlpInstance,
) -> None:
    """It records infeasible instances and exits with status 1."""
    (bench_dir / "infeasible.rilp").write_text(
        write_rilp(infeasible), encoding="utf-8"
    )
    out = tmp_path / "results.csv"
    result = runner.invoke(__main__.main, ["bench", str(bench_dir), f"--out={out}"])
    assert result.exit_code == 1

    lines = out.read_text(encoding="utf-8").splitlines()
    statuses = [line.split(",")[2] for line in lines[1:]]
    assert statuses.count("INFEASIBLE") == 3
    assert "ERROR" not in statuses


def test_bench_sweep(runner: CliRunner, bench_dir: Path, tmp_path: Path) -> None:
    """It passes the sweep parameters to the scenario-based heuristic."""
    out = tmp_path / "results.csv"
    args = ["bench", str(bench_dir), f"--out={out}", "--algos=bda,sba"]
    result = runner.invoke(__main__.main, [*args, "--sba-gamma=0"])
    assert result.exit_code == 2

    result = runner.invoke(
        __main__.main, [*args, "--sba-alpha=0.5", "--sba-beta=0.5", "--sba-gamma=1"]
    )
    assert result.exit_code == 0, result.output
    assert "ex1,sba,FEASIBLE,1.0" in out.read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "args", [["--algos=amu", "--baseline=bda"], ["--algos=bda,simplex"]]
)
def test_bench_invalid(
    runner: CliRunner, bench_dir: Path, tmp_path: Path, args: List[str]
) -> None:
    """It exits with status 2 for an inconsistent setup."""
    out = tmp_path / "results.csv"
    result = runner.invoke(
        __main__.main, ["bench", str(bench_dir), f"--out={out}", *args]
    )
    assert result.exit_code == 2


def test_compare(runner: CliRunner, bench_dir: Path, tmp_path: Path) -> None:
    """It reports the deviations and the signed-rank test."""
    out = tmp_path / "results.csv"
    runner.invoke(__main__.main, ["bench", str(bench_dir), f"--out={out}"])

    result = runner.invoke(__main__.main, ["compare", str(out)])
    assert result.exit_code == 0, result.output
    assert "amu: dev (%) 0.00 ± 0.00\n" in result.output
    assert "not significant (p > 0.05)\n" in result.output


def test_compare_missing_column(runner: CliRunner, tmp_path: Path) -> None:
    """It exits with status 2 if a required column is missing."""
    path = tmp_path / "results.csv"
    path.write_text("instance,algorithm,status,time_ms\n", encoding="utf-8")
    result = runner.invoke(__main__.main, ["compare", str(path)])
    assert result.exit_code == 2
