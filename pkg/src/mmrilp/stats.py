"""Deviations, summaries, and the Wilcoxon signed-rank test.

>>> wilcoxon_signed_rank([(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)])
(6.0, 0.25)
"""
from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import DefaultDict
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
import numpy.typing as npt
import scipy.stats

from mmrilp.errors import InvalidParameters
from mmrilp.errors import ZeroBaseline
from mmrilp.report import BenchRecord
from mmrilp.report import Status


ZERO = 1e-12
EXACT_LIMIT = 20
SIGNIFICANCE = 0.05


def relative_deviation(heuristic: float, baseline: float) -> float:
    """Return ``(heuristic - baseline) / baseline``.

    Raises:
        ZeroBaseline: The baseline is not positive.
    """
    if baseline <= ZERO:
        raise ZeroBaseline(f"deviation from baseline {baseline} is undefined")
    return (heuristic - baseline) / baseline


@dataclass(frozen=True)
class Summary:
    """Mean and sample standard deviation of a series."""

    mean: float
    std: float
    count: int

    @classmethod
    def of(cls, values: Sequence[float]) -> Optional[Summary]:
        """Summarize the values, or return None if there are none."""
        if not values:
            return None
        array = np.asarray(values, dtype=np.float64)
        std = float(np.std(array, ddof=1)) if len(array) > 1 else 0.0
        return cls(float(np.mean(array)), std, len(array))

    def __str__(self) -> str:
        """Render as ``mean ± std``."""
        return f"{self.mean:.2f} ± {self.std:.2f}"


@dataclass(frozen=True)
class AlgorithmSummary:
    """One row of the benchmark summary.

    Times are in seconds and deviations in percent. ``excluded`` counts runs
    without a defined deviation, for example because the baseline is zero.
    """

    algorithm: str
    runs: int
    time: Optional[Summary]
    deviation: Optional[Summary]
    gap: Optional[Summary]
    excluded: int


def _baselines(records: Sequence[BenchRecord], baseline: str) -> Dict[str, float]:
    return {
        record.instance: record.z
        for record in records
        if record.algorithm == baseline
        and record.z is not None
        and record.status is not Status.ERROR
    }


def deviations(
    records: Sequence[BenchRecord], baseline: str
) -> Dict[Tuple[str, str], float]:
    """Return the deviation in percent per ``(algorithm, instance)``.

    Runs without a result, without a baseline result, or with a zero baseline
    are left out.
    """
    reference = _baselines(records, baseline)
    result: Dict[Tuple[str, str], float] = {}
    for record in records:
        if record.algorithm == baseline or record.z is None:
            continue
        if record.instance not in reference:
            continue
        try:
            deviation = relative_deviation(record.z, reference[record.instance])
        except ZeroBaseline:
            continue
        result[record.algorithm, record.instance] = 100.0 * deviation
    return result


def aggregate(
    records: Sequence[BenchRecord], baseline: str = "bda"
) -> List[AlgorithmSummary]:
    """Summarize time and deviation per algorithm, in order of appearance.

    Failed runs count for nothing. Runs that hit the time limit count for the
    time but get a deviation only when the baseline has a result.
    """
    percent = deviations(records, baseline)
    grouped: DefaultDict[str, List[BenchRecord]] = defaultdict(list)
    for record in records:
        grouped[record.algorithm].append(record)

    rows: List[AlgorithmSummary] = []
    for algorithm, group in grouped.items():
        completed = [record for record in group if record.status is not Status.ERROR]
        times = [record.time_ms / 1000.0 for record in completed]
        values = [
            percent[algorithm, record.instance]
            for record in completed
            if (algorithm, record.instance) in percent
        ]
        gaps = [record.gap for record in completed if record.gap is not None]
        is_baseline = algorithm == baseline
        rows.append(
            AlgorithmSummary(
                algorithm=algorithm,
                runs=len(group),
                time=Summary.of(times),
                deviation=None if is_baseline else Summary.of(values),
                gap=Summary.of(gaps) if is_baseline else None,
                excluded=0 if is_baseline else len(group) - len(values),
            )
        )
    return rows


def paired_deviations(
    records: Sequence[BenchRecord], baseline: str, first: str, second: str
) -> List[Tuple[float, float]]:
    """Return the deviations of two algorithms on the instances both solved."""
    percent = deviations(records, baseline)
    instances = sorted({record.instance for record in records})
    return [
        (percent[first, instance], percent[second, instance])
        for instance in instances
        if (first, instance) in percent and (second, instance) in percent
    ]


class Method(str, enum.Enum):
    """How the p-value of the signed-rank test is computed."""

    AUTO = "auto"
    EXACT = "exact"
    APPROX = "approx"


def _exact_p(ranks: npt.NDArray[np.float64], statistic: float) -> float:
    """Two-sided p-value from the exact null distribution.

    Average ranks are multiples of 1/2, so the distribution is counted over
    doubled ranks, which are integers.
    """
    doubled = np.rint(2 * ranks).astype(np.int64)
    counts = np.zeros(int(doubled.sum()) + 1, dtype=np.int64)
    counts[0] = 1
    for rank in doubled:
        shifted = np.zeros_like(counts)
        shifted[rank:] = counts[: len(counts) - rank]
        counts = counts + shifted

    observed = int(round(2 * statistic))
    total = float(counts.sum())
    upper = counts[observed:].sum() / total
    lower = counts[: observed + 1].sum() / total
    return float(min(1.0, 2.0 * min(upper, lower)))


def _normal_p(ranks: npt.NDArray[np.float64], statistic: float) -> float:
    """Two-sided p-value from the normal approximation.

    The variance is reduced for tied ranks, and the statistic is moved half a
    unit towards the mean.
    """
    k = len(ranks)
    mean = k * (k + 1) / 4.0
    _, ties = np.unique(ranks, return_counts=True)
    correction = float(np.sum(ties ** 3 - ties)) / 48.0
    variance = k * (k + 1) * (2 * k + 1) / 24.0 - correction
    if variance <= 0:
        return 1.0
    z = (abs(statistic - mean) - 0.5) / np.sqrt(variance)
    return float(min(1.0, 2.0 * scipy.stats.norm.sf(z)))


def wilcoxon_signed_rank(
    pairs: Sequence[Tuple[float, float]],
    method: Method = Method.AUTO,
) -> Tuple[float, float]:
    """Run the two-sided Wilcoxon signed-rank test on paired samples.

    Zero differences are dropped, and tied absolute differences get their
    average rank. With at most 20 nonzero differences the p-value is exact,
    otherwise it comes from the normal approximation.

    Args:
        pairs: The paired samples.
        method: Force the exact or the approximate p-value.

    Returns:
        The sum of the ranks of the positive differences, and the p-value.
        Without nonzero differences the p-value is 1.

    Raises:
        InvalidParameters: There are no pairs.
    """
    if not pairs:
        raise InvalidParameters("the signed-rank test needs at least one pair")

    method = Method(method)
    differences = np.array([first - second for first, second in pairs])
    differences = differences[np.abs(differences) > ZERO]
    if not len(differences):
        return 0.0, 1.0

    ranks = scipy.stats.rankdata(np.abs(differences))
    statistic = float(ranks[differences > 0].sum())

    exact = method is Method.EXACT or (
        method is Method.AUTO and len(differences) <= EXACT_LIMIT
    )
    p = _exact_p(ranks, statistic) if exact else _normal_p(ranks, statistic)
    return statistic, p


def is_significant(p: float) -> bool:
    """Return True if ``p`` is at most 0.05."""
    return p <= SIGNIFICANCE
