"""Exhaustive trajectory surveys over all elements below a degree bound.

run_survey walks every nonzero element of degree < D through
run_trajectory and aggregates stopping-time buckets, timeout counts,
and cycle-length counts stratified by starting degree.  Work is
sharded over contiguous ranges of the integer element encoding, and
shard reports merge commutatively, so the result is identical for any
worker count.  Table helpers render the three report views (sigma
histogram, timeout-density summary, cycle-length counts) as rows ready
for CSV or JSON.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .curve_ring import CurveElem
from .dynamics import (
    DEFAULT_DEGREE_CAP,
    DEFAULT_STEP_CAP,
    CurveSystem,
    InternalInvariantError,
    LineSystem,
)
from .ruin import limit_probability

__all__ = [
    "SurveyReport",
    "SurveySpec",
    "enumerate_elements",
    "lambda_powerlaw_rows",
    "merge_reports",
    "run_survey",
    "sigma_distribution_rows",
    "timeout_summary_row",
]


@dataclass(frozen=True)
class SurveySpec:
    system: LineSystem | CurveSystem
    max_degree: int
    step_cap: int = DEFAULT_STEP_CAP
    degree_cap: int = DEFAULT_DEGREE_CAP
    bucket_width: int = 50

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.step_cap < 1:
            raise ValueError("step_cap must be >= 1")
        if self.degree_cap < self.max_degree:
            raise ValueError("degree_cap must be >= max_degree")
        if self.bucket_width < 1:
            raise ValueError("bucket_width must be >= 1")

    @property
    def element_count(self) -> int:
        bits = self.max_degree if self.system.ring_kind == "line" else 2 * self.max_degree
        return (1 << bits) - 1


@dataclass
class SurveyReport:
    """Aggregated survey counts.

    sigma_histogram maps bucket floor -> count of finite stopping
    times; every element with no witnessed drop (step-cap timeout or
    degree-cap abort) lands in timeout_count, with the aborts also
    counted separately.  lambda_histogram maps (start degree, period)
    -> count; walks whose cycle was not closed within the caps land in
    lambda_none_by_degree.  elapsed_seconds is informational and
    excluded from equality.
    """

    max_degree: int
    bucket_width: int
    elements_surveyed: int = 0
    sigma_histogram: dict[int, int] = field(default_factory=dict)
    timeout_count: int = 0
    degree_abort_count: int = 0
    lambda_histogram: dict[tuple[int, int], int] = field(default_factory=dict)
    lambda_none_by_degree: dict[int, int] = field(default_factory=dict)
    elapsed_seconds: float = field(default=0.0, compare=False)

    @property
    def timeout_density(self) -> float:
        return self.timeout_count / self.elements_surveyed if self.elements_surveyed else 0.0

    @property
    def lambda_none_count(self) -> int:
        return sum(self.lambda_none_by_degree.values())

    def check_conservation(self):
        """Every element is in exactly one sigma class and one lambda class."""
        sigma_total = sum(self.sigma_histogram.values()) + self.timeout_count
        lambda_total = sum(self.lambda_histogram.values()) + self.lambda_none_count
        if sigma_total != self.elements_surveyed or lambda_total != self.elements_surveyed:
            raise InternalInvariantError(
                f"survey counts do not cover the {self.elements_surveyed} elements: "
                f"sigma classes {sigma_total}, lambda classes {lambda_total}"
            )


def enumerate_elements(system, max_degree: int):
    """All nonzero elements of degree < max_degree, ascending encoding.

    Line elements are the ints 1..2^D-1.  Curve elements are decoded
    from codes 1..4^D-1 with the low D bits giving f0 and the high D
    bits f1 (D=1 yields 1, x, 1+x in that order).
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if system.ring_kind == "line":
        yield from range(1, 1 << max_degree)
    else:
        mask = (1 << max_degree) - 1
        for code in range(1, 1 << (2 * max_degree)):
            yield CurveElem(code & mask, code >> max_degree)


def _decode_element(system, max_degree: int, code: int):
    if system.ring_kind == "line":
        return code
    mask = (1 << max_degree) - 1
    return CurveElem(code & mask, code >> max_degree)


def _survey_range(spec: SurveySpec, lo: int, hi: int) -> SurveyReport:
    """Survey codes lo..hi-1; shard of run_survey."""
    system = spec.system
    report = SurveyReport(max_degree=spec.max_degree, bucket_width=spec.bucket_width)
    sigma_hist = report.sigma_histogram
    lambda_hist = report.lambda_histogram
    lambda_none = report.lambda_none_by_degree
    width = spec.bucket_width
    for code in range(lo, hi):
        f = _decode_element(system, spec.max_degree, code)
        deg0 = system.degree_of(f)
        sigma, period, _, _, capped = system._run_raw(f, spec.step_cap, spec.degree_cap)
        if sigma is None:
            report.timeout_count += 1
            if capped:
                report.degree_abort_count += 1
        else:
            bucket = (sigma // width) * width
            sigma_hist[bucket] = sigma_hist.get(bucket, 0) + 1
        if period is None:
            lambda_none[deg0] = lambda_none.get(deg0, 0) + 1
        else:
            key = (deg0, period)
            lambda_hist[key] = lambda_hist.get(key, 0) + 1
    report.elements_surveyed = hi - lo
    return report


def merge_reports(a: SurveyReport, b: SurveyReport) -> SurveyReport:
    """Commutative, associative shard merge."""
    if (a.max_degree, a.bucket_width) != (b.max_degree, b.bucket_width):
        raise ValueError("cannot merge reports with different survey shapes")
    merged = SurveyReport(
        max_degree=a.max_degree,
        bucket_width=a.bucket_width,
        elements_surveyed=a.elements_surveyed + b.elements_surveyed,
        timeout_count=a.timeout_count + b.timeout_count,
        degree_abort_count=a.degree_abort_count + b.degree_abort_count,
        elapsed_seconds=a.elapsed_seconds + b.elapsed_seconds,
    )
    for src in (a, b):
        for key, count in src.sigma_histogram.items():
            merged.sigma_histogram[key] = merged.sigma_histogram.get(key, 0) + count
        for key, count in src.lambda_histogram.items():
            merged.lambda_histogram[key] = merged.lambda_histogram.get(key, 0) + count
        for key, count in src.lambda_none_by_degree.items():
            merged.lambda_none_by_degree[key] = merged.lambda_none_by_degree.get(key, 0) + count
    return merged


def run_survey(spec: SurveySpec, jobs: int = 1) -> SurveyReport:
    """Survey every element of the spec's range; see module docstring."""
    start = time.perf_counter()
    total = spec.element_count
    jobs = max(1, jobs)
    if jobs == 1 or total < 4 * jobs:
        report = _survey_range(spec, 1, total + 1)
    else:
        # Fine-grained shards keep workers busy when slow (divergent)
        # elements cluster; merge order does not matter.
        n_shards = jobs * 8
        size = (total + n_shards - 1) // n_shards
        bounds = [(lo, min(lo + size, total + 1)) for lo in range(1, total + 1, size)]
        report = SurveyReport(max_degree=spec.max_degree, bucket_width=spec.bucket_width)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_survey_range, spec, lo, hi) for lo, hi in bounds]
            for future in futures:
                report = merge_reports(report, future.result())
    report.elapsed_seconds = time.perf_counter() - start
    report.check_conservation()
    return report


def sigma_distribution_rows(report: SurveyReport) -> list[tuple]:
    """Rows (bucket_lo, bucket_hi, count), then a terminal timeout row."""
    rows = [
        (lo, lo + report.bucket_width, report.sigma_histogram[lo])
        for lo in sorted(report.sigma_histogram)
    ]
    rows.append(("timeout", "", report.timeout_count))
    return rows


SIGMA_HEADER = ("bucket_lo", "bucket_hi", "count")
TIMEOUT_HEADER = (
    "m",
    "D",
    "cap",
    "surveyed",
    "timeouts",
    "density",
    "predicted_1_minus_Pd",
    "degree_cap_aborts",
)


def timeout_summary_row(spec: SurveySpec, report: SurveyReport) -> tuple:
    """One summary row comparing observed timeout density with 1 - P_d."""
    system = spec.system
    q = Fraction(1, 2) if system.ring_kind == "line" else Fraction(1, 4)
    predicted = 1.0 - limit_probability(system.d, q).probability
    return (
        system.format_element(system.m),
        report.max_degree,
        spec.step_cap,
        report.elements_surveyed,
        report.timeout_count,
        report.timeout_density,
        predicted,
        report.degree_abort_count,
    )


def lambda_powerlaw_rows(report: SurveyReport) -> tuple[list[str], list[tuple]]:
    """Cycle-length counts per starting degree.

    One row per power of two up to the largest period observed, then
    rows for periods divisible by 4 that are not powers of two, all
    remaining periods, and walks with no cycle found.  Returns
    (header, rows) with one count column per starting degree.
    """
    degrees = list(range(report.max_degree))
    header = ["k", "period"] + [f"deg_{deg}" for deg in degrees]
    by_class: dict[object, dict[int, int]] = {}
    max_period = 1
    for (deg, period), count in report.lambda_histogram.items():
        max_period = max(max_period, period)
        if (period & (period - 1)) == 0:
            key = period.bit_length() - 1  # k with period = 2^k
        elif period % 4 == 0:
            key = "mult4_not_pow2"
        else:
            key = "other"
        by_class.setdefault(key, {})
        by_class[key][deg] = by_class[key].get(deg, 0) + count
    rows = []
    for k in range(max_period.bit_length()):
        counts = by_class.get(k, {})
        rows.append((k, 1 << k) + tuple(counts.get(deg, 0) for deg in degrees))
    for label in ("mult4_not_pow2", "other"):
        counts = by_class.get(label, {})
        rows.append((label, "") + tuple(counts.get(deg, 0) for deg in degrees))
    rows.append(
        ("none", "") + tuple(report.lambda_none_by_degree.get(deg, 0) for deg in degrees)
    )
    return header, rows
