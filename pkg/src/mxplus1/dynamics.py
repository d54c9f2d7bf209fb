"""The mx+1 map, trajectories, stopping times, and cycle detection.

Two systems share one interface: LineSystem iterates
T(f) = f/t or (m*f+1)/t on GF(2)[t], and CurveSystem iterates the
four-branch analogue on GF(2)[x,t]/(x^2+t*x+r).  Both expose step(),
single-purpose walkers (stopping_time, detect_cycle, degree_sequence)
and run_trajectory(), a single pass that finds the first degree drop,
runs Brent's cycle search, and tracks the degree peak at once.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from .curve_ring import (
    CurveElem,
    CurveRing,
    ParitySymbol,
    format_curve_elem,
    is_admissible_multiplier,
    parse_curve_elem,
    total_degree,
)
from .gf2poly import NEG_INF, bit_positions, constant_term, degree, format_poly, parse_poly

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "DEFAULT_STEP_CAP",
    "CurveSystem",
    "InternalInvariantError",
    "LineSystem",
    "TrajectoryReport",
    "estimate_growth_rate",
]

DEFAULT_STEP_CAP = 100_000
DEFAULT_DEGREE_CAP = 4096


class InternalInvariantError(RuntimeError):
    """A step produced a numerator not divisible by t.

    Cannot happen for a validated system; raised rather than silently
    truncating if state is ever corrupted.
    """


@dataclass
class TrajectoryReport:
    """One trajectory's summary.

    sigma is the first k with deg T^k(f) < deg f, or None if no drop
    was witnessed within the cap.  period is the minimal cycle length
    found by Brent's search, or None if the walk neither repeated nor
    stayed under degree_cap for the full cap.  max_degree covers every
    visited value including the start.
    """

    sigma: int | None
    period: int | None
    max_degree: int | float
    steps_executed: int
    hit_degree_cap: bool = False


class _TrajectoryOps:
    """Walkers shared by both systems; subclasses provide step() and
    degree_of() plus a raw single-pass runner for the survey hot path."""

    def stopping_time(self, f, cap: int) -> int | None:
        """First k <= cap with deg T^k(f) < deg f, else None."""
        if self.is_zero(f):
            raise ValueError("stopping time is undefined for the zero element")
        if cap < 1:
            raise ValueError("cap must be >= 1")
        deg0 = self.degree_of(f)
        v = f
        for k in range(1, cap + 1):
            v = self.step(v)
            if self.degree_of(v) < deg0:
                return k
        return None

    def detect_cycle(self, f, cap: int) -> int | None:
        """Minimal period of the eventual cycle, or None within cap.

        Brent's search: the hare walks the trajectory one step at a
        time while the tortoise teleports to the hare's position at
        powers of two.  Once the tortoise sits inside the cycle the
        first match occurs after exactly the minimal period.
        """
        if cap < 1:
            raise ValueError("cap must be >= 1")
        tortoise = f
        hare = f
        power = 1
        lam = 0
        for _ in range(cap):
            hare = self.step(hare)
            lam += 1
            if hare == tortoise:
                return lam
            if lam == power:
                tortoise = hare
                power <<= 1
                lam = 0
        return None

    def degree_sequence(self, f, n_steps: int) -> list:
        """Degrees of f, T(f), ..., T^n(f); length n_steps + 1."""
        if n_steps < 0:
            raise ValueError("n_steps must be >= 0")
        degs = [self.degree_of(f)]
        v = f
        for _ in range(n_steps):
            v = self.step(v)
            degs.append(self.degree_of(v))
        return degs

    def run_trajectory(
        self, f, cap: int = DEFAULT_STEP_CAP, degree_cap: int = DEFAULT_DEGREE_CAP
    ) -> TrajectoryReport:
        """Single pass combining the degree scan with Brent's search.

        Aborts early (period None, hit_degree_cap) once the degree
        exceeds degree_cap; such a walk is reported exactly like a
        step-cap timeout for sigma purposes.  The zero element reports
        its fixed point as the trivial period-1 cycle.
        """
        if cap < 1:
            raise ValueError("cap must be >= 1")
        if self.is_zero(f):
            return TrajectoryReport(sigma=None, period=1, max_degree=NEG_INF, steps_executed=0)
        if degree_cap <= self.degree_of(f):
            raise ValueError("degree_cap must exceed deg f")
        sigma, period, max_deg, steps, capped = self._run_raw(f, cap, degree_cap)
        return TrajectoryReport(
            sigma=sigma,
            period=period,
            max_degree=max_deg,
            steps_executed=steps,
            hit_degree_cap=capped,
        )


class LineSystem(_TrajectoryOps):
    """mx+1 dynamics on GF(2)[t] for an odd multiplier of degree >= 1."""

    ring_kind = "line"
    multiply_symbol = ParitySymbol.ONE

    def __init__(self, m: int):
        if constant_term(m) != 1:
            raise ValueError("m must be odd (constant term 1)")
        if degree(m) < 1:
            raise ValueError("m must have degree >= 1")
        self.m = m
        self.d = m.bit_length() - 1
        self._m_shifts = bit_positions(m)

    def __repr__(self):
        return f"LineSystem(m={format_poly(self.m)})"

    def zero(self) -> int:
        return 0

    def is_zero(self, f: int) -> bool:
        return f == 0

    def degree_of(self, f: int):
        return degree(f)

    def parity_term(self, f: int) -> ParitySymbol:
        return ParitySymbol(f & 1)

    def parse_element(self, text: str) -> int:
        return parse_poly(text)

    def format_element(self, f: int) -> str:
        return format_poly(f)

    def step(self, f: int) -> int:
        if f & 1:
            acc = 1
            for s in self._m_shifts:
                acc ^= f << s
            if acc & 1:
                raise InternalInvariantError("m*f + 1 not divisible by t")
            return acc >> 1
        return f >> 1

    def _run_raw(self, f: int, cap: int, degree_cap: int):
        # Nonzero values stay nonzero on the line (deg m >= 1 makes
        # m*f + 1 nonzero), so bit_length()-1 is always the true degree.
        shifts = self._m_shifts
        deg0 = f.bit_length() - 1
        max_deg = deg0
        sigma = None
        tortoise = f
        hare = f
        power = 1
        lam = 0
        steps = 0
        while steps < cap:
            if hare & 1:
                acc = 1
                for s in shifts:
                    acc ^= hare << s
                hare = acc >> 1
            else:
                hare >>= 1
            steps += 1
            lam += 1
            d = hare.bit_length() - 1
            if d > max_deg:
                max_deg = d
                if d > degree_cap:
                    return sigma, None, max_deg, steps, True
            elif sigma is None and d < deg0:
                sigma = steps
            if hare == tortoise:
                return sigma, lam, max_deg, steps, False
            if lam == power:
                tortoise = hare
                power <<= 1
                lam = 0
        return sigma, None, max_deg, steps, False


class CurveSystem(_TrajectoryOps):
    """mx+1 dynamics on GF(2)[x,t]/(x^2+t*x+r) for admissible m.

    Admissibility (m = x mod t with a wide component degree gap) makes
    every multiply branch divisible by t and degree-additive.  The
    modulus must additionally be odd: for r with r(0) = 0 (only r = t
    among irreducibles) the multiply branch is not divisible by t.
    """

    ring_kind = "curve"
    multiply_symbol = ParitySymbol.ONE_PLUS_X

    def __init__(self, ring: CurveRing, m: CurveElem):
        if constant_term(ring.r) != 1:
            raise ValueError("ring modulus r must be odd (constant term 1)")
        if not is_admissible_multiplier(ring, m):
            raise ValueError(
                "m must be x (mod t) with deg m1 <= deg m0 - max(2, deg r)"
            )
        self.ring = ring
        self.m = m
        self.d = total_degree(m)
        self._m0_shifts = bit_positions(m.f0)
        self._m1_shifts = bit_positions(m.f1)
        self._r_shifts = bit_positions(ring.r)

    def __repr__(self):
        return (
            f"CurveSystem(r={format_poly(self.ring.r)}, m={format_curve_elem(self.m)})"
        )

    def zero(self) -> CurveElem:
        return CurveElem(0, 0)

    def is_zero(self, f: CurveElem) -> bool:
        return not (f.f0 | f.f1)

    def degree_of(self, f: CurveElem):
        return total_degree(f)

    def parity_term(self, f: CurveElem) -> ParitySymbol:
        return ParitySymbol((f.f0 & 1) | ((f.f1 & 1) << 1))

    def parse_element(self, text: str) -> CurveElem:
        return parse_curve_elem(text)

    def format_element(self, f: CurveElem) -> str:
        return format_curve_elem(f)

    def step(self, f: CurveElem) -> CurveElem:
        f0, f1 = f
        residue = (f0 & 1) | ((f1 & 1) << 1)
        if residue == 3:
            g0, g1 = self._multiply_branch(f0, f1)
            return CurveElem(g0, g1)
        if residue == 1:
            f0 ^= 1
        elif residue == 2:
            f1 ^= 1
        return CurveElem(f0 >> 1, f1 >> 1)

    def _multiply_branch(self, f0: int, f1: int) -> tuple[int, int]:
        # (m*f + 1 + x) / t with m = m0 + x*m1 expanded by shift lists.
        cross = 0
        for s in self._m1_shifts:
            cross ^= f1 << s
        g0 = 1
        for s in self._m0_shifts:
            g0 ^= f0 << s
        for s in self._r_shifts:
            g0 ^= cross << s
        g1 = 1 ^ (cross << 1)
        for s in self._m0_shifts:
            g1 ^= f1 << s
        for s in self._m1_shifts:
            g1 ^= f0 << s
        if (g0 | g1) & 1:
            raise InternalInvariantError("m*f + 1 + x not divisible by t")
        return g0 >> 1, g1 >> 1

    def _run_raw(self, f: CurveElem, cap: int, degree_cap: int):
        # Walks raw int pairs; bit_length()-1 stands in for the degree
        # (-1 for zero components, consistent for every comparison made
        # here since deg0 >= 0).
        f0, f1 = f
        deg0 = max(f0.bit_length(), f1.bit_length()) - 1
        max_deg = deg0
        sigma = None
        t0, t1 = f0, f1
        power = 1
        lam = 0
        steps = 0
        while steps < cap:
            residue = (f0 & 1) | ((f1 & 1) << 1)
            if residue == 3:
                f0, f1 = self._multiply_branch(f0, f1)
            else:
                if residue == 1:
                    f0 ^= 1
                elif residue == 2:
                    f1 ^= 1
                f0 >>= 1
                f1 >>= 1
            steps += 1
            lam += 1
            d = max(f0.bit_length(), f1.bit_length()) - 1
            if d > max_deg:
                max_deg = d
                if d > degree_cap:
                    return sigma, None, max_deg, steps, True
            elif sigma is None and d < deg0:
                sigma = steps
            if f0 == t0 and f1 == t1:
                return sigma, lam, max_deg, steps, False
            if lam == power:
                t0, t1 = f0, f1
                power <<= 1
                lam = 0
        return sigma, None, max_deg, steps, False


def estimate_growth_rate(degrees: list) -> float:
    """Least-squares slope of degree against step index."""
    if len(degrees) < 2:
        raise ValueError("need at least two degrees to fit a slope")
    return statistics.linear_regression(range(len(degrees)), degrees).slope
