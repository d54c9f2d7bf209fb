"""Ruin probabilities for the random walk behind stopping times.

A trajectory's degree change per step is +d-1 on a multiply branch and
-1 otherwise.  Modelling branch choices as coin flips with win (multiply)
probability q gives a gambler's-ruin walk started at 0; ruin (ever
reaching -1) corresponds to the degree dropping below its start.  The
walk on GF(2)[t] has q = 1/2 (one multiply residue of two) and the
curve walk q = 1/4 (one of four).

Three routes to the ruin probability, kept deliberately independent:
the unbounded-horizon limit as a polynomial root, the finite-capital
variant as a banded linear system, and direct Monte Carlo simulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import solve_banded

__all__ = [
    "RuinResult",
    "finite_ruin_probability",
    "limit_probability",
    "monte_carlo_ruin",
    "psigma_table",
]

_SUPPORTED_Q = (Fraction(1, 2), Fraction(1, 4))
_MC_BATCH = 1 << 17
_MC_CHUNK = 64


@dataclass(frozen=True)
class RuinResult:
    probability: float
    method: str  # "closed-form" | "root" | "linear-system" | "monte-carlo"
    error_bound: float


def _coerce_q(q) -> Fraction:
    value = Fraction(q)
    if value not in _SUPPORTED_Q:
        raise ValueError(f"unsupported win probability {q!r}; supported: 1/2 and 1/4")
    return value


def limit_probability(d: int, q) -> RuinResult:
    """Ruin probability P_d with unlimited steps.

    For d <= 1/q the walk has nonpositive drift and ruin is certain.
    Otherwise P_d is the unique root in (0, 1) of
    g(z) = z^d - (1/q) z + (1/q - 1), found by bisection on the bracket
    (1 - q, 1): g(1-q) = (1-q)^d > 0 while g is negative just left of
    the root z = 1 because g'(1) = d - 1/q > 0.
    """
    qf = _coerce_q(q)
    if d < 1:
        raise ValueError("d must be >= 1")
    if d * qf <= 1:
        return RuinResult(1.0, "closed-form", 0.0)
    inv_q = float(1 / qf)

    def g(z: float) -> float:
        return z**d - inv_q * z + (inv_q - 1.0)

    lo = 1.0 - float(qf)
    hi = 1.0 - 1e-9
    while hi - lo > 1e-15:
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return RuinResult((lo + hi) / 2, "root", (hi - lo) / 2 + 1e-15)


def finite_ruin_probability(d: int, W: int, q) -> RuinResult:
    """Ruin probability with absorption on a win buffer of size W.

    U_k is the ruin probability started at height k, with U_k = 1 for
    k <= -1 and U_k = 0 for k >= W; one step gives
    U_k = (1-q) U_{k-1} + q U_{k+d-1}.  The W unknowns form a banded
    system (one subdiagonal, d-1 superdiagonals) solved directly; the
    reported error bound is the max residual of the recurrence.
    """
    qf = _coerce_q(q)
    if d < 1:
        raise ValueError("d must be >= 1")
    if W < 1:
        raise ValueError("W must be >= 1")
    q_ = float(qf)
    p_ = 1.0 - q_
    upper = max(d - 1, 0)
    ab = np.zeros((upper + 2, W))
    # Row u+i-j of ab holds A[i, j]; A has 1 on the diagonal, -(1-q) on
    # the subdiagonal, and -q on superdiagonal d-1 (folded into the
    # diagonal when d = 1).
    ab[upper, :] = 1.0
    if d == 1:
        ab[upper, :] -= q_
    ab[upper + 1, : W - 1] = -p_
    if d >= 2 and W > d - 1:
        ab[upper - (d - 1), d - 1 :] = -q_
    b = np.zeros(W)
    b[0] = p_
    u = solve_banded((1, upper), ab, b)

    residual = 0.0
    for k in range(W):
        below = 1.0 if k == 0 else u[k - 1]
        above = u[k + d - 1] if k + d - 1 < W else 0.0
        residual = max(residual, abs(u[k] - p_ * below - q_ * above))
    return RuinResult(float(u[0]), "linear-system", residual)


def monte_carlo_ruin(d: int, q, trials: int, max_steps: int, seed: int) -> RuinResult:
    """Simulate the walk directly; error bound is three standard errors.

    Vectorised in fixed-size batches of walks advanced 64 steps at a
    time.  Win flags come from raw uint64 draws (one stream for q=1/2,
    the AND of two for q=1/4).  Walks whose height reaches the number
    of remaining steps can never be ruined and retire early; the rest
    are checked for a sub-zero running minimum each chunk.  The seed
    fully determines the result.
    """
    qf = _coerce_q(q)
    if d < 1:
        raise ValueError("d must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    starts = range(0, trials, _MC_BATCH)
    seeds = np.random.SeedSequence(seed).spawn(len(starts))
    ruined = 0
    for child, lo in zip(seeds, starts):
        ruined += _ruin_batch(
            np.random.Generator(np.random.PCG64(child)),
            min(_MC_BATCH, trials - lo),
            d,
            qf == Fraction(1, 4),
            max_steps,
        )
    p_hat = ruined / trials
    return RuinResult(p_hat, "monte-carlo", 3.0 * math.sqrt(p_hat * (1.0 - p_hat) / trials))


def _ruin_batch(rng, n_walks: int, d: int, quarter: bool, max_steps: int) -> int:
    pos = np.zeros(n_walks, dtype=np.int32)
    ruined = 0
    step = 0
    while pos.size and step < max_steps:
        span = min(_MC_CHUNK, max_steps - step)
        draws = rng.integers(0, 1 << 64, size=pos.size, dtype=np.uint64)
        bits = np.unpackbits(draws.view(np.uint8)).reshape(pos.size, 64)
        if quarter:
            draws = rng.integers(0, 1 << 64, size=pos.size, dtype=np.uint64)
            bits &= np.unpackbits(draws.view(np.uint8)).reshape(pos.size, 64)
        bits = bits[:, :span]
        # Only walks lower than the chunk span can cross zero this
        # chunk (one down-step per step); the rest just need their end
        # position, a plain sum instead of a prefix scan.
        risky = pos < span
        r_bits = bits[risky]
        gains = np.cumsum(r_bits.astype(np.int16) * d - 1, axis=1, dtype=np.int32)
        dead = gains.min(axis=1) < -pos[risky]
        ruined += int(dead.sum())
        alive = ~dead
        safe = ~risky
        step += span
        pos = np.concatenate(
            [
                pos[risky][alive] + gains[alive, -1],
                pos[safe] + bits[safe].sum(axis=1, dtype=np.int32) * d - span,
            ]
        )
        pos = pos[pos < max_steps - step]
    return ruined


def psigma_table(d_max: int, q) -> list[tuple[int, RuinResult]]:
    """P_d for d = 1..d_max, each by the tightest applicable method."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    return [(d, limit_probability(d, q)) for d in range(1, d_max + 1)]
