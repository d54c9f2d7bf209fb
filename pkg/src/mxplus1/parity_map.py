"""Bijection between low t-adic digits and trajectory parity prefixes.

The first N residues mod t of a trajectory depend only on the start
value mod t^N, and each start residue produces a distinct sequence, so
encoding (read the parities off a walk) has a levelwise inverse: lift
one t-adic digit at a time, keeping the digit whose re-simulated walk
matches the target symbol.  Decoding the all-multiply sequence yields
starts whose degree climbs for N straight steps, a certified element
with stopping time beyond N.
"""

from __future__ import annotations

from .curve_ring import CurveElem, ParitySymbol
from .dynamics import CurveSystem, InternalInvariantError, LineSystem

__all__ = [
    "construct_long_stopper",
    "decode",
    "encode",
    "seq_from_str",
    "seq_to_str",
]


def encode(system, f, n: int) -> list[ParitySymbol]:
    """Parities of f, T(f), ..., T^(n-1)(f)."""
    if n < 1:
        raise ValueError("sequence length must be >= 1")
    seq = []
    v = f
    for _ in range(n):
        seq.append(system.parity_term(v))
        v = system.step(v)
    return seq


def decode(system, seq: list[ParitySymbol]):
    """The unique element mod t^N whose parity prefix equals seq.

    Greedy digit lifting: O(N^2) trajectory steps, plenty for the
    certified-element sizes this package works at.
    """
    n = len(seq)
    if n < 1:
        raise ValueError("parity sequence must be nonempty")
    if isinstance(system, LineSystem):
        if any(s not in (ParitySymbol.ZERO, ParitySymbol.ONE) for s in seq):
            raise ValueError("line sequences use only the symbols 0 and 1")
        return _decode_line(system, seq)
    return _decode_curve(system, seq)


def _kth_parity(system, f, k: int) -> ParitySymbol:
    v = f
    for _ in range(k):
        v = system.step(v)
    return system.parity_term(v)


def _decode_line(system: LineSystem, seq) -> int:
    g = 0
    for k, want in enumerate(seq):
        for digit in (0, 1):
            cand = g | (digit << k)
            if _kth_parity(system, cand, k) == want:
                g = cand
                break
        else:
            raise InternalInvariantError("no t-adic digit matches the parity symbol")
    return g


def _decode_curve(system: CurveSystem, seq) -> CurveElem:
    g0 = 0
    g1 = 0
    for k, want in enumerate(seq):
        for digit in range(4):
            c0 = g0 | ((digit & 1) << k)
            c1 = g1 | ((digit >> 1) << k)
            if _kth_parity(system, CurveElem(c0, c1), k) == want:
                g0, g1 = c0, c1
                break
        else:
            raise InternalInvariantError("no t-adic digit matches the parity symbol")
    return CurveElem(g0, g1)


def construct_long_stopper(system, n: int):
    """Element whose first n steps all take the multiply branch.

    Its degree rises by deg(m) - 1 every step, so its stopping time
    exceeds n and deg T^n(f) = deg f + n*(deg m - 1).
    """
    return decode(system, [system.multiply_symbol] * n)


def seq_to_str(seq) -> str:
    """Render symbols as the compact alphabet 0, 1, x, w."""
    return "".join(ParitySymbol(s).char for s in seq)


def seq_from_str(text: str) -> list[ParitySymbol]:
    return [ParitySymbol.from_char(c) for c in text]
