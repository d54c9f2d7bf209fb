"""Arithmetic in R = GF(2)[x,t] / (x^2 + t*x + r(t)) for irreducible r.

Elements are written f0 + x*f1 with f0, f1 in GF(2)[t] and reduced with
the defining relation x^2 = t*x + r.  The pair (f0, f1) is stored as a
CurveElem of two bit-packed ints; the modulus r is carried by the
CurveRing and passed to the few operations that need it, never stored
per element.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import NamedTuple

from .gf2poly import (
    NEG_INF,
    NotDivisibleError,
    degree,
    format_poly,
    is_irreducible,
    mul,
    parse_poly,
)

__all__ = [
    "CurveElem",
    "CurveRing",
    "ParitySymbol",
    "elem_add",
    "elem_div_t_exact",
    "elem_mul",
    "format_curve_elem",
    "is_admissible_multiplier",
    "parse_curve_elem",
    "residue_mod_t",
    "total_degree",
]


class ParitySymbol(enum.IntEnum):
    """Residue of an element mod t; the four curve residues in order.

    The low bit is the constant term of f0 and the high bit that of f1,
    so the enum value doubles as the packed residue.  Line trajectories
    only ever produce ZERO and ONE.
    """

    ZERO = 0
    ONE = 1
    X = 2
    ONE_PLUS_X = 3

    @property
    def char(self) -> str:
        return "01xw"[self]

    @classmethod
    def from_char(cls, c: str) -> "ParitySymbol":
        try:
            return cls("01xw".index(c))
        except ValueError:
            raise ValueError(f"invalid parity symbol {c!r}; alphabet is 0, 1, x, w") from None


class CurveElem(NamedTuple):
    f0: int
    f1: int


@dataclass(frozen=True)
class CurveRing:
    """The ring modulus; validated once, then treated as plain data."""

    r: int

    def __post_init__(self):
        if degree(self.r) < 1:
            raise ValueError("ring modulus r must have degree >= 1")
        if not is_irreducible(self.r):
            raise ValueError(f"ring modulus r = {format_poly(self.r)} is reducible")


def total_degree(f: CurveElem):
    """max(deg f0, deg f1); NEG_INF for the zero element."""
    b = max(f.f0.bit_length(), f.f1.bit_length())
    return b - 1 if b else NEG_INF


def residue_mod_t(f: CurveElem) -> ParitySymbol:
    return ParitySymbol((f.f0 & 1) | ((f.f1 & 1) << 1))


def elem_add(a: CurveElem, b: CurveElem) -> CurveElem:
    return CurveElem(a.f0 ^ b.f0, a.f1 ^ b.f1)


def elem_mul(ring: CurveRing, a: CurveElem, b: CurveElem) -> CurveElem:
    """Product reduced by x^2 = t*x + r.

    (a0 + x*a1)(b0 + x*b1) = (a0*b0 + r*a1*b1) + x*(a0*b1 + a1*b0 + t*a1*b1)
    """
    cross = mul(a.f1, b.f1)
    return CurveElem(
        mul(a.f0, b.f0) ^ mul(ring.r, cross),
        mul(a.f0, b.f1) ^ mul(a.f1, b.f0) ^ (cross << 1),
    )


def elem_div_t_exact(f: CurveElem) -> CurveElem:
    if (f.f0 | f.f1) & 1:
        raise NotDivisibleError("not divisible by t: residue mod t is nonzero")
    return CurveElem(f.f0 >> 1, f.f1 >> 1)


def is_admissible_multiplier(ring: CurveRing, m: CurveElem) -> bool:
    """True when m drives a well-behaved multiply branch.

    Requires m = x (mod t) and a component degree gap wide enough that
    deg(m*f) = deg m + deg f for every f: the gap must absorb both the
    t*a1*b1 carry (one unit) and the r*a1*b1 term (deg r units).  For
    the standard degree-2 modulus this is exactly deg m1 <= deg m0 - 2.
    """
    if residue_mod_t(m) != ParitySymbol.X:
        return False
    gap = max(2, ring.r.bit_length() - 1)
    return degree(m.f1) <= degree(m.f0) - gap


def parse_curve_elem(text: str) -> CurveElem:
    """Parse ``f0 ; f1`` with each half in parse_poly syntax, or a JSON
    object {"f0": ..., "f1": ...}."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad JSON element: {exc}") from None
        if not isinstance(obj, dict) or set(obj) != {"f0", "f1"}:
            raise ValueError('JSON element must have exactly the keys "f0" and "f1"')
        return CurveElem(parse_poly(str(obj["f0"])), parse_poly(str(obj["f1"])))
    if ";" not in text:
        raise ValueError("curve element must be written 'f0 ; f1'")
    left, _, right = text.partition(";")
    return CurveElem(parse_poly(left), parse_poly(right))


def format_curve_elem(f: CurveElem) -> str:
    return f"{format_poly(f.f0)} ; {format_poly(f.f1)}"
