"""Bit-packed arithmetic for polynomials over GF(2).

A polynomial c_n*t^n + ... + c_1*t + c_0 with coefficients in GF(2) is
stored as the nonnegative Python int whose bit i is c_i.  Values are
immutable and hashable, addition is XOR, and multiplication/division by
powers of t are plain shifts, so the representation doubles as the hot
inner loop of every trajectory walker in this package.
"""

from __future__ import annotations

__all__ = [
    "NEG_INF",
    "NotDivisibleError",
    "PolyParseError",
    "add",
    "bit_positions",
    "constant_term",
    "degree",
    "div_t_exact",
    "format_poly",
    "is_irreducible",
    "mul",
    "parse_poly",
    "poly_divmod",
]

# Degree of the zero polynomial.  Compares below every int so degree
# comparisons need no special casing.
NEG_INF = float("-inf")


class NotDivisibleError(ValueError):
    """Exact division was requested but the divisor does not divide."""


class PolyParseError(ValueError):
    """Malformed polynomial text; ``position`` is the offending index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


def degree(a: int):
    """Degree of a, or NEG_INF for the zero polynomial."""
    return a.bit_length() - 1 if a else NEG_INF


def constant_term(a: int) -> int:
    return a & 1


def add(a: int, b: int) -> int:
    """Sum in GF(2)[t]; coefficientwise XOR, also the difference."""
    return a ^ b


def bit_positions(a: int) -> tuple[int, ...]:
    """Exponents with nonzero coefficient, ascending."""
    return tuple(i for i in range(a.bit_length()) if (a >> i) & 1)


def mul(a: int, b: int) -> int:
    """Carry-less product.

    Scans the shorter operand in 4-bit windows against a precomputed
    table of the 16 small multiples of the longer one; 4x fewer bigint
    XORs than the schoolbook scan for large operands.
    """
    if not a or not b:
        return 0
    if a.bit_length() < b.bit_length():
        a, b = b, a
    table = [0] * 16
    table[1] = a
    for i in range(2, 16, 2):
        table[i] = table[i >> 1] << 1
        table[i + 1] = table[i] ^ a
    acc = 0
    shift = 0
    while b:
        window = b & 0xF
        if window:
            acc ^= table[window] << shift
        b >>= 4
        shift += 4
    return acc


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder with deg(remainder) < deg(b)."""
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    nb = b.bit_length()
    while a.bit_length() >= nb:
        shift = a.bit_length() - nb
        a ^= b << shift
        q |= 1 << shift
    return q, a


def div_t_exact(a: int) -> int:
    """Divide by t, requiring t | a."""
    if a & 1:
        raise NotDivisibleError("not divisible by t: constant term is 1")
    return a >> 1


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree up to deg(p)/2.

    Exponential in deg(p) but the moduli used for curve rings are tiny
    (degree 2 in every standard configuration), so transparency wins
    over a Rabin test here.
    """
    d = p.bit_length() - 1
    if d < 1:
        raise ValueError("irreducibility is defined only for degree >= 1")
    for divisor in range(2, 1 << (d // 2 + 1)):
        _, rem = poly_divmod(p, divisor)
        if rem == 0:
            return False
    return True


def parse_poly(text: str) -> int:
    """Parse symbolic form like ``t^3+t+1`` (or a ``0x..`` hex literal).

    Whitespace around terms is ignored and duplicate terms cancel.
    Raises PolyParseError carrying the position of the first bad term.
    """
    stripped = text.strip()
    if not stripped:
        raise PolyParseError("empty polynomial", 0)
    if stripped[:2].lower() == "0x":
        try:
            return int(stripped, 16)
        except ValueError:
            raise PolyParseError("bad hex literal", text.index(stripped[0])) from None
    acc = 0
    pos = 0
    while True:
        cut = text.find("+", pos)
        part = text[pos:] if cut < 0 else text[pos:cut]
        term = part.strip()
        term_pos = pos + (len(part) - len(part.lstrip()))
        acc ^= _parse_term(term, term_pos)
        if cut < 0:
            return acc
        pos = cut + 1


def _parse_term(term: str, pos: int) -> int:
    if term == "0":
        return 0
    if term == "1":
        return 1
    if term == "t":
        return 2
    if term.startswith("t^"):
        exp = term[2:]
        if exp.isdigit():
            return 1 << int(exp)
    raise PolyParseError(f"unrecognized term {term!r}", pos)


def format_poly(a: int) -> str:
    """Symbolic form, descending powers; inverse of parse_poly."""
    if a == 0:
        return "0"
    parts = []
    for i in range(a.bit_length() - 1, -1, -1):
        if (a >> i) & 1:
            parts.append("1" if i == 0 else "t" if i == 1 else f"t^{i}")
    return "+".join(parts)
