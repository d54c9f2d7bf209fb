"""Shared helpers: random element generators and system factories."""

from mxplus1.curve_ring import CurveElem, CurveRing
from mxplus1.dynamics import CurveSystem, LineSystem
from mxplus1.gf2poly import parse_poly

STANDARD_R = "t^2+t+1"


def line_system(m_text: str) -> LineSystem:
    return LineSystem(parse_poly(m_text))


def curve_system(m_text: str, r_text: str = STANDARD_R) -> CurveSystem:
    ring = CurveRing(parse_poly(r_text))
    m0_text, _, m1_text = m_text.partition(";")
    return CurveSystem(ring, CurveElem(parse_poly(m0_text), parse_poly(m1_text)))


def poly_of_degree(rng, deg: int, parity: int | None = None) -> int:
    """Random polynomial of exact degree deg, optionally with a fixed
    constant term."""
    p = (1 << deg) | (rng.getrandbits(deg) if deg else 0)
    if parity is not None and deg > 0:
        p = (p & ~1) | parity
    return p


def stratified_admissible_pairs(rng, count: int):
    """(m, f) pairs with admissible m and nonzero f, cycling through the
    three degree-gap cases of the product-degree argument:
    delta <= mu, mu < delta < -2-mu, delta >= -2-mu, where
    mu = deg m1 - deg m0 and delta = deg f1 - deg f0.
    """
    pairs = []
    for i in range(count):
        a = rng.randrange(2, 17)
        b = rng.randrange(0, a - 1)  # mu = b - a <= -2
        m = CurveElem(poly_of_degree(rng, a, parity=0), poly_of_degree(rng, b, parity=1))
        mu = b - a
        case = i % 3
        if case == 0:
            e = rng.randrange(max(0, -mu), max(0, -mu) + 16)
            if rng.random() < 0.1:
                f = CurveElem(poly_of_degree(rng, e), 0)  # delta = -inf
            else:
                f = CurveElem(poly_of_degree(rng, e), poly_of_degree(rng, rng.randrange(0, e + mu + 1)))
        elif case == 1:
            delta = rng.randrange(mu + 1, -2 - mu)
            e = rng.randrange(max(0, -delta), max(0, -delta) + 16)
            f = CurveElem(poly_of_degree(rng, e), poly_of_degree(rng, e + delta))
        else:
            if rng.random() < 0.1:
                f = CurveElem(0, poly_of_degree(rng, rng.randrange(0, 16)))  # delta = +inf
            else:
                delta = rng.randrange(-2 - mu, -2 - mu + 8)
                e = rng.randrange(0, 16)
                f = CurveElem(poly_of_degree(rng, e), poly_of_degree(rng, e + delta))
        pairs.append((case, m, f))
    return pairs
