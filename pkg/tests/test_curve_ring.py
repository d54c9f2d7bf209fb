import random

import pytest

from conftest import poly_of_degree, stratified_admissible_pairs
from mxplus1.curve_ring import (
    CurveElem,
    CurveRing,
    ParitySymbol,
    elem_add,
    elem_div_t_exact,
    elem_mul,
    format_curve_elem,
    is_admissible_multiplier,
    parse_curve_elem,
    residue_mod_t,
    total_degree,
)
from mxplus1.gf2poly import NEG_INF, NotDivisibleError, parse_poly

RING = CurveRing(parse_poly("t^2+t+1"))
X = CurveElem(0, 1)
ONE = CurveElem(1, 0)


def test_parity_symbol_order_and_chars():
    assert list(ParitySymbol) == [
        ParitySymbol.ZERO,
        ParitySymbol.ONE,
        ParitySymbol.X,
        ParitySymbol.ONE_PLUS_X,
    ]
    assert ParitySymbol.ZERO < ParitySymbol.ONE < ParitySymbol.X < ParitySymbol.ONE_PLUS_X
    assert [s.char for s in ParitySymbol] == ["0", "1", "x", "w"]
    for s in ParitySymbol:
        assert ParitySymbol.from_char(s.char) is s
    with pytest.raises(ValueError):
        ParitySymbol.from_char("q")


def test_ring_validation():
    CurveRing(parse_poly("t^2+t+1"))
    CurveRing(parse_poly("t^3+t+1"))
    CurveRing(parse_poly("t"))  # irreducible; only systems demand r odd
    with pytest.raises(ValueError):
        CurveRing(parse_poly("t^2+1"))  # (t+1)^2
    with pytest.raises(ValueError):
        CurveRing(1)


def test_total_degree():
    assert total_degree(CurveElem(parse_poly("t^3"), parse_poly("t"))) == 3
    assert total_degree(CurveElem(0, parse_poly("t^2"))) == 2
    assert total_degree(ONE) == 0
    assert total_degree(CurveElem(0, 0)) == NEG_INF


def test_residue_mod_t():
    assert residue_mod_t(CurveElem(0, 0)) == ParitySymbol.ZERO
    assert residue_mod_t(CurveElem(parse_poly("t^2+t"), parse_poly("t^3"))) == ParitySymbol.ZERO
    assert residue_mod_t(CurveElem(parse_poly("t+1"), parse_poly("t"))) == ParitySymbol.ONE
    assert residue_mod_t(CurveElem(parse_poly("t^2"), 1)) == ParitySymbol.X
    assert residue_mod_t(CurveElem(1, parse_poly("t+1"))) == ParitySymbol.ONE_PLUS_X


def test_elem_add_componentwise():
    a = CurveElem(parse_poly("t^2+1"), parse_poly("t"))
    b = CurveElem(parse_poly("t^2+t"), parse_poly("t+1"))
    assert elem_add(a, b) == CurveElem(parse_poly("t+1"), 1)
    assert elem_add(a, a) == CurveElem(0, 0)


def test_defining_relation():
    # x*x = r + t*x in every valid ring.
    for r_text in ("t^2+t+1", "t^3+t+1", "t+1"):
        ring = CurveRing(parse_poly(r_text))
        assert elem_mul(ring, X, X) == CurveElem(ring.r, parse_poly("t"))


def test_elem_mul_example():
    a = CurveElem(parse_poly("t^3"), 1)
    b = CurveElem(1, 1)
    assert elem_mul(RING, a, b) == CurveElem(
        parse_poly("t^3+t^2+t+1"), parse_poly("t^3+t+1")
    )
    assert elem_mul(RING, a, ONE) == a
    assert elem_mul(RING, a, CurveElem(0, 0)) == CurveElem(0, 0)


def test_ring_axioms_random():
    rng = random.Random(0xA5)

    def rand_elem():
        return CurveElem(rng.getrandbits(33), rng.getrandbits(33))

    for _ in range(10_000):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert elem_mul(RING, a, b) == elem_mul(RING, b, a)
        assert elem_mul(RING, elem_mul(RING, a, b), c) == elem_mul(
            RING, a, elem_mul(RING, b, c)
        )
        assert elem_mul(RING, a, elem_add(b, c)) == elem_add(
            elem_mul(RING, a, b), elem_mul(RING, a, c)
        )


def test_elem_div_t_exact():
    assert elem_div_t_exact(CurveElem(parse_poly("t"), parse_poly("t^2"))) == CurveElem(
        1, parse_poly("t")
    )
    assert elem_div_t_exact(CurveElem(0, 0)) == CurveElem(0, 0)
    with pytest.raises(NotDivisibleError):
        elem_div_t_exact(CurveElem(1, parse_poly("t")))


def test_admissibility():
    assert is_admissible_multiplier(RING, CurveElem(parse_poly("t^3"), 1))
    assert is_admissible_multiplier(RING, CurveElem(parse_poly("t^2"), 1))
    assert is_admissible_multiplier(RING, CurveElem(parse_poly("t^5+t^2"), parse_poly("t+1")))
    # gap too small
    assert not is_admissible_multiplier(RING, CurveElem(parse_poly("t^3"), parse_poly("t^2+1")))
    # wrong residue
    assert not is_admissible_multiplier(RING, CurveElem(parse_poly("t^3+1"), 1))
    assert not is_admissible_multiplier(RING, CurveElem(parse_poly("t^3"), parse_poly("t")))
    assert not is_admissible_multiplier(RING, X)
    assert not is_admissible_multiplier(RING, CurveElem(0, 0))
    # for a higher-degree modulus the gap requirement widens with deg r
    big = CurveRing(parse_poly("t^5+t^2+1"))
    assert not is_admissible_multiplier(big, CurveElem(parse_poly("t^3"), 1))
    assert is_admissible_multiplier(big, CurveElem(parse_poly("t^6"), 1))


def test_product_degree_additive_for_admissible_m():
    rng = random.Random(0xDE6)
    seen = {0: 0, 1: 0, 2: 0}
    for case, m, f in stratified_admissible_pairs(rng, 3000):
        assert is_admissible_multiplier(RING, m)
        assert total_degree(elem_mul(RING, m, f)) == total_degree(m) + total_degree(f)
        seen[case] += 1
    assert min(seen.values()) >= 900


def test_product_degree_counterexample_without_admissibility():
    # m = x fails the gap condition, and its products can jump in degree:
    # x * x = r + t*x has total degree 2, not deg(x) + deg(x) = 0.
    m = X
    assert not is_admissible_multiplier(RING, m)
    product = elem_mul(RING, m, X)
    assert total_degree(product) == 2
    assert total_degree(product) != total_degree(m) + total_degree(X)


def test_parse_and_format_elem():
    f = parse_curve_elem("t^3+1 ; t+1")
    assert f == CurveElem(parse_poly("t^3+1"), parse_poly("t+1"))
    assert format_curve_elem(f) == "t^3+1 ; t+1"
    assert parse_curve_elem(format_curve_elem(f)) == f
    assert parse_curve_elem('{"f0": "t^2", "f1": "1"}') == CurveElem(parse_poly("t^2"), 1)
    with pytest.raises(ValueError):
        parse_curve_elem("t^2+1")
    with pytest.raises(ValueError):
        parse_curve_elem('{"f0": "t"}')


def test_poly_of_degree_helper():
    rng = random.Random(9)
    for _ in range(200):
        d = rng.randrange(0, 12)
        p = poly_of_degree(rng, d, parity=d and 1)
        assert p.bit_length() - 1 == d
