import random

import pytest

from conftest import curve_system, line_system
from mxplus1.curve_ring import CurveElem, ParitySymbol
from mxplus1.parity_map import (
    construct_long_stopper,
    decode,
    encode,
    seq_from_str,
    seq_to_str,
)

Z = ParitySymbol.ZERO
O = ParitySymbol.ONE
W = ParitySymbol.ONE_PLUS_X

LINE_MULTIPLIERS = ("t+1", "t^2+t+1", "t^3+1")


def test_encode_examples():
    sys_ = line_system("t^2+t+1")
    assert encode(sys_, sys_.parse_element("t^2+1"), 8) == [O, O, O, O, Z, Z, Z, Z]
    assert encode(sys_, 0, 3) == [Z, Z, Z]
    assert encode(line_system("t+1"), 1, 2) == [O, O]
    with pytest.raises(ValueError):
        encode(sys_, 1, 0)


def test_encode_depends_only_on_low_digits():
    sys_ = line_system("t^2+t+1")
    rng = random.Random(20)
    for _ in range(200):
        g = rng.randrange(1 << 6)
        q = rng.randrange(1, 1 << 12)
        assert encode(sys_, g, 6) == encode(sys_, g | (q << 6), 6)


def test_decode_base_cases():
    for m_text in LINE_MULTIPLIERS:
        sys_ = line_system(m_text)
        assert decode(sys_, [O]) == 1
        assert decode(sys_, [Z]) == 0
    sys_ = line_system("t^2+t+1")
    assert decode(sys_, [O, O, O, O, Z, Z, Z, Z]) == sys_.parse_element("t^2+1")


def test_decode_validation():
    sys_ = line_system("t^2+t+1")
    with pytest.raises(ValueError):
        decode(sys_, [])
    with pytest.raises(ValueError):
        decode(sys_, [O, ParitySymbol.X])  # quaternary symbol on the line
    with pytest.raises(ValueError):
        decode(sys_, [O, W])


def test_round_trip_line_exhaustive():
    for m_text in LINE_MULTIPLIERS:
        sys_ = line_system(m_text)
        for n in range(1, 9):
            for g in range(1 << n):
                assert decode(sys_, encode(sys_, g, n)) == g, (m_text, n, g)


def test_round_trip_curve_exhaustive():
    sys_ = curve_system("t^3 ; 1")
    for n in range(1, 6):
        for g0 in range(1 << n):
            for g1 in range(1 << n):
                g = CurveElem(g0, g1)
                assert decode(sys_, encode(sys_, g, n)) == g, (n, g)


def test_injectivity_line():
    sys_ = line_system("t^2+t+1")
    seqs = {tuple(encode(sys_, g, 8)) for g in range(1 << 8)}
    assert len(seqs) == 1 << 8


def test_injectivity_curve():
    sys_ = curve_system("t^3 ; 1")
    seqs = {
        tuple(encode(sys_, CurveElem(g0, g1), 5))
        for g0 in range(1 << 5)
        for g1 in range(1 << 5)
    }
    assert len(seqs) == 4 ** 5


def test_prefix_consistency():
    sys_ = line_system("t^2+t+1")
    for g in range(1 << 8):
        assert encode(sys_, g, 8)[:7] == encode(sys_, g, 7)


def test_long_stopper_postconditions():
    systems = [line_system(m) for m in LINE_MULTIPLIERS]
    systems.append(curve_system("t^3 ; 1"))
    for sys_ in systems:
        for n in range(1, 65):
            f = construct_long_stopper(sys_, n)
            assert not sys_.is_zero(f)
            # no degree drop within n steps, so the stopping time exceeds n
            assert sys_.stopping_time(f, n) is None, (sys_, n)
            v = f
            for _ in range(n):
                assert sys_.parity_term(v) is sys_.multiply_symbol
                v = sys_.step(v)
            assert sys_.degree_of(v) == sys_.degree_of(f) + n * (sys_.d - 1), (sys_, n)


def test_long_stopper_degree_preserving_multiplier():
    # d = 1 keeps the degree flat instead of growing
    sys_ = line_system("t+1")
    f = construct_long_stopper(sys_, 16)
    degs = sys_.degree_sequence(f, 16)
    assert len(set(degs)) == 1


def test_seq_strings():
    seq = [Z, O, ParitySymbol.X, W]
    assert seq_to_str(seq) == "01xw"
    assert seq_from_str("01xw") == seq
    assert seq_from_str("") == []
    with pytest.raises(ValueError):
        seq_from_str("01q")
