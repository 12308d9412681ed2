import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from itlconform.fpkernel import MAXREAL, MINSUB
from itlconform.oracle import bigfloat as B
from itlconform.oracle.bigfloat import INF_BF, NAN_BF, NZERO_BF, ONE_BF, ZERO_BF, BigFloat, bf

finite = st.floats(allow_nan=False, allow_infinity=False)


def test_third_at_60_bits():
    three = bf(3)
    lo = B.div(ONE_BF, three, 60, 'down').to_fraction()
    hi = B.div(ONE_BF, three, 60, 'up').to_fraction()
    assert lo < Fraction(1, 3) < hi
    assert hi - lo == Fraction(1, 2 ** 61)


def test_sqrt2_brackets():
    lo = B.sqrt(bf(2), 200, 'down').to_fraction()
    hi = B.sqrt(bf(2), 200, 'up').to_fraction()
    assert lo * lo < 2 < hi * hi


def test_round_f64_subnormal_and_overflow():
    tiny = BigFloat.pow2(-1075)
    assert tiny.round_f64('up') == MINSUB
    assert tiny.round_f64('down') == 0.0
    assert tiny.round_f64('nearest') == 0.0
    big = BigFloat.pow2(1024)
    assert big.round_f64('down') == MAXREAL
    assert big.round_f64('up') == math.inf


@given(finite)
def test_float_round_trip(x):
    b = BigFloat.from_float(x)
    assert b.round_f64('down') == x == b.round_f64('up')
    assert b.to_fraction() == Fraction(x)


@given(finite, finite)
def test_exact_add_mul(a, b):
    fa, fb = Fraction(a), Fraction(b)
    assert B.add(bf(a), bf(b), None, 'down').to_fraction() == fa + fb
    assert B.mul(bf(a), bf(b), None, 'up').to_fraction() == fa * fb


@given(finite, st.floats(min_value=1e-300, max_value=1e300), st.integers(2, 200))
def test_directed_div_brackets(a, b, q):
    exact = Fraction(a) / Fraction(b)
    lo = B.div(bf(a), bf(b), q, 'down').to_fraction()
    hi = B.div(bf(a), bf(b), q, 'up').to_fraction()
    assert lo <= exact <= hi


def test_signed_zero_and_specials():
    assert NZERO_BF.compare(ZERO_BF) == 0
    assert INF_BF.compare(ONE_BF) == 1
    assert (-INF_BF).compare(bf(-MAXREAL)) == -1
    with pytest.raises(ValueError):
        NAN_BF.compare(ONE_BF)
    assert abs(bf(-2.5)).to_fraction() == Fraction(5, 2)


def test_bf_arith_validates():
    with pytest.raises(ValueError):
        B.bf_arith('add', 'down', 10 ** 6, ONE_BF, ONE_BF)
    with pytest.raises(ValueError):
        B.bf_arith('add', 'nearest', 64, ONE_BF, ONE_BF)
    assert B.bf_arith('fma', 'down', 64, bf(2.0), bf(3.0), bf(-6.0)).round_f64('down') == 0.0
