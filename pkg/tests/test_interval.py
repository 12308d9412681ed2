import math

import pytest
from hypothesis import given, strategies as st

from itlconform import core
from itlconform.core import EMPTY, ENTIRE, Interval, UndefinedOperation
from itlconform.fpkernel import MAXREAL, MINSUB, next_down
from itlconform.judge import AccuracyMode, judge_interval
from itlconform.oracle import ARITH_OPS, ELEM_OPS, tightest_eval

from strategies import intervals

H = float.fromhex
ACCURATE = AccuracyMode('accurate')


def oracle(op, *xs):
    e = tightest_eval(op, *xs)
    assert e.certified
    return EMPTY if e.empty else Interval(e.lo + 0.0, e.hi + 0.0)


@pytest.mark.parametrize('op', [o for o in ARITH_OPS] + ['intersection', 'convexHull'])
@given(data=st.data())
def test_arith_is_tightest(op, data):
    from itlconform.oracle import ARITY
    xs = [data.draw(intervals()) for _ in range(ARITY[op])]
    assert core.INTERVAL_FUNCS[op](*xs) == oracle(op, *xs)


@pytest.mark.parametrize('op', ELEM_OPS)
@given(data=st.data())
def test_elem_is_accurate(op, data):
    from itlconform.oracle import ARITY
    xs = [data.draw(intervals()) for _ in range(ARITY[op])]
    if op == 'pow':
        y = xs[1]
        xs[1] = y if y.is_empty or y.is_bounded and abs(y.lo) < 1e3 and abs(y.hi) < 1e3 else Interval(-3.0, 3.0)
    got = core.INTERVAL_FUNCS[op](*xs)
    v = judge_interval(got, oracle(op, *xs), ACCURATE)
    assert v.passed, v.reason


def test_sample_suite_values():
    assert core.add(Interval(-1.0, 1.0), EMPTY).is_empty
    assert core.add(Interval(1.0, 2.0), Interval(3.0, math.inf)) == Interval(4.0, math.inf)
    assert core.add(Interval(1.0, math.inf), Interval(-math.inf, 4.0)) == ENTIRE
    x = core.add(core.point(H('0X1.FFFFFFFFFFFFP+0')), core.point(H('0X1.999999999999AP-4')))
    assert x == Interval(H('0X1.0CCCCCCCCCCC4P+1'), H('0X1.0CCCCCCCCCCC5P+1'))
    assert core.div(EMPTY, EMPTY).is_empty
    assert core.div(Interval(-30.0, 15.0), ENTIRE) == ENTIRE


def test_mul_div_corner_rules():
    assert core.mul(Interval(0.0, 0.0), ENTIRE) == Interval(0.0, 0.0)
    assert core.mul(Interval(0.0, MAXREAL), Interval(0.0, MAXREAL)) == Interval(0.0, math.inf)
    assert core.div(Interval(1.0, 2.0), Interval(0.0, 0.0)).is_empty
    assert core.div(Interval(1.0, 2.0), Interval(-1.0, 1.0)) == ENTIRE
    assert core.div(Interval(1.0, 2.0), Interval(0.0, 4.0)) == Interval(0.25, math.inf)
    assert core.div(Interval(0.0, 0.0), Interval(-1.0, 1.0)) == Interval(0.0, 0.0)
    assert core.recip(Interval(-math.inf, -2.0)) == Interval(-0.5, 0.0)
    assert core.sqrt(Interval(-4.0, -1.0)).is_empty


def test_trig_and_tan_poles():
    assert core.sin(Interval(0.0, 4.0)).hi == 1.0
    assert core.cos(Interval(-1.0, 1.0)).hi == 1.0
    assert core.tan(Interval(1.0, 2.0)) == ENTIRE
    t = core.tan(Interval(0.0, H('0x1.921fb54442d18p+0')))
    assert t.hi > 1e16 and math.isfinite(t.hi)
    assert core.atan(ENTIRE).hi <= H('0x1.921fb54442d19p+0')


def test_constructors_and_signals():
    assert core.make_interval(1.0) == Interval(1.0, 1.0)
    for lo, hi in [(2.0, 1.0), (math.nan, 1.0), (math.inf, math.inf), (-math.inf, -math.inf)]:
        with pytest.raises(UndefinedOperation):
            core.make_interval(lo, hi)
        x, sig = core.nums_to_interval(lo, hi)
        assert x.is_empty and sig == {'UndefinedOperation'}
    assert core.nums_to_interval(-math.inf, math.inf) == (ENTIRE, set())


def test_numeric_functions():
    assert core.mid(ENTIRE) == 0.0
    assert core.mid(Interval(0.0, math.inf)) == MAXREAL
    assert core.mid(Interval(-math.inf, 1.0)) == -MAXREAL
    assert core.mid(Interval(-MAXREAL, MAXREAL)) == 0.0
    assert math.isnan(core.mid(EMPTY))
    assert core.wid(Interval(-MAXREAL, MAXREAL)) == math.inf
    assert core.rad(Interval(0.0, MINSUB)) == MINSUB
    assert math.copysign(1, core.inf(Interval(0.0, 1.0))) < 0
    assert math.copysign(1, core.sup(Interval(-1.0, -0.0))) > 0
    assert core.mig(Interval(-2.0, 3.0)) == 0.0 and core.mag(Interval(-2.0, 3.0)) == 3.0


@given(intervals(), intervals())
def test_set_laws(x, y):
    hull = core.convex_hull(x, y)
    assert core.subset(x, hull) and core.subset(y, hull)
    meet = core.intersection(x, y)
    assert core.subset(meet, x) and core.subset(meet, y)
    assert core.disjoint(x, y) == meet.is_empty
    assert core.equal(x, y) == (core.subset(x, y) and core.subset(y, x))


@given(intervals(allow_empty=False))
def test_neg_involution_and_hex_text(x):
    assert core.neg(core.neg(x)) == x
    assert core.text_to_interval(core.interval_to_text(x)) == x


@given(intervals(allow_empty=False), st.integers(3, 20))
def test_decimal_text_contains(x, digits):
    back = core.text_to_interval(core.interval_to_text(x, 'decimal', digits))
    assert core.subset(x, back)


@pytest.mark.parametrize('text, lo, hi', [
    ('[0.1]', next_down(0.1), 0.1),
    ('[1, 2]', 1.0, 2.0),
    ('[ -inf , 1 ]', -math.inf, 1.0),
    ('[empty]', math.nan, math.nan),
    ('[]', math.nan, math.nan),
    ('[Entire]', -math.inf, math.inf),
    ('[0x1.8p0, 0X2P+0]', 1.5, 2.0),
    ('[-0.0, 0.0]', 0.0, 0.0),
])
def test_text_to_interval(text, lo, hi):
    x = core.text_to_interval(text)
    if math.isnan(lo):
        assert x.is_empty
    else:
        assert (x.lo, x.hi) == (lo, hi)


@pytest.mark.parametrize('text', ['[4, 3]', '[1,', '[nan, 1]', '[inf]', '[1, 2, 3]', 'x', ''])
def test_text_errors(text):
    with pytest.raises(UndefinedOperation):
        core.text_to_interval(text)
    x, sig = core.text_to_interval_signalled(text)
    assert x.is_empty and sig == {'UndefinedOperation'}


def test_host_libm_report():
    report = core.validate_host_libm(n=16, apply=False)
    assert set(report) == set(ELEM_OPS)
    assert all(v >= 0 for v in report.values())
