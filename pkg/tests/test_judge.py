import math

import pytest
from hypothesis import given

from itlconform.core import EMPTY, ENTIRE, Interval
from itlconform.decorations import NAI, Dec, DecoratedInterval
from itlconform.fpkernel import MAXREAL, next_down, next_up
from itlconform.judge import (ERROR, FAIL, PASS, AccuracyMode, Verdict, judge, judge_decorated,
                              judge_interval, judge_numeric, judge_signal, next_out, ulp)

from strategies import intervals

T, A = AccuracyMode('tightest'), AccuracyMode('accurate')
V, V1 = AccuracyMode('valid'), AccuracyMode('valid', 1.0)
X = Interval(1.0, 2.0)


def test_exact_match_passes_every_mode():
    for m in (T, A, V, V1):
        assert judge_interval(X, X, m).passed


def test_tighter_than_expected_flags_a_bug():
    v = judge_interval(Interval(1.25, 1.5), X, V)
    assert v.status == FAIL and 'oracle or provider bug' in v.reason


def test_containment_violation():
    v = judge_interval(Interval(1.5, 3.0), X, V)
    assert v.reason == 'containment violated'


def test_levels_discriminate_next_out():
    w = next_out(X)
    assert judge_interval(w, X, T).reason == 'not tightest'
    assert judge_interval(w, X, A).passed
    assert not judge_interval(next_out(w), X, A).passed
    assert judge_interval(next_out(w), X, V).passed


def test_valid_width_screen():
    assert judge_interval(Interval(0.5, 2.5), X, V1).passed
    assert not judge_interval(Interval(0.0, 3.5), X, V1).passed
    assert not judge_interval(ENTIRE, X, V1).passed
    assert judge_interval(ENTIRE, X, V).passed  # containment only
    assert judge_interval(ENTIRE, Interval(1.0, math.inf), V1).passed


@given(intervals(allow_empty=False))
def test_next_out_is_accurate(x):
    assert judge_interval(next_out(x), x, A).passed


def test_next_out_and_ulp():
    assert next_out(Interval(1.0, 2.0)) == Interval(next_down(1.0), next_up(2.0))
    assert next_out(ENTIRE) == ENTIRE and next_out(EMPTY).is_empty
    assert next_out(Interval(MAXREAL, MAXREAL)).hi == math.inf
    assert ulp(1.0) == 2 ** -52 and ulp(-1.0) == 2 ** -52


def test_decorations():
    com = DecoratedInterval(X, Dec.COM)
    dac = DecoratedInterval(X, Dec.DAC)
    assert judge_decorated(dac, com, V).passed       # weaker claim is sound
    assert not judge_decorated(com, dac, V).passed   # stronger claim is not
    assert not judge_decorated(dac, com, T).passed
    wide = DecoratedInterval(Interval(1.0, math.inf), Dec.DAC)
    near = DecoratedInterval(Interval(1.0, MAXREAL), Dec.COM)
    assert judge_decorated(wide, near, A).passed
    assert judge_decorated(NAI, NAI, T).passed
    assert not judge_decorated(DecoratedInterval(EMPTY, Dec.TRV), NAI, V).passed


@pytest.mark.parametrize('got, want, text, ok', [
    (-0.0, -0.0, '-0.0', True),
    (0.0, -0.0, '-0.0', False),
    (0.0, -0.0, '0', True),
    (-0.0, 0.0, '0.0', True),
    (-0.0, 0.0, '+0.0', False),
    (math.nan, math.nan, 'nan', True),
    (1.0, math.nan, 'nan', False),
    (True, 1.0, '1', False),
])
def test_numeric(got, want, text, ok):
    assert judge_numeric(got, want, text).passed is ok


def test_signals_and_dispatch():
    assert judge_signal({'UndefinedOperation'}, 'UndefinedOperation').passed
    assert not judge_signal(set(), 'UndefinedOperation').passed
    assert 'spurious' in judge_signal({'UndefinedOperation'}, None).reason
    assert judge(True, True).passed and not judge('x', True).passed
    assert judge('[empty]', '[empty]').passed
    assert not judge(X, DecoratedInterval(X, Dec.COM)).passed


def test_verdict_requires_reason():
    with pytest.raises(ValueError):
        Verdict(FAIL)
    with pytest.raises(ValueError):
        Verdict(ERROR)
    with pytest.raises(ValueError):
        Verdict('maybe')
    assert Verdict(PASS).passed
    with pytest.raises(ValueError):
        AccuracyMode('valid', -1.0)
