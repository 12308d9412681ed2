"""Verdicts: computed results against expected ones at three accuracy levels."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Interval, subset
from .decorations import Dec, DecoratedInterval
from .fpkernel import MAXREAL, MINSUB, next_down, next_up

PASS = 'pass'
FAIL = 'fail'
SKIP_UNSUPPORTED = 'skip-unsupported'
SKIP_FLAVOR = 'skip-flavor'
ERROR = 'error'
STATUSES = (PASS, FAIL, SKIP_UNSUPPORTED, SKIP_FLAVOR, ERROR)

LEVELS = ('tightest', 'accurate', 'valid')

TIGHTER_THAN_TIGHTEST = 'containment violated: oracle or provider bug'


@dataclass(frozen=True)
class AccuracyMode:
    level: str = 'tightest'
    tau: float | None = None  # None: valid mode checks containment only

    def __post_init__(self):
        if self.level not in LEVELS:
            raise ValueError(f'unknown accuracy level {self.level!r}')
        if self.tau is not None and not self.tau >= 0:
            raise ValueError(f'tau must be a nonnegative number, got {self.tau!r}')

    def __str__(self):
        if self.level == 'valid' and self.tau is not None:
            return f'valid(tau={self.tau:g})'
        return self.level


TIGHTEST = AccuracyMode('tightest')


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: str = ''
    observed: object = None
    expected: object = None
    mode: AccuracyMode = TIGHTEST

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f'unknown status {self.status!r}')
        if self.status in (FAIL, ERROR) and not self.reason:
            raise ValueError('a failing verdict needs a reason')

    @property
    def passed(self) -> bool:
        return self.status == PASS


def _verdict(ok: bool, reason: str, observed, expected, mode) -> Verdict:
    return Verdict(PASS if ok else FAIL, '' if ok else reason, observed, expected, mode)


def next_out(x: Interval) -> Interval:
    """Move each finite endpoint one ulp outward."""
    if x.is_empty:
        return x
    lo = next_down(x.lo) if math.isfinite(x.lo) else x.lo
    hi = next_up(x.hi) if math.isfinite(x.hi) else x.hi
    return Interval(lo, hi)


def ulp(x: float) -> float:
    """Gap above |x| (for MAXREAL, the gap below)."""
    a = abs(x)
    if a >= MAXREAL:
        return MAXREAL - next_down(MAXREAL)
    return next_up(a) - a if a else MINSUB


def _width(x: Interval) -> Fraction:
    return Fraction(x.hi) - Fraction(x.lo)


def _within_width(computed: Interval, expected: Interval, tau: float) -> bool:
    if expected.is_empty:
        return computed.is_empty
    if not computed.is_bounded:
        return False
    mag = max(abs(expected.lo), abs(expected.hi))
    bound = (1 + Fraction(tau)) * _width(expected) + 2 * Fraction(ulp(mag))
    return _width(computed) <= bound


def judge_interval(computed, expected, mode: AccuracyMode = TIGHTEST) -> Verdict:
    if not isinstance(computed, Interval) or not isinstance(expected, Interval):
        return Verdict(FAIL, 'kind mismatch', computed, expected, mode)
    if computed == expected:
        return Verdict(PASS, '', computed, expected, mode)
    if subset(computed, expected):
        return Verdict(FAIL, TIGHTER_THAN_TIGHTEST, computed, expected, mode)
    if not subset(expected, computed):
        return Verdict(FAIL, 'containment violated', computed, expected, mode)
    if mode.level == 'tightest':
        return Verdict(FAIL, 'not tightest', computed, expected, mode)
    if mode.level == 'accurate':
        ok = subset(computed, next_out(expected))
        return _verdict(ok, 'outside the one-ulp accurate band', computed, expected, mode)
    if mode.tau is None or not expected.is_bounded:
        return Verdict(PASS, '', computed, expected, mode)
    ok = _within_width(computed, expected, mode.tau)
    return _verdict(ok, f'width screen: wider than (1+{mode.tau:g})x expected',
                    computed, expected, mode)


def _dec_ok(computed: DecoratedInterval, expected: DecoratedInterval, mode) -> bool:
    if computed.dec == expected.dec:
        return True
    if mode.level == 'valid':
        # proving less than the reference is sound; proving more is not
        return computed.dec <= expected.dec
    if mode.level == 'accurate':
        # a wider enclosure may overflow, and com needs a bounded result
        return (expected.dec == Dec.COM and computed.dec == Dec.DAC
                and not computed.interval.is_bounded)
    return False


def judge_decorated(computed, expected, mode: AccuracyMode = TIGHTEST) -> Verdict:
    if not isinstance(computed, DecoratedInterval) or not isinstance(expected, DecoratedInterval):
        return Verdict(FAIL, 'kind mismatch', computed, expected, mode)
    if expected.is_nai or computed.is_nai:
        ok = expected.is_nai and computed.is_nai
        return _verdict(ok, 'ill decoration mismatch', computed, expected, mode)
    bare = judge_interval(computed.interval, expected.interval, mode)
    if not bare.passed:
        return Verdict(FAIL, bare.reason, computed, expected, mode)
    if not _dec_ok(computed, expected, mode):
        reason = f'decoration {computed.dec.label}, expected {expected.dec.label}'
        return Verdict(FAIL, reason, computed, expected, mode)
    return Verdict(PASS, '', computed, expected, mode)


def _explicit_sign(text: str | None) -> bool:
    return bool(text) and text.lstrip()[:1] in '+-'


def judge_numeric(computed, expected: float, expected_text: str | None = None,
                  mode: AccuracyMode = TIGHTEST) -> Verdict:
    """Bitwise comparison; NaN matches NaN, and the sign of a zero matters
    only when the expected token spells it out."""
    if isinstance(computed, bool) or not isinstance(computed, (int, float)):
        return Verdict(FAIL, 'kind mismatch', computed, expected, mode)
    computed = float(computed)
    if math.isnan(expected) or math.isnan(computed):
        ok = math.isnan(expected) and math.isnan(computed)
    elif expected == 0 and computed == 0 and _explicit_sign(expected_text):
        ok = math.copysign(1, expected) == math.copysign(1, computed)
    else:
        ok = computed == expected
    return _verdict(ok, 'value mismatch', computed, expected, mode)


def judge_bool(computed, expected: bool, mode: AccuracyMode = TIGHTEST) -> Verdict:
    if not isinstance(computed, bool):
        return Verdict(FAIL, 'kind mismatch', computed, expected, mode)
    return _verdict(computed == expected, 'value mismatch', computed, expected, mode)


def judge_text(computed, expected: str, mode: AccuracyMode = TIGHTEST) -> Verdict:
    if not isinstance(computed, str):
        return Verdict(FAIL, 'kind mismatch', computed, expected, mode)
    return _verdict(computed == expected, 'text mismatch', computed, expected, mode)


def judge_signal(observed, expected: str | None, mode: AccuracyMode = TIGHTEST) -> Verdict:
    observed = set(observed or ())
    if expected is None:
        ok = not observed
        reason = f'spurious signal {sorted(observed)[0]}' if observed else ''
    else:
        ok = expected in observed
        reason = f'signal {expected} not raised'
    return Verdict(PASS if ok else FAIL, '' if ok else reason,
                   sorted(observed), expected, mode)


def judge(computed, expected, mode: AccuracyMode = TIGHTEST, expected_text=None) -> Verdict:
    """Dispatch on the expected value's kind."""
    if isinstance(expected, DecoratedInterval):
        return judge_decorated(computed, expected, mode)
    if isinstance(expected, Interval):
        return judge_interval(computed, expected, mode)
    if isinstance(expected, bool):
        return judge_bool(computed, expected, mode)
    if isinstance(expected, float):
        return judge_numeric(computed, expected, expected_text, mode)
    if isinstance(expected, str):
        return judge_text(computed, expected, mode)
    return Verdict(FAIL, 'kind mismatch', computed, expected, mode)
