"""Tightest interval arithmetic with emulated directed rounding."""
from __future__ import annotations

import math

from ..fpkernel import dir_op
from .interval import EMPTY, INF, Interval, _bare

DOWN, UP = 'down', 'up'


def _rd(op, *args):
    return dir_op(op, DOWN, *args)


def _ru(op, *args):
    return dir_op(op, UP, *args)


def neg(x: Interval) -> Interval:
    if x.is_empty:
        return EMPTY
    return _bare(-x.hi, -x.lo)


def add(x: Interval, y: Interval) -> Interval:
    if x.is_empty or y.is_empty:
        return EMPTY
    lo = -INF if -INF in (x.lo, y.lo) else _rd('add', x.lo, y.lo)
    hi = INF if INF in (x.hi, y.hi) else _ru('add', x.hi, y.hi)
    return _bare(lo, hi)


def sub(x: Interval, y: Interval) -> Interval:
    return add(x, neg(y))


def _corner_mul(a: float, b: float, direction: str) -> float:
    if a == 0 or b == 0:
        return 0.0
    return dir_op('mul', direction, a, b)


def mul(x: Interval, y: Interval) -> Interval:
    if x.is_empty or y.is_empty:
        return EMPTY
    lows = [_corner_mul(a, b, DOWN) for a in x for b in y]
    highs = [_corner_mul(a, b, UP) for a in x for b in y]
    return _bare(min(lows), max(highs))


def _corner_div(a: float, b: float, neg_part: bool, direction: str):
    """Limit of a/b approaching the corner; None if no limit exists."""
    if a == 0:
        return 0.0
    if b == 0:
        return INF if (a > 0) != neg_part else -INF
    if math.isinf(a) and math.isinf(b):
        return None
    return dir_op('div', direction, a, b)


def div(x: Interval, y: Interval) -> Interval:
    if x.is_empty or y.is_empty:
        return EMPTY
    c, d = y
    # the divisor splits into its sign-constant parts; zero itself is dropped
    parts = []
    if c < 0:
        parts.append((c, min(d, -0.0), True))
    if d > 0:
        parts.append((max(c, 0.0), d, False))
    if not parts:
        return EMPTY
    lows, highs = [], []
    for lo, hi, neg_part in parts:
        for b in (lo, hi):
            for a in x:
                v = _corner_div(a, b, neg_part, DOWN)
                if v is not None:
                    lows.append(v)
                    highs.append(_corner_div(a, b, neg_part, UP))
    return _bare(min(lows), max(highs))


def recip(x: Interval) -> Interval:
    return div(Interval(1.0, 1.0), x)


def sqr(x: Interval) -> Interval:
    if x.is_empty:
        return EMPTY
    a, b = x
    hi = max(_corner_mul(a, a, UP), _corner_mul(b, b, UP))
    if a <= 0 <= b:
        return _bare(0.0, hi)
    return _bare(min(_corner_mul(a, a, DOWN), _corner_mul(b, b, DOWN)), hi)


def sqrt(x: Interval) -> Interval:
    if x.is_empty or x.hi < 0:
        return EMPTY
    return _bare(_rd('sqrt', max(x.lo, 0.0)), _ru('sqrt', x.hi))


def _fma_corner(a: float, b: float, c: float, direction: str) -> float:
    if math.isinf(c):
        return c
    if a == 0 or b == 0:
        return c
    if math.isinf(a) or math.isinf(b):
        return INF if (a > 0) == (b > 0) else -INF
    return dir_op('fma', direction, a, b, c)


def fma(x: Interval, y: Interval, z: Interval) -> Interval:
    if x.is_empty or y.is_empty or z.is_empty:
        return EMPTY
    lo = min(_fma_corner(a, b, z.lo, DOWN) for a in x for b in y)
    hi = max(_fma_corner(a, b, z.hi, UP) for a in x for b in y)
    return _bare(lo, hi)
