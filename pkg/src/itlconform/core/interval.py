"""The bare set-based interval type, constructors, set, numeric and boolean
functions."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..fpkernel import MAXREAL, dir_op

NAN = math.nan
INF = math.inf


class UndefinedOperation(ValueError):
    """Raised by constructors given an invalid pair of bounds."""
    signal = 'UndefinedOperation'


@dataclass(frozen=True, eq=False)
class Interval:
    lo: float
    hi: float

    @property
    def is_empty(self) -> bool:
        return self.lo != self.lo

    @property
    def is_bounded(self) -> bool:
        return self.is_empty or (math.isfinite(self.lo) and math.isfinite(self.hi))

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash(None) if self.is_empty else hash((self.lo + 0.0, self.hi + 0.0))

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __repr__(self):
        if self.is_empty:
            return 'Interval(empty)'
        return f'Interval({self.lo!r}, {self.hi!r})'

    def __str__(self):
        from .text import interval_to_text
        return interval_to_text(self)


EMPTY = Interval(NAN, NAN)
ENTIRE = Interval(-INF, INF)


def _bare(lo: float, hi: float) -> Interval:
    """Build without validation; zeros are stored unsigned."""
    return Interval(lo + 0.0 if lo == 0 else lo, hi + 0.0 if hi == 0 else hi)


def make_interval(lo: float, hi: float | None = None) -> Interval:
    if hi is None:
        hi = lo
    lo, hi = float(lo), float(hi)
    if lo != lo or hi != hi or lo > hi or lo == INF or hi == -INF:
        raise UndefinedOperation(f'invalid bounds [{lo!r}, {hi!r}]')
    return _bare(lo, hi)


def nums_to_interval(lo: float, hi: float) -> tuple[Interval, set]:
    """Signalling constructor: Empty plus the signal on bad bounds."""
    try:
        return make_interval(lo, hi), set()
    except UndefinedOperation:
        return EMPTY, {UndefinedOperation.signal}


def point(x: float) -> Interval:
    return make_interval(x, x)


# --- set operations (exact) ------------------------------------------------

def intersection(x: Interval, y: Interval) -> Interval:
    if x.is_empty or y.is_empty:
        return EMPTY
    lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
    return EMPTY if lo > hi else _bare(lo, hi)


def convex_hull(x: Interval, y: Interval) -> Interval:
    if x.is_empty:
        return y
    if y.is_empty:
        return x
    return _bare(min(x.lo, y.lo), max(x.hi, y.hi))


# --- numeric functions -----------------------------------------------------

def inf(x: Interval) -> float:
    if x.is_empty:
        return INF
    return -0.0 if x.lo == 0 else x.lo


def sup(x: Interval) -> float:
    if x.is_empty:
        return -INF
    return 0.0 if x.hi == 0 else x.hi


def mid(x: Interval) -> float:
    if x.is_empty:
        return NAN
    a, b = x
    if a == -INF and b == INF:
        return 0.0
    if a == -INF:
        return -MAXREAL
    if b == INF:
        return MAXREAL
    s = a + b
    if math.isinf(s):
        return a / 2 + b / 2
    return s / 2 + 0.0


def rad(x: Interval) -> float:
    if x.is_empty:
        return NAN
    if not x.is_bounded:
        return INF
    m = mid(x)
    return max(dir_op('sub', 'up', m, x.lo), dir_op('sub', 'up', x.hi, m)) + 0.0


def wid(x: Interval) -> float:
    if x.is_empty:
        return NAN
    return dir_op('sub', 'up', x.hi, x.lo) + 0.0


def mag(x: Interval) -> float:
    if x.is_empty:
        return NAN
    return max(abs(x.lo), abs(x.hi))


def mig(x: Interval) -> float:
    if x.is_empty:
        return NAN
    if x.lo <= 0 <= x.hi:
        return 0.0
    return min(abs(x.lo), abs(x.hi))


# --- boolean functions -----------------------------------------------------

def is_empty(x: Interval) -> bool:
    return x.is_empty


def is_entire(x: Interval) -> bool:
    return x.lo == -INF and x.hi == INF


def equal(x: Interval, y: Interval) -> bool:
    return x == y


def subset(x: Interval, y: Interval) -> bool:
    if x.is_empty:
        return True
    return not y.is_empty and y.lo <= x.lo and x.hi <= y.hi


def interior(x: Interval, y: Interval) -> bool:
    """x lies in the topological interior of y."""
    if x.is_empty:
        return True
    if y.is_empty:
        return False
    left = y.lo < x.lo or y.lo == x.lo == -INF
    right = x.hi < y.hi or x.hi == y.hi == INF
    return left and right


def disjoint(x: Interval, y: Interval) -> bool:
    if x.is_empty or y.is_empty:
        return True
    return x.hi < y.lo or y.hi < x.lo


def is_member(v: float, x: Interval) -> bool:
    return math.isfinite(v) and not x.is_empty and x.lo <= v <= x.hi
