"""Decorated intervals for the set-based flavor."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import IntEnum

from . import core
from .core import EMPTY, ENTIRE, Interval
from .oracle import half_pi_range


class Dec(IntEnum):
    ILL = 0
    TRV = 1
    DEF = 2
    DAC = 3
    COM = 4

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, name: str) -> 'Dec':
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f'unknown decoration {name!r}') from None


ALL_DECS = tuple(reversed(Dec))  # com first


@dataclass(frozen=True, eq=False)
class DecoratedInterval:
    interval: Interval
    dec: Dec

    def __post_init__(self):
        x, d = self.interval, self.dec
        if d == Dec.ILL and not x.is_empty:
            raise ValueError('ill decoration needs the empty interval')
        if d >= Dec.DEF and x.is_empty:
            raise ValueError(f'{d.label} decoration on the empty interval')
        if d == Dec.COM and not x.is_bounded:
            raise ValueError('com decoration on an unbounded interval')

    @property
    def is_nai(self) -> bool:
        return self.dec == Dec.ILL

    def __eq__(self, other):
        if not isinstance(other, DecoratedInterval):
            return NotImplemented
        return self.dec == other.dec and self.interval == other.interval

    def __hash__(self):
        return hash((self.interval, int(self.dec)))

    def __repr__(self):
        return f'{self.interval!r}_{self.dec.label}'

    def __str__(self):
        return f'{self.interval}_{self.dec.label}'


NAI = DecoratedInterval(EMPTY, Dec.ILL)


def new_dec(x: Interval) -> DecoratedInterval:
    if x.is_empty:
        return DecoratedInterval(x, Dec.TRV)
    return DecoratedInterval(x, Dec.COM if x.is_bounded else Dec.DAC)


def set_dec(x: Interval, dec: Dec) -> DecoratedInterval:
    """Pair without complaint: invalid combinations give NaI."""
    try:
        return DecoratedInterval(x, dec)
    except ValueError:
        return NAI


# --- domain analysis -------------------------------------------------------

def _excludes_zero(x: Interval) -> bool:
    return x.lo > 0 or x.hi < 0


def _tan_defined(x: Interval) -> bool:
    if not x.is_bounded:
        return False
    n_lo, n_hi = half_pi_range(x.lo, x.hi)
    return not (n_lo < n_hi or (n_lo == n_hi and n_lo % 2))


DOMAIN_CHECKS = {
    'div': lambda x, y: _excludes_zero(y),
    'recip': lambda x: _excludes_zero(x),
    'sqrt': lambda x: x.lo >= 0,
    'log': lambda x: x.lo > 0,
    'log2': lambda x: x.lo > 0,
    'log10': lambda x: x.lo > 0,
    'tan': _tan_defined,
    'pow': lambda x, y: x.lo > 0 or (x.lo == 0 and y.lo > 0),
}
SET_OPS = ('intersection', 'convexHull')


def local_dec(op: str, xs, result: Interval) -> Dec:
    """Decoration contributed by the operation itself on bare inputs."""
    if op in SET_OPS or any(x.is_empty for x in xs) or result.is_empty:
        return Dec.TRV
    check = DOMAIN_CHECKS.get(op)
    if check is not None and not check(*xs):
        return Dec.TRV
    # every function in the vocabulary is continuous on its domain
    if all(x.is_bounded for x in xs) and result.is_bounded:
        return Dec.COM
    return Dec.DAC


def dec_op(op: str, *xs: DecoratedInterval) -> DecoratedInterval:
    if any(x.is_nai for x in xs):
        return NAI
    bare = [x.interval for x in xs]
    result = core.INTERVAL_FUNCS[op](*bare)
    dec = min([local_dec(op, bare, result)] + [x.dec for x in xs])
    return DecoratedInterval(result, dec)


# --- decoration combinatorics ---------------------------------------------

_POOL = (
    Interval(1.0, 2.0), Interval(-1.0, 4.0), Interval(0.0, 1.0), Interval(-3.0, -1.0),
    Interval(0.0, 0.0), Interval(0.5, 0.5), Interval(-2.0, 0.0), Interval(1.0, 1.0),
    Interval(1.0, math.inf), Interval(-math.inf, -1.0), ENTIRE, EMPTY,
    # bounded inputs whose images overflow
    Interval(709.0, 710.0), Interval(1e308, 1.5e308),
)


def _pool_for(dec: Dec):
    if dec == Dec.ILL:
        return [NAI]
    out = []
    for x in _POOL:
        d = set_dec(x, dec)
        if not d.is_nai:
            out.append(d)
    return out


@dataclass(frozen=True)
class DecCase:
    op: str
    inputs: tuple
    expected: DecoratedInterval

    @property
    def key(self):
        return tuple(x.dec for x in self.inputs), self.expected.dec


def enumerate_dec_cases(op: str, arity: int | None = None):
    """One witness per reachable (input decorations, output decoration) pair.

    Returns ``(cases, unreachable)`` where ``unreachable`` lists the pairs
    for which no witness exists in the candidate pool.
    """
    if arity is None:
        from .oracle import ARITY
        arity = ARITY[op]
    found: dict = {}
    for decs in itertools.product(ALL_DECS, repeat=arity):
        pools = [_pool_for(d) for d in decs]
        for args in itertools.product(*pools):
            out = dec_op(op, *args)
            key = (decs, out.dec)
            if key not in found:
                found[key] = DecCase(op, tuple(args), out)
    cases = [found[k] for k in sorted(found, key=_key_order)]
    unreachable = [(decs, out) for decs in itertools.product(ALL_DECS, repeat=arity)
                   for out in ALL_DECS if (decs, out) not in found]
    return cases, unreachable


def _key_order(key):
    decs, out = key
    return tuple(-int(d) for d in decs), -int(out)


# --- brute-force cross-check ------------------------------------------------

def _grid(x: Interval, n: int = 257):
    lo = max(x.lo, -1e300)
    hi = min(x.hi, 1e300)
    if lo == hi:
        return [lo]
    pts = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    pts[0], pts[-1] = lo, hi
    return pts


def _point_defined(op: str, *v: float) -> bool:
    if op in ('div',):
        return v[1] != 0
    if op == 'recip':
        return v[0] != 0
    if op == 'sqrt':
        return v[0] >= 0
    if op in ('log', 'log2', 'log10'):
        return v[0] > 0
    if op == 'pow':
        return v[0] > 0 or (v[0] == 0 and v[1] > 0)
    if op == 'tan':
        return math.cos(v[0]) != 0
    return True


def _crossings(op: str, grids) -> bool:
    """A sign change of the singular quantity between neighbouring points."""
    if op in ('div', 'recip'):
        g = grids[-1]
        return any(a * b < 0 for a, b in zip(g, g[1:]))
    if op == 'tan':
        g = grids[0]
        return any(math.cos(a) * math.cos(b) < 0 for a, b in zip(g, g[1:]))
    return False


def brute_local_dec(op: str, xs, result: Interval) -> Dec:
    """Local decoration by dense sampling instead of the analytic rule."""
    if op in SET_OPS or any(x.is_empty for x in xs) or result.is_empty:
        return Dec.TRV
    if op == 'tan' and not xs[0].is_bounded:
        return Dec.TRV
    n = {1: 257, 2: 65}.get(len(xs), 17)
    grids = [_grid(x, n) for x in xs]
    if _crossings(op, grids):
        return Dec.TRV
    for pt in itertools.product(*grids):
        if not _point_defined(op, *pt):
            return Dec.TRV
    if all(x.is_bounded for x in xs) and result.is_bounded:
        return Dec.COM
    return Dec.DAC
