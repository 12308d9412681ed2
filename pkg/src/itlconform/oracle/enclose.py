"""Certified tightest Binary64 enclosures by precision doubling.

Each operation's exact range is the hull of a few candidate values:
endpoint images, limits at infinities, and interior extrema.  A candidate is
either an exact BigFloat or a deferred function evaluation.  At precision q
every candidate yields a rigorous enclosure; the lower endpoint of the range
then lies between the minimum of the candidates' lower bounds and the
minimum of their upper bounds.  When both round down to the same double the
lower endpoint is certified, and symmetrically for the upper one.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from . import bigfloat as B
from .bigfloat import BigFloat, DOWN, UP, CAP, ONE_BF, ZERO_BF, INF_BF, NINF_BF
from .functions import Undetermined, enclose, half_pi_multiples, pi_interval

START_PRECISION = 64

ARITH_OPS = ('neg', 'add', 'sub', 'mul', 'div', 'recip', 'sqr', 'sqrt', 'fma')
ELEM_OPS = ('exp', 'log', 'log2', 'log10', 'sin', 'cos', 'tan', 'atan', 'pow')
SET_OPS = ('intersection', 'convexHull')
INTERVAL_OPS = ARITH_OPS + ELEM_OPS + SET_OPS
ARITY = {'neg': 1, 'recip': 1, 'sqr': 1, 'sqrt': 1, 'fma': 3,
         'add': 2, 'sub': 2, 'mul': 2, 'div': 2, 'pow': 2,
         'intersection': 2, 'convexHull': 2}
for _f in ELEM_OPS:
    ARITY.setdefault(_f, 1)

NAN = math.nan


class Enclosure53(NamedTuple):
    lo: float
    hi: float
    certified: bool
    q_final: int

    @property
    def empty(self) -> bool:
        return math.isnan(self.lo)


def _unpack(x):
    """Accept ``None`` (empty), a float, a (lo, hi) pair, or an interval-like
    object with ``lo``, ``hi`` and ``is_empty``."""
    if x is None:
        return None
    if isinstance(x, (int, float)):
        return float(x), float(x)
    if hasattr(x, 'is_empty'):
        return None if x.is_empty else (x.lo, x.hi)
    lo, hi = x
    if math.isnan(lo) or math.isnan(hi):
        return None
    return float(lo), float(hi)


# candidate values: BigFloat (exact) or (fname, x, y)

def _exact(v) -> BigFloat:
    return v if isinstance(v, BigFloat) else BigFloat.from_float(float(v))


def _corner_mul(a: float, b: float) -> BigFloat:
    if a == 0 or b == 0:
        return ZERO_BF
    return B.mul(_exact(a), _exact(b), None, DOWN)


def _mul_range(x, y):
    vals = [_corner_mul(a, b) for a in x for b in y]
    return min(vals), max(vals)


def _div_candidates(x, y):
    """Hull candidates of {a/b : a in x, b in y, b != 0}; None when empty."""
    c, d = y
    parts = []
    if c < 0:
        parts.append((c, min(d, -0.0)))
    if d > 0:
        parts.append((max(c, 0.0), d))
    if not parts:
        return None
    vals = []
    for lo, hi in parts:
        neg_part = hi <= 0
        for b in (lo, hi):
            for a in x:
                v = _corner_div(a, b, neg_part)
                if v is not None:
                    vals.append(v)
    return vals


def _corner_div(a: float, b: float, neg_part: bool):
    if a == 0:
        return ZERO_BF
    if b == 0:
        positive = (a > 0) != neg_part
        return INF_BF if positive else NINF_BF
    if math.isinf(a) and math.isinf(b):
        return None  # no limit; the neighbouring corners dominate
    if math.isinf(b):
        return ZERO_BF
    if math.isinf(a):
        return INF_BF if (a > 0) == (b > 0) else NINF_BF
    return ('div', _exact(a), _exact(b))


def _pow_corner(x: float, y: float):
    if x == 1 or y == 0:
        return ONE_BF
    if x == 0:
        return ZERO_BF if y > 0 else INF_BF
    if math.isinf(x):
        return INF_BF if y > 0 else ZERO_BF
    if math.isinf(y):
        return INF_BF if (x > 1) == (y > 0) else ZERO_BF
    return ('pow', _exact(x), _exact(y))


class _Range:
    """Candidate lists for the lower and the upper endpoint."""

    def __init__(self, lower, upper=None):
        self.lower = list(lower)
        self.upper = list(lower if upper is None else upper)


def _monotone(f: str, a: float, b: float, lo_limit=None, hi_limit=None):
    low = lo_limit if lo_limit is not None else (f, _exact(a), None)
    high = hi_limit if hi_limit is not None else (f, _exact(b), None)
    return _Range([low], [high])


def _half_pi(direction: str):
    return ('half_pi', direction, None)


def _trig_range(f: str, a: float, b: float, p: int):
    if math.isinf(a) or math.isinf(b):
        if f == 'tan':
            return _Range([NINF_BF], [INF_BF])
        return _Range([-ONE_BF], [ONE_BF])
    lo_b, hi_b = _exact(a), _exact(b)
    n_lo, n_hi = half_pi_multiples(lo_b, hi_b, p)
    ends = [(f, lo_b, None), (f, hi_b, None)]
    if f == 'tan':
        if n_lo < n_hi or (n_lo == n_hi and n_lo % 2):
            return _Range([NINF_BF], [INF_BF])
        return _Range([ends[0]], [ends[1]])
    peak, trough = (1, 3) if f == 'sin' else (0, 2)
    lower, upper = list(ends), list(ends)
    if _has_residue(n_lo, n_hi, trough):
        lower.append(-ONE_BF)
    if _has_residue(n_lo, n_hi, peak):
        upper.append(ONE_BF)
    return _Range(lower, upper)


def _has_residue(n_lo: int, n_hi: int, r: int) -> bool:
    if n_hi < n_lo:
        return False
    if n_hi - n_lo >= 3:
        return True
    return any(n % 4 == r for n in range(n_lo, n_hi + 1))


def _range(op: str, xs, p: int):
    """The exact range as a _Range, or None when it is empty."""
    if op == 'intersection':
        x, y = xs
        if x is None or y is None:
            return None
        lo, hi = max(x[0], y[0]), min(x[1], y[1])
        if lo > hi:
            return None
        return _Range([_exact(lo)], [_exact(hi)])
    if op == 'convexHull':
        live = [v for v in xs if v is not None]
        if not live:
            return None
        return _Range([_exact(min(v[0] for v in live))], [_exact(max(v[1] for v in live))])
    if any(v is None for v in xs):
        return None
    x = xs[0]
    a, b = x
    if op == 'neg':
        return _Range([-_exact(b)], [-_exact(a)])
    if op == 'add':
        c, d = xs[1]
        return _Range([B.add(_exact(a), _exact(c), None, DOWN)],
                      [B.add(_exact(b), _exact(d), None, UP)])
    if op == 'sub':
        c, d = xs[1]
        return _Range([B.sub(_exact(a), _exact(d), None, DOWN)],
                      [B.sub(_exact(b), _exact(c), None, UP)])
    if op == 'mul':
        lo, hi = _mul_range(x, xs[1])
        return _Range([lo], [hi])
    if op == 'fma':
        lo, hi = _mul_range(x, xs[1])
        c, d = xs[2]
        return _Range([B.add(lo, _exact(c), None, DOWN)], [B.add(hi, _exact(d), None, UP)])
    if op in ('div', 'recip'):
        num, den = (x, xs[1]) if op == 'div' else ((1.0, 1.0), x)
        vals = _div_candidates(num, den)
        if vals is None:
            return None
        return _Range(vals)
    if op == 'sqr':
        vals = [_corner_mul(a, a), _corner_mul(b, b)]
        if a <= 0 <= b:
            return _Range([ZERO_BF], vals)
        return _Range(vals)
    if op == 'sqrt':
        if b < 0:
            return None
        return _Range([('sqrt', _exact(max(a, 0.0)), None)], [('sqrt', _exact(b), None)])
    if op == 'exp':
        return _monotone('exp', a, b, ZERO_BF if a == -math.inf else None,
                         INF_BF if b == math.inf else None)
    if op in ('log', 'log2', 'log10'):
        if b <= 0:
            return None
        return _monotone(op, a, b, NINF_BF if a <= 0 else None,
                         INF_BF if b == math.inf else None)
    if op == 'atan':
        return _monotone('atan', a, b, _half_pi(DOWN) if a == -math.inf else None,
                         _half_pi(UP) if b == math.inf else None)
    if op in ('sin', 'cos', 'tan'):
        return _trig_range(op, a, b, p)
    if op == 'pow':
        y = xs[1]
        if b < 0:
            return None
        a = max(a, 0.0)
        if b == 0:
            if y[1] <= 0:
                return None
            return _Range([ZERO_BF], [ZERO_BF])
        vals = [_pow_corner(u, v) for u in (a, b) for v in y]
        return _Range(vals)
    raise ValueError(f'operation {op!r} not supported by the oracle')


def _evaluate(cand, q: int):
    """(lower, upper) BigFloat bounds of a candidate at precision q."""
    if isinstance(cand, BigFloat):
        return cand, cand
    f, x, y = cand
    if f == 'half_pi':
        half = pi_interval(q + 8).scale(-1)
        return (-half.hi, -half.lo) if x == DOWN else (half.lo, half.hi)
    if f == 'div':
        return B.div(x, y, q, DOWN), B.div(x, y, q, UP)
    if f == 'sqrt':
        return B.sqrt(x, q, DOWN), B.sqrt(x, q, UP)
    iv = enclose(f, x, q, y)
    return iv.lo, iv.hi


def _round(v: BigFloat, direction: str) -> float:
    r = v.round_f64(direction)
    return 0.0 if r == 0 else r


def tightest_eval(op: str, *args, cap: int = CAP) -> Enclosure53:
    """Certified tightest Binary64 enclosure of ``op`` over the input box.

    An uncertifiable range comes back with ``certified=False`` and a sound
    outward enclosure (Entire when nothing could be decided).
    """
    if op not in INTERVAL_OPS:
        raise ValueError(f'operation {op!r} not supported by the oracle')
    if len(args) != ARITY[op]:
        raise TypeError(f'{op} takes {ARITY[op]} argument(s), got {len(args)}')
    xs = [_unpack(v) for v in args]
    lo_safe, hi_safe = -math.inf, math.inf
    q = START_PRECISION
    last = q
    while q <= cap:
        last = q
        try:
            rng = _range(op, xs, q)
            if rng is None:
                return Enclosure53(NAN, NAN, True, q)
            lows = [_evaluate(c, q) for c in rng.lower]
            highs = [_evaluate(c, q) for c in rng.upper]
        except Undetermined:
            q *= 2
            continue
        lo_a = _round(min(v[0] for v in lows), DOWN)
        lo_b = _round(min(v[1] for v in lows), DOWN)
        hi_a = _round(max(v[0] for v in highs), UP)
        hi_b = _round(max(v[1] for v in highs), UP)
        lo_safe, hi_safe = lo_a, hi_b
        if lo_a == lo_b and hi_a == hi_b:
            return Enclosure53(lo_a, hi_b, True, q)
        q *= 2
    return Enclosure53(lo_safe, hi_safe, False, last)


def half_pi_range(a: float, b: float, cap: int = CAP) -> tuple[int, int]:
    """Integers n with a <= n*pi/2 <= b for finite a <= b."""
    q = START_PRECISION
    while True:
        try:
            return half_pi_multiples(_exact(a), _exact(b), q)
        except Undetermined:
            if q >= cap:
                raise
            q *= 2


# --- numeric and boolean functions -----------------------------------------

NUMERIC_OPS = ('inf', 'sup', 'mid', 'rad', 'wid', 'mag', 'mig')
BOOL_OPS = ('isEmpty', 'isEntire', 'equal', 'subset', 'interior', 'disjoint', 'isMember')

MAXREAL = float.fromhex('0x1.fffffffffffffp+1023')


def _nearest(fr: Fraction) -> float:
    # int/int true division is correctly rounded
    return fr.numerator / fr.denominator


def _ru(fr: Fraction) -> float:
    try:
        r = fr.numerator / fr.denominator
    except OverflowError:
        return math.inf
    return math.nextafter(r, math.inf) if Fraction(r) < fr else r


def numeric_eval(op: str, x) -> float:
    """Exact-arithmetic reference for the numeric interval functions."""
    box = _unpack(x)
    if box is None:
        return {'inf': math.inf, 'sup': -math.inf}.get(op, NAN)
    a, b = box
    if op == 'inf':
        return -0.0 if a == 0 else a
    if op == 'sup':
        return 0.0 if b == 0 else b
    if op == 'mag':
        return max(abs(a), abs(b))
    if op == 'mig':
        return 0.0 if a <= 0 <= b else min(abs(a), abs(b))
    if op == 'mid':
        if math.isinf(a) and math.isinf(b):
            return 0.0
        if math.isinf(a):
            return -MAXREAL
        if math.isinf(b):
            return MAXREAL
        return _nearest((Fraction(a) + Fraction(b)) / 2) + 0.0
    if op == 'wid':
        if math.isinf(a) or math.isinf(b):
            return math.inf
        return _ru(Fraction(b) - Fraction(a)) + 0.0
    if op == 'rad':
        if math.isinf(a) or math.isinf(b):
            return math.inf
        m = Fraction(numeric_eval('mid', x))
        return _ru(max(m - Fraction(a), Fraction(b) - m)) + 0.0
    raise ValueError(f'unknown numeric function {op!r}')


def bool_eval(op: str, *args) -> bool:
    """Set-semantics reference for the boolean interval functions."""
    if op == 'isMember':
        v, x = args
        box = _unpack(x)
        return box is not None and math.isfinite(v) and box[0] <= v <= box[1]
    xs = [_unpack(v) for v in args]
    if op == 'isEmpty':
        return xs[0] is None
    if op == 'isEntire':
        return xs[0] == (-math.inf, math.inf)
    x, y = xs
    if op == 'equal':
        return x == y
    if op == 'subset':
        return x is None or (y is not None and y[0] <= x[0] and x[1] <= y[1])
    if op == 'disjoint':
        return x is None or y is None or x[1] < y[0] or y[1] < x[0]
    if op == 'interior':
        if x is None:
            return True
        if y is None:
            return False
        left = y[0] < x[0] or (y[0] == x[0] == -math.inf)
        right = x[1] < y[1] or (x[1] == y[1] == math.inf)
        return left and right
    raise ValueError(f'unknown boolean function {op!r}')
