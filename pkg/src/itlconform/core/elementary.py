"""Elementary interval functions at the "accurate" level.

Endpoints come from the host libm (round to nearest) and are widened by one
ulp on each side.  That is sound as long as the host result is faithful, i.e.
one of the two doubles bracketing the exact value; :func:`validate_host_libm`
samples each function against the oracle, lazily on its first use, and
switches failing functions to oracle-backed endpoints.
"""
from __future__ import annotations

import math
import random
import threading

from ..fpkernel import MAXREAL, next_down, next_up
from ..oracle import bf_elem, half_pi_range
from .interval import EMPTY, ENTIRE, INF, Interval, _bare

HALF_PI_UP = float.fromhex('0x1.921fb54442d19p+0')   # smallest double > pi/2
HALF_PI_DOWN = float.fromhex('0x1.921fb54442d18p+0')

FUNCTIONS = ('exp', 'log', 'log2', 'log10', 'sin', 'cos', 'tan', 'atan', 'pow')

_oracle_backed: set[str] = set()
_checked: dict[str, int] = {}
_validate_lock = threading.Lock()

_POW10 = {10.0 ** k: float(k) for k in range(23)}


def _host(f: str, x: float, y: float | None = None) -> float:
    try:
        if f == 'pow':
            return math.pow(x, y)
        return getattr(math, f)(x)
    except OverflowError:
        return INF


def _oracle(f: str, x: float, y, direction: str) -> float:
    v = bf_elem(f, direction, 64, x, y)
    return v.round_f64(direction)


def _exact(f: str, x: float, y=None):
    """Exactly known values, or None."""
    if f == 'exp' and x == 0:
        return 1.0
    if f == 'log' and x == 1:
        return 0.0
    if f == 'log2' and x > 0 and math.frexp(x)[0] == 0.5:
        return float(math.frexp(x)[1] - 1)
    if f == 'log10' and x in _POW10:
        return _POW10[x]
    if f in ('sin', 'tan', 'atan') and x == 0:
        return 0.0
    if f == 'cos' and x == 0:
        return 1.0
    if f == 'pow' and (y == 0 or x == 1):
        return 1.0
    return None


def _bound(f: str, x: float, direction: str, y=None) -> float:
    """A directed bound of f at a finite point (x > 0 for logs and pow)."""
    e = _exact(f, x, y)
    if e is not None:
        return e
    if f not in _checked:
        _check(f)
    if f in _oracle_backed:
        return _oracle(f, x, y, direction)
    v = _host(f, x, y)
    if f in ('exp', 'pow') and v == 0:
        # underflowed to zero: the exact value is positive and below MINSUB
        return 0.0 if direction == 'down' else next_up(0.0)
    return next_down(v) if direction == 'down' else next_up(v)


def _clamp(lo: float, hi: float, floor: float, ceil: float) -> Interval:
    return _bare(max(lo, floor), min(hi, ceil))


def exp(x: Interval) -> Interval:
    if x.is_empty:
        return EMPTY
    lo = 0.0 if x.lo == -INF else _bound('exp', x.lo, 'down')
    hi = INF if x.hi == INF else _bound('exp', x.hi, 'up')
    return _clamp(lo, hi, 0.0, INF)


def _log_family(f: str, x: Interval) -> Interval:
    if x.is_empty or x.hi <= 0:
        return EMPTY
    lo = -INF if x.lo <= 0 else _bound(f, x.lo, 'down')
    hi = INF if x.hi == INF else _bound(f, x.hi, 'up')
    return _bare(lo, hi)


def log(x):
    return _log_family('log', x)


def log2(x):
    return _log_family('log2', x)


def log10(x):
    return _log_family('log10', x)


def atan(x: Interval) -> Interval:
    if x.is_empty:
        return EMPTY
    lo = -HALF_PI_UP if x.lo == -INF else _bound('atan', x.lo, 'down')
    hi = HALF_PI_UP if x.hi == INF else _bound('atan', x.hi, 'up')
    return _clamp(lo, hi, -HALF_PI_UP, HALF_PI_UP)


def _has_residue(n_lo: int, n_hi: int, r: int) -> bool:
    if n_hi < n_lo:
        return False
    return n_hi - n_lo >= 3 or any(n % 4 == r for n in range(n_lo, n_hi + 1))


def _sin_cos(f: str, x: Interval) -> Interval:
    if x.is_empty:
        return EMPTY
    if not x.is_bounded:
        return Interval(-1.0, 1.0)
    n_lo, n_hi = half_pi_range(x.lo, x.hi)
    peak, trough = (1, 3) if f == 'sin' else (0, 2)
    lo = min(_bound(f, x.lo, 'down'), _bound(f, x.hi, 'down'))
    hi = max(_bound(f, x.lo, 'up'), _bound(f, x.hi, 'up'))
    if _has_residue(n_lo, n_hi, trough):
        lo = -1.0
    if _has_residue(n_lo, n_hi, peak):
        hi = 1.0
    return _clamp(lo, hi, -1.0, 1.0)


def sin(x):
    return _sin_cos('sin', x)


def cos(x):
    return _sin_cos('cos', x)


def tan(x: Interval) -> Interval:
    if x.is_empty:
        return EMPTY
    if not x.is_bounded:
        return ENTIRE
    n_lo, n_hi = half_pi_range(x.lo, x.hi)
    if n_lo < n_hi or (n_lo == n_hi and n_lo % 2):
        return ENTIRE
    return _bare(_bound('tan', x.lo, 'down'), _bound('tan', x.hi, 'up'))


def _pow_corner(x: float, y: float, direction: str) -> float:
    if x == 1 or y == 0:
        return 1.0
    if x == 0:
        return 0.0 if y > 0 else INF
    if math.isinf(x):
        return INF if y > 0 else 0.0
    if math.isinf(y):
        return INF if (x > 1) == (y > 0) else 0.0
    v = _bound('pow', x, direction, y)
    return max(v, 0.0)


def pow(x: Interval, y: Interval) -> Interval:
    """x**y on the domain x > 0, plus x = 0 when y > 0."""
    if x.is_empty or y.is_empty or x.hi < 0:
        return EMPTY
    a = max(x.lo, 0.0)
    if x.hi == 0:
        return EMPTY if y.hi <= 0 else Interval(0.0, 0.0)
    lo = min(_pow_corner(u, v, 'down') for u in (a, x.hi) for v in y)
    hi = max(_pow_corner(u, v, 'up') for u in (a, x.hi) for v in y)
    return _bare(lo, hi)


# --- host libm validation --------------------------------------------------

def _sample_points(f: str, rng: random.Random, n: int):
    for _ in range(n):
        kind = rng.randrange(4)
        if kind == 0:
            v = rng.uniform(-10, 10)
        elif kind == 1:
            v = math.ldexp(rng.random(), rng.randint(-1070, 9))
        elif kind == 2:
            v = rng.uniform(-700, 700)
        else:
            v = rng.uniform(-1e6, 1e6)
        if f in ('log', 'log2', 'log10', 'pow'):
            v = abs(v) or 1.5
        y = rng.uniform(-20, 20) if f == 'pow' else None
        yield v, y


def _check(f: str, n: int = 64, seed: int = 1788, apply: bool = True) -> int:
    with _validate_lock:
        if apply and f in _checked:
            return _checked[f]
        rng = random.Random(f'{seed}:{f}')
        bad = 0
        for x, y in _sample_points(f, rng, n):
            if _exact(f, x, y) is not None:
                continue
            v = _host(f, x, y)
            if not math.isfinite(v) or abs(v) > MAXREAL:
                continue
            down, up = _oracle(f, x, y, 'down'), _oracle(f, x, y, 'up')
            if not (next_down(v) <= down and up <= next_up(v)):
                bad += 1
        if apply:
            _checked[f] = bad
            if bad:
                _oracle_backed.add(f)
        return bad


def validate_host_libm(n: int = 64, seed: int = 1788, apply: bool = True) -> dict:
    """Check host results are faithful on ``n`` samples per function.

    Returns ``{function: number of failures}``; with ``apply`` the failing
    functions switch to the oracle.  Functions are otherwise checked on
    first use, so calling this is only needed for an up-front report.
    """
    if apply:
        _checked.clear()
        _oracle_backed.clear()
    return {f: _check(f, n, seed, apply) for f in FUNCTIONS}


def oracle_backed() -> frozenset:
    return frozenset(_oracle_backed)


def ensure_validated() -> None:
    """Check every function not yet checked."""
    for f in FUNCTIONS:
        if f not in _checked:
            _check(f)
