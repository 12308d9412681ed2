"""Rigorous directed bounds for elementary functions.

Every function evaluates an enclosure of the exact value with outward
rounded interval arithmetic on BigFloat endpoints at a working precision a
few bits above the requested one.  Series truncation errors are added as
explicit remainder intervals, so the enclosure never depends on an error
analysis done by hand.
"""
from __future__ import annotations

import threading

from . import bigfloat as B
from .bigfloat import BigFloat, DOWN, UP, ONE_BF, ZERO_BF, bf

GUARD = 16
SATURATE = 8192

__all__ = ['Undetermined', 'Iv', 'bf_elem', 'enclose', 'pi_interval',
           'ln2_interval', 'half_pi_multiples', 'ELEMENTARY']

ELEMENTARY = ('exp', 'log', 'log2', 'log10', 'sin', 'cos', 'tan', 'atan', 'pow')


class Undetermined(ArithmeticError):
    """Precision too low to decide a sign or a branch; retry with more bits."""


class Iv:
    """Closed interval with BigFloat endpoints (finite, or +-inf saturations)."""

    __slots__ = ('lo', 'hi')

    def __init__(self, lo: BigFloat, hi: BigFloat | None = None):
        self.lo = lo
        self.hi = lo if hi is None else hi

    def __repr__(self):
        return f'Iv({self.lo.approx()!r}, {self.hi.approx()!r})'

    def add(self, other: 'Iv', p: int) -> 'Iv':
        return Iv(B.add(self.lo, other.lo, p, DOWN), B.add(self.hi, other.hi, p, UP))

    def sub(self, other: 'Iv', p: int) -> 'Iv':
        return Iv(B.sub(self.lo, other.hi, p, DOWN), B.sub(self.hi, other.lo, p, UP))

    def neg(self) -> 'Iv':
        return Iv(-self.hi, -self.lo)

    def mul(self, other: 'Iv', p: int) -> 'Iv':
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a.sign == 0 and c.sign == 0:
            return Iv(B.mul(a, c, p, DOWN), B.mul(b, d, p, UP))
        lows = [B.mul(x, y, p, DOWN) for x in (a, b) for y in (c, d)]
        highs = [B.mul(x, y, p, UP) for x in (a, b) for y in (c, d)]
        return Iv(min(lows), max(highs))

    def sqr(self, p: int) -> 'Iv':
        a, b = self.lo, self.hi
        if a.sign == 0:
            return Iv(B.mul(a, a, p, DOWN), B.mul(b, b, p, UP))
        if b.sign == 1 or b.is_zero:
            return Iv(B.mul(b, b, p, DOWN), B.mul(a, a, p, UP))
        top = max(abs(a), abs(b))
        return Iv(ZERO_BF, B.mul(top, top, p, UP))

    def div(self, other: 'Iv', p: int) -> 'Iv':
        c, d = other.lo, other.hi
        if c.compare(ZERO_BF) <= 0 <= d.compare(ZERO_BF):
            raise Undetermined('divisor interval contains zero')
        a, b = self.lo, self.hi
        lows = [B.div(x, y, p, DOWN) for x in (a, b) for y in (c, d)]
        highs = [B.div(x, y, p, UP) for x in (a, b) for y in (c, d)]
        return Iv(min(lows), max(highs))

    def div_int(self, n: int, p: int) -> 'Iv':
        d = BigFloat.from_int(n)
        if n > 0:
            return Iv(B.div(self.lo, d, p, DOWN), B.div(self.hi, d, p, UP))
        return Iv(B.div(self.hi, d, p, DOWN), B.div(self.lo, d, p, UP))

    def sqrt(self, p: int) -> 'Iv':
        return Iv(B.sqrt(self.lo, p, DOWN), B.sqrt(self.hi, p, UP))

    def scale(self, k: int) -> 'Iv':
        return Iv(_scale(self.lo, k), _scale(self.hi, k))

    def widen(self, err: BigFloat) -> 'Iv':
        """Add ``[-err, err]`` exactly."""
        return Iv(B.add(self.lo, -err, None, DOWN), B.add(self.hi, err, None, UP))

    def rounded(self, p: int) -> 'Iv':
        return Iv(B.round_to(self.lo, p, DOWN), B.round_to(self.hi, p, UP))

    def contains_zero(self) -> bool:
        return self.lo.compare(ZERO_BF) <= 0 <= self.hi.compare(ZERO_BF)


def _scale(x: BigFloat, k: int) -> BigFloat:
    if x.kind != B.FINITE:
        return x
    return BigFloat(x.sign, x.man, x.exp + k)


def _point(x: BigFloat) -> Iv:
    return Iv(x, x)


ONE = _point(ONE_BF)


# --- constants -------------------------------------------------------------

_CONST_BITS = 6400
_const_lock = threading.Lock()
_const_cache: dict[str, tuple[int, int]] = {}


def _atan_inv(n: int, bits: int) -> int:
    """Fixed-point arctan(1/n) * 2**bits, truncated term by term."""
    total = 0
    power = (1 << bits) // n
    n2 = n * n
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        power //= n2
        k += 1
    return total


def _atanh_inv(n: int, bits: int) -> int:
    total = 0
    power = (1 << bits) // n
    n2 = n * n
    k = 0
    while power:
        total += power // (2 * k + 1)
        power //= n2
        k += 1
    return total


def _compute_constants(bits: int) -> dict[str, tuple[int, int]]:
    extra = 64
    w = bits + extra
    pi = 16 * _atan_inv(5, w) - 4 * _atan_inv(239, w)
    ln2 = 2 * _atanh_inv(3, w)
    # truncation errors are far below 2**extra units; keep a 2-unit margin
    return {'pi': (pi >> extra, bits), 'ln2': (ln2 >> extra, bits)}


def _constant(name: str, bits: int) -> Iv:
    """Enclosure of a constant, with endpoints at ``bits`` fractional bits."""
    cached = _const_cache.get(name)
    if cached is None or cached[1] < bits:
        with _const_lock:
            cached = _const_cache.get(name)
            if cached is None or cached[1] < bits:
                size = max(_CONST_BITS, bits + 256)
                _const_cache.update(_compute_constants(size))
                cached = _const_cache[name]
    value, have = cached
    shift = have - bits
    v = value >> shift
    return Iv(BigFloat(0, v - 2, -bits), BigFloat(0, v + 3, -bits))


def pi_interval(bits: int) -> Iv:
    return _constant('pi', bits)


def ln2_interval(bits: int) -> Iv:
    return _constant('ln2', bits)


# --- series helpers --------------------------------------------------------

def _factorial_terms(p: int, base_shift: int = 0) -> int:
    """Smallest N with N! * 2**(base_shift*N) >= 2**p."""
    n = 1
    acc = 1
    target = 1 << p
    while acc << (base_shift * n) < target:
        n += 1
        acc *= n
    return n


def _exp_series(r: Iv, p: int) -> Iv:
    # |r| <= 1/2: remainder <= 2 * |r|**(N+1)/(N+1)! <= 2**-(p+6)
    n = _factorial_terms(p + 7, 1)
    s = ONE
    for k in range(n - 1, 0, -1):
        s = ONE.add(r.mul(s, p).div_int(k, p), p)
    return s.widen(BigFloat.pow2(-(p + 6)))


def _exp_point(x: BigFloat, p: int) -> Iv:
    if x.is_zero:
        return ONE
    if x.kind == B.INF:
        return Iv(B.INF_BF) if not x.sign else _point(ZERO_BF)
    limit = BigFloat.from_int(SATURATE)
    if x > limit:
        # e**x > 2**(1.44 * SATURATE); bound above by 2**ceil(2x)
        upper = B.add(B.mul(x, BigFloat.from_int(2), None, UP), ONE_BF, None, UP)
        return Iv(BigFloat.pow2(int(SATURATE * 1.44)), BigFloat.pow2(_ceil_int(upper)))
    if x < -limit:
        lower = B.mul(x, BigFloat.from_int(2), None, DOWN)
        return Iv(BigFloat.pow2(_floor_int(lower) - 1), BigFloat.pow2(-int(SATURATE * 1.44)))
    k = round(x.approx() / 0.6931471805599453)
    w = p + GUARD + abs(k).bit_length()
    ln2 = ln2_interval(w)
    kk = Iv(BigFloat.from_int(k)) if k else None
    r = _point(x)
    if kk is not None:
        r = r.sub(kk.mul(ln2, None), None)
    r = r.rounded(p + GUARD)
    return _exp_series(r, p + GUARD).scale(k)


def _floor_int(x: BigFloat) -> int:
    fr = x.to_fraction()
    return fr.numerator // fr.denominator


def _ceil_int(x: BigFloat) -> int:
    fr = x.to_fraction()
    return -((-fr.numerator) // fr.denominator)


def _log_point(x: BigFloat, p: int) -> Iv:
    if x.is_zero:
        return Iv(B.NINF_BF)
    if x.kind == B.INF:
        return Iv(B.INF_BF)
    if x == ONE_BF:
        return _point(ZERO_BF)
    w = p + GUARD
    e = x.top
    m = BigFloat(0, x.man, x.exp - e)  # in [1, 2)
    if B.mul(m, m, None, UP) > BigFloat.from_int(2):
        m = BigFloat(0, m.man, m.exp - 1)
        e += 1
    num = B.sub(m, ONE_BF, None, DOWN)
    den = B.add(m, ONE_BF, None, UP)
    z = _point(num).div(_point(den), w) if not num.is_zero else _point(ZERO_BF)
    if z.lo.is_zero and z.hi.is_zero:
        logm = _point(ZERO_BF)
    else:
        z2 = z.sqr(w)
        # z**2 <= 2**-5; tail of sum z**2n/(2n+1) <= 2 * 2**(-5(N+1))
        n = (w + 8) // 5 + 1
        s = _point(ONE_BF).div_int(2 * n + 1, w)
        for k in range(n - 1, -1, -1):
            s = _point(ONE_BF).div_int(2 * k + 1, w).add(z2.mul(s, w), w)
        s = Iv(s.lo, B.add(s.hi, BigFloat.pow2(1 - 5 * (n + 1)), None, UP))
        logm = z.mul(s, w).scale(1)
    if e:
        ln2 = ln2_interval(w + abs(e).bit_length())
        logm = Iv(BigFloat.from_int(e)).mul(ln2, w).add(logm, w)
    return logm


def half_pi_reduce(x: BigFloat, p: int) -> tuple[int, Iv]:
    """Return ``k`` and an enclosure of ``x - k*pi/2`` with relative width
    below ``2**-p``; ``|x - k*pi/2| <= pi/4 + tiny``."""
    if abs(x) <= BigFloat(0, 25, -5):  # 0.78125 < pi/4
        return 0, _point(x)
    extra = 64
    xf = x.to_fraction()
    while True:
        bits = p + max(0, x.top) + extra
        pi = pi_interval(bits)
        k = round(xf * 2 / pi.lo.to_fraction())
        kk = BigFloat.from_int(k)
        half_lo = BigFloat(pi.lo.sign, pi.lo.man, pi.lo.exp - 1)
        half_hi = BigFloat(pi.hi.sign, pi.hi.man, pi.hi.exp - 1)
        prods = (B.mul(kk, half_lo, None, DOWN), B.mul(kk, half_hi, None, DOWN))
        r = Iv(B.sub(x, max(prods), None, DOWN), B.sub(x, min(prods), None, UP))
        if not r.contains_zero():
            width = B.sub(r.hi, r.lo, None, UP)
            small = min(abs(r.lo), abs(r.hi))
            if width.is_zero or width.top < small.top - p - 4:
                return k, r.rounded(p + 8)
        extra += 64 + p
        if extra > 8 * (p + 1200):
            raise Undetermined('argument reduction did not converge')


def _sin_cos_series(r: Iv, p: int) -> tuple[Iv, Iv]:
    """Enclosures of sin(r), cos(r) for |r| < 1."""
    r2 = r.sqr(p)
    n = 1
    acc = 6  # (2n+1)!
    while acc < (1 << (p + 8)):
        n += 1
        acc *= (2 * n) * (2 * n + 1)
    s = ONE
    c = ONE
    for k in range(n, 0, -1):
        s = ONE.sub(r2.mul(s, p).div_int((2 * k) * (2 * k + 1), p), p)
        c = ONE.sub(r2.mul(c, p).div_int((2 * k - 1) * (2 * k), p), p)
    tail = BigFloat.pow2(-(p + 8))
    return r.mul(s.widen(tail), p), c.widen(tail)


def _trig_point(x: BigFloat, p: int) -> tuple[Iv, Iv]:
    """(sin x, cos x) enclosures for finite x."""
    if x.is_zero:
        return _point(ZERO_BF), ONE
    w = p + GUARD
    k, r = half_pi_reduce(x, w)
    s, c = _sin_cos_series(r, w)
    q = k % 4
    if q == 0:
        return s, c
    if q == 1:
        return c, s.neg()
    if q == 2:
        return s.neg(), c.neg()
    return c.neg(), s


def _atan_small(t: Iv, p: int) -> Iv:
    """atan on 0 <= t <= 1 by argument halving and an alternating series."""
    j = 0
    eighth = BigFloat.pow2(-3)
    while t.hi > eighth:
        root = ONE.add(t.sqr(p), p).sqrt(p)
        t = t.div(ONE.add(root, p), p)
        j += 1
    if t.hi.is_zero:
        return t
    t2 = t.sqr(p)
    n = (p + 8) // 6 + 1
    s = ONE.div_int(2 * n + 1, p)
    for k in range(n - 1, -1, -1):
        s = ONE.div_int(2 * k + 1, p).sub(t2.mul(s, p), p)
    s = s.widen(BigFloat.pow2(-6 * (n + 1)))
    return t.mul(s, p).scale(j)


def _atan_point(x: BigFloat, p: int) -> Iv:
    if x.is_zero:
        return _point(x)
    w = p + GUARD
    if x.kind == B.INF:
        half = pi_interval(w).scale(-1)
        return half.neg() if x.sign else half
    ax = abs(x)
    if ax > ONE_BF:
        inv = ONE.div(_point(ax), w)
        res = pi_interval(w).scale(-1).sub(_atan_small(inv, w), w)
    else:
        res = _atan_small(_point(ax), w)
    return res.neg() if x.sign else res


def _iroot(n: int, k: int) -> int | None:
    guess = round(n ** (1.0 / k))
    for c in (guess - 1, guess, guess + 1):
        if c > 0 and c ** k == n:
            return c
    return None


def pow_exact(x: BigFloat, y: BigFloat) -> BigFloat | None:
    """x**y when it is an exactly representable dyadic value, else None."""
    if y.is_zero or x == ONE_BF:
        return ONE_BF
    if y.is_integer():
        n = y.to_int()
        if x.man == 1:
            return BigFloat.pow2(x.exp * n)
        if n > 0 and (x.man.bit_length() - 1) * n < 64:
            return BigFloat(0, x.man ** n, x.exp * n)
        return None
    a = y.man if not y.sign else -y.man
    j = -y.exp
    if j > 6:
        return None
    root = 1 << j
    if x.man == 1:
        if (x.exp * a) % root == 0:
            return BigFloat.pow2(x.exp * a // root)
        return None
    if a < 0 or x.exp % root:
        return None
    mr = _iroot(x.man, root) if x.man.bit_length() <= 1000 else None
    if mr is None or (mr.bit_length() - 1) * a >= 64:
        return None
    return BigFloat(0, mr ** a, x.exp // root * a)


def _pow_point(x: BigFloat, y: BigFloat, p: int) -> Iv:
    """x**y for finite x > 0 and finite y."""
    exact = pow_exact(x, y)
    if exact is not None:
        return _point(exact)
    w = p + GUARD
    lx = _log_point(x, w + 8)
    lv = _point(y).mul(lx, w + 8)
    top = max(abs(lv.lo), abs(lv.hi)).top if not lv.contains_zero() else 0
    if 0 < top < 14:
        lx = _log_point(x, w + 8 + top)
        lv = _point(y).mul(lx, w + 8 + top)
    return Iv(_exp_point(lv.lo, w).lo, _exp_point(lv.hi, w).hi)


def _ln10(p: int) -> Iv:
    return _log_point(BigFloat.from_int(10), p)


def enclose(f: str, x: BigFloat, p: int, y: BigFloat | None = None) -> Iv:
    """Enclosure of ``f(x)`` (or ``x**y``) with width about ``2**-p`` relative.

    Domain errors give a NaN point.  Raises :class:`Undetermined` when the
    precision does not suffice to separate a pole.
    """
    if x.is_nan or (y is not None and y.is_nan):
        return Iv(B.NAN_BF)
    if f == 'exp':
        return _exp_point(x, p)
    if f in ('log', 'log2', 'log10'):
        if x.sign and not x.is_zero:
            return Iv(B.NAN_BF)
        if x.is_zero:
            return Iv(B.NINF_BF)
        if f == 'log':
            return _log_point(x, p)
        if f == 'log2':
            if x.man == 1:
                return _point(BigFloat.from_int(x.exp))
            w = p + GUARD
            return _log_point(x, w).div(ln2_interval(w), w)
        for k in range(23):
            if x.man == 5 ** k and x.exp == k:
                return _point(BigFloat.from_int(k))
        w = p + GUARD
        return _log_point(x, w).div(_ln10(w), w)
    if f in ('sin', 'cos', 'tan'):
        if x.kind == B.INF:
            return Iv(B.NAN_BF)
        s, c = _trig_point(x, p)
        if f == 'sin':
            return s
        if f == 'cos':
            return c
        if x.is_zero:
            return _point(x)
        return s.div(c, p + GUARD)
    if f == 'atan':
        return _atan_point(x, p)
    if f == 'pow':
        if y is None:
            raise TypeError('pow needs an exponent')
        if x.sign or x.kind != B.FINITE or not y.is_finite:
            if x.is_zero and y.kind == B.FINITE and not y.sign:
                return _point(ZERO_BF)
            return Iv(B.NAN_BF)
        return _pow_point(x, y, p)
    raise ValueError(f'unknown function {f!r}')


def bf_elem(f: str, direction: str, q: int, x, y=None, cap: int = B.CAP) -> BigFloat:
    """A q-bit value on the ``direction`` side of ``f(x)`` (faithful bound)."""
    if not B.MIN_PRECISION <= q <= cap:
        raise ValueError(f'precision {q} outside [{B.MIN_PRECISION}, {cap}]')
    iv = enclose(f, bf(x), q, None if y is None else bf(y))
    if direction == DOWN:
        return B.round_to(iv.lo, q, DOWN)
    if direction == UP:
        return B.round_to(iv.hi, q, UP)
    raise ValueError(f'unknown direction {direction!r}')


def half_pi_multiples(lo: BigFloat, hi: BigFloat, p: int) -> tuple[int, int]:
    """Integers n with lo <= n*pi/2 <= hi, as an inclusive range (may be empty).

    Raises :class:`Undetermined` if ``p`` bits cannot place an endpoint.
    """
    return _ceil_div_half_pi(lo, p), _floor_div_half_pi(hi, p)


def _quotient_bounds(x: BigFloat, p: int):
    bits = p + max(0, x.top) + 8
    pi = pi_interval(bits)
    xf = x.to_fraction() * 2
    a = xf / pi.hi.to_fraction()
    b = xf / pi.lo.to_fraction()
    return (a, b) if a <= b else (b, a)


def _floor_div_half_pi(x: BigFloat, p: int) -> int:
    if x.is_zero:
        return 0
    a, b = _quotient_bounds(x, p)
    fa = a.numerator // a.denominator
    fb = b.numerator // b.denominator
    if fa != fb:
        raise Undetermined('endpoint too close to a multiple of pi/2')
    return fa


def _ceil_div_half_pi(x: BigFloat, p: int) -> int:
    if x.is_zero:
        return 0
    return -_floor_div_half_pi(-x, p)
