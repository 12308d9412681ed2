"""Arbitrary-precision binary floating point with directed rounding."""
from __future__ import annotations

import math
from fractions import Fraction

from ..fpkernel import MAXREAL, MINSUB

CAP = 4096
MIN_PRECISION = 53

FINITE, ZERO, INF, NAN = 'finite', 'zero', 'inf', 'nan'
DOWN, UP, NEAREST = 'down', 'up', 'nearest'


class BigFloat:
    """``(-1)**sign * man * 2**exp`` with ``man`` odd, or a special value.

    Instances are immutable.  The exponent is an unbounded Python int; the
    working precision is whatever the producing operation rounded to.
    """

    __slots__ = ('sign', 'man', 'exp', 'kind')

    def __init__(self, sign: int, man: int, exp: int, kind: str = FINITE):
        if kind == FINITE:
            if man <= 0:
                raise ValueError('finite BigFloat needs a positive mantissa')
            tz = (man & -man).bit_length() - 1
            man >>= tz
            exp += tz
        self.sign = sign
        self.man = man
        self.exp = exp
        self.kind = kind

    # construction ----------------------------------------------------------

    @classmethod
    def from_float(cls, x: float) -> 'BigFloat':
        if x != x:
            return NAN_BF
        neg = math.copysign(1.0, x) < 0
        if math.isinf(x):
            return NINF_BF if neg else INF_BF
        if x == 0.0:
            return NZERO_BF if neg else ZERO_BF
        m, e = math.frexp(abs(x))
        return cls(int(neg), int(math.ldexp(m, 53)), e - 53)

    @classmethod
    def from_int(cls, n: int) -> 'BigFloat':
        if n == 0:
            return ZERO_BF
        return cls(int(n < 0), abs(n), 0)

    @classmethod
    def pow2(cls, k: int, negative: bool = False) -> 'BigFloat':
        return cls(int(negative), 1, k)

    @classmethod
    def from_fraction(cls, x: Fraction) -> 'BigFloat':
        """Exact conversion; only dyadic rationals are accepted."""
        den = x.denominator
        if den & (den - 1):
            raise ValueError(f'{x} is not a dyadic rational')
        if x == 0:
            return ZERO_BF
        return cls(int(x < 0), abs(x.numerator), -(den.bit_length() - 1))

    # classification --------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind in (FINITE, ZERO)

    @property
    def is_zero(self) -> bool:
        return self.kind == ZERO

    @property
    def is_nan(self) -> bool:
        return self.kind == NAN

    @property
    def is_inf(self) -> bool:
        return self.kind == INF

    @property
    def negative(self) -> bool:
        return bool(self.sign)

    @property
    def precision(self) -> int:
        return self.man.bit_length() if self.kind == FINITE else 0

    @property
    def top(self) -> int:
        """Exponent of the leading bit: ``2**top <= |x| < 2**(top+1)``."""
        return self.exp + self.man.bit_length() - 1

    def is_integer(self) -> bool:
        return self.kind == ZERO or (self.kind == FINITE and self.exp >= 0)

    # conversions -----------------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.kind == ZERO:
            return Fraction(0)
        if self.kind != FINITE:
            raise ValueError(f'cannot convert {self!r} to Fraction')
        v = Fraction(self.man << self.exp) if self.exp >= 0 else Fraction(self.man, 1 << -self.exp)
        return -v if self.sign else v

    def to_int(self) -> int:
        """Exact integer value (caller checks ``is_integer``)."""
        if self.kind == ZERO:
            return 0
        v = self.man << self.exp
        return -v if self.sign else v

    def approx(self) -> float:
        """Nearest float, saturating instead of raising on overflow."""
        return self.round_f64(NEAREST)

    def round_f64(self, direction: str) -> float:
        """Round to Binary64 ('down', 'up' or 'nearest'), with subnormals."""
        if self.kind == NAN:
            return math.nan
        if self.kind == INF:
            return -math.inf if self.sign else math.inf
        if self.kind == ZERO:
            return -0.0 if self.sign else 0.0
        away = _away(self.sign, direction)
        top = self.top
        prec = 53 if top >= -1022 else top + 1075
        if prec <= 0:
            # |x| < 2**-1074
            if away is None:
                bump = top == -1075 and self.man > 1
            else:
                bump = away
            mag = MINSUB if bump else 0.0
        else:
            man, exp = _round_mag(self.man, self.exp, prec, away, False)
            if exp + man.bit_length() - 1 > 1023:
                mag = MAXREAL if away is False else math.inf
            else:
                mag = math.ldexp(float(man), exp)
        return -mag if self.sign else mag

    # comparisons -----------------------------------------------------------

    def compare(self, other: 'BigFloat') -> int:
        if self.kind == NAN or other.kind == NAN:
            raise ValueError('NaN is unordered')
        ia, ib = _inf_rank(self), _inf_rank(other)
        if ia or ib:
            return (ia > ib) - (ia < ib)
        sa, sb = _signum(self), _signum(other)
        if sa != sb:
            return (sa > sb) - (sa < sb)
        if sa == 0:
            return 0
        c = _cmp_mag(self, other)
        return c if sa > 0 else -c

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, BigFloat):
            return NotImplemented
        if self.kind == NAN or other.kind == NAN:
            return False
        return self.compare(other) == 0

    def __hash__(self):
        if self.kind == FINITE:
            return hash((self.sign, self.man, self.exp))
        return hash(self.kind if self.kind != INF else (INF, self.sign))

    def __neg__(self) -> 'BigFloat':
        if self.kind == NAN:
            return self
        out = object.__new__(BigFloat)
        out.sign, out.man, out.exp, out.kind = 1 - self.sign, self.man, self.exp, self.kind
        return out

    def __abs__(self) -> 'BigFloat':
        return -self if self.sign else self

    def __repr__(self):
        if self.kind == FINITE:
            return f"BigFloat({'-' if self.sign else ''}{self.man}*2**{self.exp})"
        return f"BigFloat({'-' if self.sign else ''}{self.kind})"


def _special(kind: str, sign: int = 0) -> BigFloat:
    out = object.__new__(BigFloat)
    out.sign, out.man, out.exp, out.kind = sign, 0, 0, kind
    return out


ZERO_BF = _special(ZERO)
NZERO_BF = _special(ZERO, 1)
INF_BF = _special(INF)
NINF_BF = _special(INF, 1)
NAN_BF = _special(NAN)
ONE_BF = BigFloat(0, 1, 0)


def _inf_rank(x: BigFloat) -> int:
    if x.kind == INF:
        return -1 if x.sign else 1
    return 0


def _signum(x: BigFloat) -> int:
    if x.kind == ZERO:
        return 0
    return -1 if x.sign else 1


def _cmp_mag(a: BigFloat, b: BigFloat) -> int:
    if a.kind == ZERO or b.kind == ZERO:
        za, zb = a.kind == ZERO, b.kind == ZERO
        return (zb and not za) - (za and not zb)
    ta, tb = a.top, b.top
    if ta != tb:
        return 1 if ta > tb else -1
    e = min(a.exp, b.exp)
    ma = a.man << (a.exp - e)
    mb = b.man << (b.exp - e)
    return (ma > mb) - (ma < mb)


def _away(sign: int, direction: str):
    """Magnitude rounding for a signed direction: True=away from zero,
    False=toward zero, None=nearest-even."""
    if direction == NEAREST:
        return None
    if direction == DOWN:
        return bool(sign)
    if direction == UP:
        return not sign
    raise ValueError(f'unknown direction {direction!r}')


def _round_mag(man: int, exp: int, q: int, away, sticky: bool) -> tuple[int, int]:
    """Round the magnitude ``man * 2**exp`` (+ sticky) to ``q`` bits.

    ``sticky`` means the true magnitude is strictly above ``man * 2**exp``
    by less than one unit of ``2**exp``; callers set it only when ``man``
    already carries at least ``q + 2`` bits.
    """
    shift = man.bit_length() - q
    if shift <= 0:
        if sticky and away:
            # unreachable for well-behaved callers; stay on the safe side
            return (man << (1 - shift)) + 1, exp - (1 - shift)
        return man, exp
    kept = man >> shift
    rem = man & ((1 << shift) - 1)
    if away is None:
        half = 1 << (shift - 1)
        if rem > half or (rem == half and (sticky or kept & 1)):
            kept += 1
    elif away and (rem or sticky):
        kept += 1
    return kept, exp + shift


def _make(sign: int, man: int, exp: int) -> BigFloat:
    if man == 0:
        return NZERO_BF if sign else ZERO_BF
    return BigFloat(sign, man, exp)


def round_to(x: BigFloat, q: int | None, direction: str) -> BigFloat:
    if q is None or x.kind != FINITE or x.man.bit_length() <= q:
        return x
    man, exp = _round_mag(x.man, x.exp, q, _away(x.sign, direction), False)
    return BigFloat(x.sign, man, exp)


def _rounded(sign: int, man: int, exp: int, q: int | None, direction: str,
             sticky: bool = False) -> BigFloat:
    if man == 0 and not sticky:
        return _make(sign, 0, 0)
    if q is None:
        if sticky:
            raise ValueError('inexact result requested without a precision')
        return _make(sign, man, exp)
    man, exp = _round_mag(man, exp, q, _away(sign, direction), sticky)
    return _make(sign, man, exp)


# --- arithmetic ------------------------------------------------------------

def _signed_zero_sum(a: BigFloat, b: BigFloat, direction: str) -> BigFloat:
    if a.kind == ZERO and b.kind == ZERO and a.sign == b.sign:
        return a
    return NZERO_BF if direction == DOWN else ZERO_BF


def add(a: BigFloat, b: BigFloat, q: int | None, direction: str) -> BigFloat:
    if a.kind == NAN or b.kind == NAN:
        return NAN_BF
    if a.kind == INF or b.kind == INF:
        if a.kind == INF and b.kind == INF and a.sign != b.sign:
            return NAN_BF
        return a if a.kind == INF else b
    if a.kind == ZERO:
        return round_to(b, q, direction) if b.kind != ZERO else _signed_zero_sum(a, b, direction)
    if b.kind == ZERO:
        return round_to(a, q, direction)
    big, small = (a, b) if _cmp_mag(a, b) >= 0 else (b, a)
    if q is not None:
        floor_pos = min(big.exp, big.top - q) - 2
        if small.top < floor_pos:
            # far below the rounding position: only its sign matters
            small = BigFloat(small.sign, 1, floor_pos)
    e = min(big.exp, small.exp)
    mb = big.man << (big.exp - e)
    ms = small.man << (small.exp - e)
    if big.sign == small.sign:
        return _rounded(big.sign, mb + ms, e, q, direction)
    diff = mb - ms
    if diff == 0:
        return NZERO_BF if direction == DOWN else ZERO_BF
    return _rounded(big.sign, diff, e, q, direction)


def sub(a: BigFloat, b: BigFloat, q: int | None, direction: str) -> BigFloat:
    return add(a, -b, q, direction)


def mul(a: BigFloat, b: BigFloat, q: int | None, direction: str) -> BigFloat:
    if a.kind == NAN or b.kind == NAN:
        return NAN_BF
    sign = a.sign ^ b.sign
    if a.kind == INF or b.kind == INF:
        if a.kind == ZERO or b.kind == ZERO:
            return NAN_BF
        return NINF_BF if sign else INF_BF
    if a.kind == ZERO or b.kind == ZERO:
        return NZERO_BF if sign else ZERO_BF
    return _rounded(sign, a.man * b.man, a.exp + b.exp, q, direction)


def div(a: BigFloat, b: BigFloat, q: int, direction: str) -> BigFloat:
    if a.kind == NAN or b.kind == NAN:
        return NAN_BF
    sign = a.sign ^ b.sign
    if a.kind == INF:
        if b.kind == INF:
            return NAN_BF
        return NINF_BF if sign else INF_BF
    if b.kind == INF:
        return NZERO_BF if sign else ZERO_BF
    if b.kind == ZERO:
        if a.kind == ZERO:
            return NAN_BF
        return NINF_BF if sign else INF_BF
    if a.kind == ZERO:
        return NZERO_BF if sign else ZERO_BF
    shift = max(0, q + 3 + b.man.bit_length() - a.man.bit_length())
    quo, rem = divmod(a.man << shift, b.man)
    return _rounded(sign, quo, a.exp - b.exp - shift, q, direction, bool(rem))


def sqrt(a: BigFloat, q: int, direction: str) -> BigFloat:
    if a.kind == NAN:
        return NAN_BF
    if a.kind == ZERO:
        return a
    if a.sign:
        return NAN_BF
    if a.kind == INF:
        return a
    man, exp = a.man, a.exp
    shift = max(0, 2 * q + 6 - man.bit_length())
    if (exp - shift) % 2:
        shift += 1
    man <<= shift
    exp -= shift
    root = math.isqrt(man)
    return _rounded(0, root, exp // 2, q, direction, root * root != man)


def fma(a: BigFloat, b: BigFloat, c: BigFloat, q: int | None, direction: str) -> BigFloat:
    return add(mul(a, b, None, direction), c, q, direction)


def bf_arith(op: str, direction: str, q: int, *args: BigFloat, cap: int = CAP) -> BigFloat:
    """``op`` on BigFloats, exact before a single directed rounding to ``q`` bits."""
    if not MIN_PRECISION <= q <= cap:
        raise ValueError(f'precision {q} outside [{MIN_PRECISION}, {cap}]')
    if direction not in (DOWN, UP):
        raise ValueError(f'unknown direction {direction!r}')
    if op == 'add':
        return add(*args, q, direction)
    if op == 'sub':
        return sub(*args, q, direction)
    if op == 'mul':
        return mul(*args, q, direction)
    if op == 'div':
        return div(*args, q, direction)
    if op == 'sqrt':
        return sqrt(*args, q, direction)
    if op == 'fma':
        return fma(*args, q, direction)
    raise ValueError(f'unknown operation {op!r}')


def bf(x) -> BigFloat:
    """Coerce a float, int or dyadic Fraction to BigFloat."""
    if isinstance(x, BigFloat):
        return x
    if isinstance(x, float):
        return BigFloat.from_float(x)
    if isinstance(x, int):
        return BigFloat.from_int(x)
    if isinstance(x, Fraction):
        return BigFloat.from_fraction(x)
    raise TypeError(f'cannot convert {type(x).__name__} to BigFloat')
