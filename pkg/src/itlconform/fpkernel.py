"""Bit-exact Binary64 utilities.

Error-free transforms, directed-rounded arithmetic emulated on top of the
host's round-to-nearest operations, neighbour functions and C99 hexadecimal
literals.  Nothing here touches the FPU rounding mode, so every function is
pure and safe to call from any thread.
"""
from __future__ import annotations

import math
import re
import struct
from fractions import Fraction
from typing import NamedTuple

__all__ = [
    'MAXREAL', 'MINSUB', 'MINNORM', 'INF', 'NAN',
    'EftPair', 'two_sum', 'two_prod', 'dir_op', 'round_fraction',
    'next_up', 'next_down', 'classify', 'is_subnormal',
    'f64_to_hex', 'hex_to_f64', 'hex_to_fraction', 'HexLiteralError', 'InexactLiteralError',
    'float_key', 'key_float',
]

MAXREAL = float.fromhex('0x1.fffffffffffffp+1023')
MINSUB = float.fromhex('0x1p-1074')
MINNORM = float.fromhex('0x1p-1022')
INF = math.inf
NAN = math.nan

DOWN = 'down'
UP = 'up'

_SPLITTER = 134217729.0  # 2**27 + 1


class EftPair(NamedTuple):
    hi: float
    lo: float
    exact: bool = True


def next_up(x: float) -> float:
    return math.nextafter(x, math.inf)


def next_down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def classify(x: float) -> str:
    if x != x:
        return 'nan'
    if math.isinf(x):
        return 'inf'
    if x == 0.0:
        return 'zero'
    return 'subnormal' if abs(x) < MINNORM else 'normal'


def is_subnormal(x: float) -> bool:
    return classify(x) == 'subnormal'


def float_key(x: float) -> int:
    """Map a non-NaN float to an integer preserving the total order.

    Adjacent floats map to adjacent integers; -0.0 and +0.0 share key 0.
    """
    bits = int.from_bytes(_pack(x), 'big')
    if bits >> 63:
        return -(bits & ~(1 << 63))
    return bits


def key_float(k: int) -> float:
    if k < 0:
        return _unpack(((-k) | (1 << 63)).to_bytes(8, 'big'))
    return _unpack(k.to_bytes(8, 'big'))


def _pack(x: float) -> bytes:
    return struct.pack('>d', x)


def _unpack(b: bytes) -> float:
    return struct.unpack('>d', b)[0]


# --- error-free transforms -------------------------------------------------

def two_sum(a: float, b: float) -> EftPair:
    """Knuth's branch-free TwoSum.

    ``hi + lo == a + b`` exactly whenever ``hi`` is finite.  When ``hi`` is
    infinite or NaN the residual is NaN.
    """
    s = a + b
    if not math.isfinite(s):
        return EftPair(s, math.nan)
    bp = s - a
    ap = s - bp
    lo = (a - ap) + (b - bp)
    return EftPair(s, lo)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _dekker_safe(a: float, b: float) -> bool:
    # no overflow in the splitting, residual above the subnormal grid
    if a == 0.0 or b == 0.0:
        return True
    _, ea = math.frexp(a)
    _, eb = math.frexp(b)
    return -968 <= ea + eb <= 1020 and abs(ea) <= 994 and abs(eb) <= 994


def two_prod(a: float, b: float) -> EftPair:
    """Product with exact residual.

    Uses Dekker's splitting in the range where it is exact.  Outside that
    range (product near overflow or residual below the subnormal grid) the
    residual is obtained exactly in rational arithmetic and rounded to
    nearest; when that rounding is inexact ``exact`` is False and ``lo``
    still carries the correct sign (a sticky one-subnormal residual if it
    would otherwise vanish).
    """
    p = a * b
    if not math.isfinite(p):
        return EftPair(p, math.nan)
    if not (math.isfinite(a) and math.isfinite(b)):
        return EftPair(p, math.nan)
    if a == 0.0 or b == 0.0:
        return EftPair(p, 0.0)
    if _dekker_safe(a, b):
        ah, al = _split(a)
        bh, bl = _split(b)
        err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
        return EftPair(p, err)
    residual = Fraction(a) * Fraction(b) - Fraction(p)
    lo = float(residual)
    if residual and lo == 0.0:
        lo = math.copysign(MINSUB, residual)
    return EftPair(p, lo, Fraction(lo) == residual)


def _expansion_sign(terms) -> int:
    """Sign of the exact sum of floats, via a Shewchuk grow-expansion."""
    expansion: list[float] = []
    for t in terms:
        q = t
        grown = []
        for e in expansion:
            q, r = two_sum(q, e)[:2]
            if r:
                grown.append(r)
        if q:
            grown.append(q)
        expansion = grown
    for e in reversed(expansion):
        if e:
            return 1 if e > 0 else -1
    return 0


# --- directed rounding -----------------------------------------------------

def _overflow(positive: bool, direction: str) -> float:
    if positive:
        return MAXREAL if direction == DOWN else math.inf
    return -math.inf if direction == DOWN else -MAXREAL


def _step(value: float, residual_sign: int, direction: str) -> float:
    if direction == DOWN:
        return next_down(value) if residual_sign < 0 else value
    return next_up(value) if residual_sign > 0 else value


def round_fraction(x: Fraction, direction: str) -> float:
    """Directed rounding of an exact rational to Binary64."""
    try:
        c = float(x)
    except OverflowError:
        return _overflow(x > 0, direction)
    exact = Fraction(c)
    sign = (x > exact) - (x < exact)
    if math.isinf(c):
        return _overflow(c > 0, direction)
    return _step(c, sign, direction)


def _exact_zero(direction: str) -> float:
    return -0.0 if direction == DOWN else 0.0


def _dir_add(a: float, b: float, direction: str) -> float:
    s, lo = two_sum(a, b)[:2]
    if math.isinf(s) and math.isfinite(a) and math.isfinite(b):
        return _overflow(s > 0, direction)
    if not math.isfinite(s):
        return s
    if s == 0.0:
        if a == 0.0 and b == 0.0 and math.copysign(1, a) == math.copysign(1, b):
            return a
        return _exact_zero(direction)
    return _step(s, (lo > 0) - (lo < 0), direction)


def _dir_mul(a: float, b: float, direction: str) -> float:
    if not (math.isfinite(a) and math.isfinite(b)) or a == 0.0 or b == 0.0:
        return a * b
    hi, lo, _ = two_prod(a, b)
    if math.isinf(hi):
        return _overflow(hi > 0, direction)
    return _step(hi, (lo > 0) - (lo < 0), direction)


def _ieee_div(a: float, b: float) -> float:
    if b == 0.0:
        if a != a or a == 0.0:
            return math.nan
        neg = (math.copysign(1, a) < 0) != (math.copysign(1, b) < 0)
        return -math.inf if neg else math.inf
    return a / b


def _dir_div(a: float, b: float, direction: str) -> float:
    if (not (math.isfinite(a) and math.isfinite(b))) or a == 0.0 or b == 0.0:
        return _ieee_div(a, b)
    q = a / b
    if math.isinf(q):
        return _overflow(q > 0, direction)
    ph, pl, exact = two_prod(q, b)
    if exact and math.isfinite(ph) and abs(q) >= MINNORM:
        # back-multiplication: a - q*b = (a - ph) - pl, with a - ph exact
        d = a - ph
        r = (d > pl) - (d < pl)
    else:
        rem = Fraction(a) - Fraction(q) * Fraction(b)
        r = (rem > 0) - (rem < 0)
    sign = r if b > 0 else -r
    return _step(q, sign, direction)


def _dir_sqrt(a: float, direction: str) -> float:
    if a != a or a < 0.0:
        return math.nan
    if a == 0.0 or math.isinf(a):
        return a
    m, e = math.frexp(a)
    # even shift so the root rescales exactly
    shift = e - (e % 2)
    scaled = math.ldexp(m, e - shift)
    s = math.sqrt(scaled)
    ph, pl, _ = two_prod(s, s)
    d = scaled - ph
    sign = (d > pl) - (d < pl)
    return math.ldexp(_step(s, sign, direction), shift // 2)


def _dir_fma(a: float, b: float, c: float, direction: str) -> float:
    if not (math.isfinite(a) and math.isfinite(b)):
        return a * b + c
    if not math.isfinite(c):
        return c
    if a == 0.0 or b == 0.0:
        p = a * b
        if c == 0.0:
            if math.copysign(1, p) == math.copysign(1, c):
                return c
            return _exact_zero(direction)
        return c
    ph, pl, exact = two_prod(a, b)
    big = max(abs(ph), abs(c))
    if exact and math.isfinite(ph) and big < 2.0 ** 1019:
        if _expansion_sign((pl, ph, c)) == 0:
            return _exact_zero(direction)
        s = math.fsum((pl, ph, c))  # correctly rounded to nearest
        return _step(s, _expansion_sign((pl, ph, c, -s)), direction)
    exact_value = Fraction(a) * Fraction(b) + Fraction(c)
    if exact_value == 0:
        return _exact_zero(direction)
    return round_fraction(exact_value, direction)


def dir_op(op: str, direction: str, *args: float) -> float:
    """Directed-rounded ``op`` on Binary64 arguments.

    ``direction`` is ``'down'`` (largest float <= exact) or ``'up'``
    (smallest float >= exact).  NaN inputs and invalid domains give NaN.
    """
    if direction not in (DOWN, UP):
        raise ValueError(f'unknown rounding direction {direction!r}')
    arity = _ARITY.get(op)
    if arity is None:
        raise ValueError(f'unknown operation {op!r}')
    if len(args) != arity:
        raise TypeError(f'{op} takes {arity} arguments, got {len(args)}')
    if any(x != x for x in args):
        return math.nan
    if op == 'add':
        return _dir_add(args[0], args[1], direction)
    if op == 'sub':
        return _dir_add(args[0], -args[1], direction)
    if op == 'mul':
        return _dir_mul(args[0], args[1], direction)
    if op == 'div':
        return _dir_div(args[0], args[1], direction)
    if op == 'sqrt':
        return _dir_sqrt(args[0], direction)
    return _dir_fma(args[0], args[1], args[2], direction)


_ARITY = {'add': 2, 'sub': 2, 'mul': 2, 'div': 2, 'sqrt': 1, 'fma': 3}


# --- hexadecimal literals --------------------------------------------------

class HexLiteralError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f'{message} at position {position}')
        self.position = position


class InexactLiteralError(ValueError):
    pass


def f64_to_hex(x: float) -> str:
    """Canonical hex text: lowercase, minimal digits, signed exponent.

    Nonzero values are always written normalised (``0x1p-1074`` rather than
    the ``0x0.0000000000001p-1022`` form).
    """
    if x != x:
        return 'nan'
    if math.isinf(x):
        return 'inf' if x > 0 else '-inf'
    sign = '-' if math.copysign(1.0, x) < 0 else ''
    if x == 0.0:
        return sign + '0x0p+0'
    m, e = math.frexp(abs(x))
    mant = int(math.ldexp(m, 53))
    exponent = e - 1
    frac = f'{mant - (1 << 52):013x}'.rstrip('0')
    body = '0x1' + ('.' + frac if frac else '')
    return f"{sign}{body}p{'+' if exponent >= 0 else '-'}{abs(exponent)}"


_HEX_DIGITS = '0123456789abcdefABCDEF'


def _scan_hex(s: str) -> tuple[int, int, int]:
    """Return (sign, integer mantissa, binary exponent) of a hex literal."""
    i = 0
    n = len(s)
    sign = 1
    if i < n and s[i] in '+-':
        sign = -1 if s[i] == '-' else 1
        i += 1
    if s[i:i + 2].lower() != '0x':
        raise HexLiteralError("expected '0x' prefix", i)
    i += 2
    mant = 0
    digits = 0
    scale = 0
    while i < n and s[i] in _HEX_DIGITS:
        mant = mant * 16 + int(s[i], 16)
        digits += 1
        i += 1
    if i < n and s[i] == '.':
        i += 1
        while i < n and s[i] in _HEX_DIGITS:
            mant = mant * 16 + int(s[i], 16)
            digits += 1
            scale -= 4
            i += 1
    if not digits:
        raise HexLiteralError('expected hexadecimal digit', i)
    exponent = 0
    if i < n and s[i] in 'pP':
        i += 1
        start = i
        esign = 1
        if i < n and s[i] in '+-':
            esign = -1 if s[i] == '-' else 1
            i += 1
        if i >= n or not s[i].isdigit():
            raise HexLiteralError('expected exponent digits', i)
        while i < n and s[i].isdigit():
            i += 1
        exponent = esign * int(s[start:i].lstrip('+-'))
    if i != n:
        raise HexLiteralError(f'unexpected character {s[i]!r}', i)
    return sign, mant, exponent + scale


def hex_to_f64(s: str) -> float:
    """Parse a C99 hexadecimal float; the value must be exactly representable."""
    sign, mant, exponent = _scan_hex(s)
    if mant == 0:
        return -0.0 if sign < 0 else 0.0
    tz = (mant & -mant).bit_length() - 1
    mant >>= tz
    exponent += tz
    top = exponent + mant.bit_length() - 1
    if mant.bit_length() > 53 or top > 1023 or exponent < -1074:
        raise InexactLiteralError(f'{s} is not exactly representable in binary64')
    return sign * math.ldexp(float(mant), exponent)


def hex_to_fraction(s: str) -> Fraction:
    """Exact rational value of a hex literal, representable or not."""
    sign, mant, exponent = _scan_hex(s)
    return sign * Fraction(mant) * Fraction(2) ** exponent


HEX_PATTERN = re.compile(r'[+-]?0[xX](?:[0-9a-fA-F]+\.?[0-9a-fA-F]*|\.[0-9a-fA-F]+)(?:[pP][+-]?\d+)?')
