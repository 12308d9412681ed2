"""Interval literal text: parsing with outward rounding, and printing."""
from __future__ import annotations

import decimal
import math
import re
from fractions import Fraction

from ..fpkernel import HexLiteralError, f64_to_hex, hex_to_fraction, round_fraction
from .interval import EMPTY, ENTIRE, INF, Interval, UndefinedOperation, make_interval

_NUMBER = re.compile(r'''
    [+-]?(?:
        0[xX](?:[0-9a-fA-F]+\.?[0-9a-fA-F]*|\.[0-9a-fA-F]+)(?:[pP][+-]?\d+)?
      | (?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?
      | inf(?:inity)?
    )''', re.X | re.I)


def parse_number(token: str) -> Fraction | float:
    """Exact value of a numeric token: a Fraction, or +-inf."""
    t = token.strip()
    if not _NUMBER.fullmatch(t):
        raise UndefinedOperation(f'malformed number {token!r}')
    body = t.lstrip('+-').lower()
    negative = t.startswith('-')
    if body.startswith('inf'):
        return -INF if negative else INF
    if body.startswith('0x'):
        try:
            return hex_to_fraction(t)
        except HexLiteralError as exc:
            raise UndefinedOperation(str(exc)) from None
    return Fraction(t)


def _bound(value, direction: str) -> float:
    if isinstance(value, float):
        return value
    return round_fraction(value, direction)


def text_to_interval(s: str) -> Interval:
    """Parse ``[l,u]``, ``[p]``, ``[empty]`` or ``[entire]``.

    Inexact numbers round outward, so the result contains the denoted set.
    """
    t = s.strip()
    if len(t) < 2 or t[0] != '[' or t[-1] != ']':
        raise UndefinedOperation(f'malformed interval literal {s!r}')
    inner = t[1:-1].strip()
    key = inner.lower()
    if key == 'empty':
        return EMPTY
    if key == 'entire':
        return ENTIRE
    if key == '':
        return EMPTY
    parts = inner.split(',')
    if len(parts) == 1:
        parts = parts * 2
        if math.isinf(_as_float(parse_number(parts[0]))):
            raise UndefinedOperation(f'infinite point interval {s!r}')
    if len(parts) != 2:
        raise UndefinedOperation(f'malformed interval literal {s!r}')
    lo_v, hi_v = parse_number(parts[0]), parse_number(parts[1])
    if not isinstance(lo_v, float) and not isinstance(hi_v, float) and lo_v > hi_v:
        raise UndefinedOperation(f'reversed bounds in {s!r}')
    return make_interval(_bound(lo_v, 'down'), _bound(hi_v, 'up'))


def _as_float(v) -> float:
    return v if isinstance(v, float) else 0.0


def text_to_interval_signalled(s: str) -> tuple[Interval, set]:
    try:
        return text_to_interval(s), set()
    except UndefinedOperation:
        return EMPTY, {UndefinedOperation.signal}


def _decimal_text(x: float, direction: str, digits: int) -> str:
    ctx = decimal.Context(prec=digits,
                          rounding=decimal.ROUND_FLOOR if direction == 'down' else decimal.ROUND_CEILING)
    d = ctx.plus(decimal.Decimal(x))
    return format(d, 'g') if d != 0 else '0'


def number_to_text(x: float, fmt: str = 'hex', direction: str = 'down', digits: int = 17) -> str:
    if math.isinf(x):
        return 'infinity' if x > 0 else '-infinity'
    if fmt == 'hex':
        return f64_to_hex(x + 0.0)
    if fmt == 'decimal':
        return _decimal_text(x, direction, digits)
    raise ValueError(f'unknown format {fmt!r}')


def interval_to_text(x: Interval, fmt: str = 'hex', digits: int = 17) -> str:
    """Canonical text; decimal output rounds each bound outward to
    ``digits`` significant digits, so parsing it back contains ``x``."""
    if x.is_empty:
        return '[empty]'
    if x.lo == -INF and x.hi == INF:
        return '[entire]'
    lo = number_to_text(x.lo, fmt, 'down', digits)
    hi = number_to_text(x.hi, fmt, 'up', digits)
    return f'[{lo}, {hi}]'
