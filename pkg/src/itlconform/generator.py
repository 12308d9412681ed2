"""Oracle-validated ITL suite generation, inclusion fuzzing and self-validation.

Every expected value written by :func:`generate` comes from the oracle with a
certified tightest enclosure; candidates the oracle cannot certify are
dropped and logged in the provenance sidecar.
"""
from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import core
from .core import EMPTY, ENTIRE, Interval
from .decorations import NAI, Dec, DecoratedInterval, enumerate_dec_cases, local_dec, new_dec
from .fpkernel import (MAXREAL, MINNORM, MINSUB, f64_to_hex, float_key, hex_to_fraction,
                       key_float, next_down, next_up)
from .harness.providers import VOCABULARY, op_class
from .itl import Assertion, Literal, TestCase, TestSuite
from .judge import ERROR, FAIL, PASS, AccuracyMode, Verdict, judge_interval
from .oracle import (ARITY, ELEM_OPS, BigFloat, bool_eval,
                     numeric_eval, tightest_eval)
from .oracle import bigfloat as B
from .oracle.functions import pi_interval

CATEGORIES = ('easy', 'signed-zero', 'infinity', 'nan', 'overflow', 'subnormal',
              'binade', 'trig-reduction', 'io-forms', 'decorations', 'fuzz')
INTERVAL_OPS = tuple(op for op in VOCABULARY if op_class(op) == 'interval')
DEFAULT_SEED = 7
UNDEFINED = 'UndefinedOperation'


@dataclass(frozen=True)
class GenPlan:
    ops: tuple = VOCABULARY
    categories: tuple = CATEGORIES
    count: int = 6
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        bad = [c for c in self.categories if c not in CATEGORIES]
        if bad:
            raise ValueError(f'unknown categories: {", ".join(bad)}')
        if self.count < 1:
            raise ValueError('count must be positive')


@dataclass
class Generated:
    suite: TestSuite
    provenance: list = field(default_factory=list)
    dropped: list = field(default_factory=list)
    inapplicable: list = field(default_factory=list)
    unsupported: list = field(default_factory=list)

    def provenance_text(self, plan: GenPlan) -> str:
        lines = [f'# provenance seed={plan.seed} count={plan.count}',
                 f'# categories {",".join(plan.categories)}']
        lines += self.provenance
        lines += [f'# dropped {d}' for d in self.dropped]
        lines += [f'# inapplicable {d}' for d in self.inapplicable]
        lines += [f'# unsupported {d}' for d in self.unsupported]
        return '\n'.join(lines) + '\n'


# --- literal rendering -------------------------------------------------------

def num_token(x: float) -> str:
    """Short exact decimal when one exists, else canonical hex."""
    if math.isnan(x):
        return 'nan'
    if math.isinf(x):
        return 'infinity' if x > 0 else '-infinity'
    r = repr(x)
    if 'e' not in r and len(r) <= 20 and Fraction(r) == Fraction(x):
        return r
    return f64_to_hex(x)


def interval_lit(x: Interval, dec: Dec | None = None) -> Literal:
    label = dec.label if dec is not None else None
    if dec == Dec.ILL:
        return Literal.interval('nai')
    if x.is_empty:
        return Literal.interval('empty', dec=label)
    if x.lo == -math.inf and x.hi == math.inf:
        return Literal.interval('entire', dec=label)
    return Literal.interval(num_token(x.lo), num_token(x.hi), dec=label)


def value_lit(v) -> Literal:
    if isinstance(v, DecoratedInterval):
        return interval_lit(v.interval, v.dec)
    if isinstance(v, Interval):
        return interval_lit(v)
    if isinstance(v, bool):
        return Literal('boolean', ('true' if v else 'false',))
    if isinstance(v, float):
        return Literal.number(num_token(v))
    if isinstance(v, str):
        return Literal('string', (v,))
    if isinstance(v, Literal):
        return v
    raise TypeError(f'no literal for {type(v).__name__}')


# --- the oracle pass -----------------------------------------------------------

def _oracle_interval(op, args):
    e = tightest_eval(op, *args)
    if not e.certified:
        return None, e.q_final
    return (EMPTY if e.empty else Interval(e.lo + 0.0, e.hi + 0.0)), e.q_final


def oracle_number(text: str, direction: str) -> float:
    """Directed conversion of a decimal or hex token through BigFloat."""
    t = text.strip()
    low = t.lower().lstrip('+-')
    if low in ('inf', 'infinity'):
        return -math.inf if t.startswith('-') else math.inf
    fr = hex_to_fraction(t) if low.startswith('0x') else Fraction(t)
    if fr == 0:
        return 0.0
    num = BigFloat.from_int(fr.numerator)
    den = BigFloat.from_int(fr.denominator)
    return B.div(num, den, 64, direction).round_f64(direction)


def certify(op: str, args):
    """Oracle-derived expected value, or None when uncertifiable.

    Returns ``(value, q_final)``.
    """
    cls = op_class(op)
    if cls == 'interval':
        if any(isinstance(a, DecoratedInterval) for a in args):
            if any(a.is_nai for a in args):
                return NAI, 0
            bare = [a.interval for a in args]
            result, q = _oracle_interval(op, bare)
            if result is None:
                return None, q
            dec = min([local_dec(op, bare, result)] + [a.dec for a in args])
            return DecoratedInterval(result, dec), q
        return _oracle_interval(op, args)
    if cls == 'numeric':
        x = args[0].interval if isinstance(args[0], DecoratedInterval) else args[0]
        return numeric_eval(op, x), 0
    if cls == 'boolean':
        return bool_eval(op, *args), 0
    if op == 'numsToInterval':
        lo, hi = args
        if math.isnan(lo) or math.isnan(hi) or lo > hi or lo == math.inf or hi == -math.inf:
            return EMPTY, 0
        return Interval(lo + 0.0, hi + 0.0), 0
    if op == 'newDec':
        x = args[0]
        if x.is_empty:
            return DecoratedInterval(x, Dec.TRV), 0
        return DecoratedInterval(x, Dec.COM if x.is_bounded else Dec.DAC), 0
    if op == 'intervalToText':
        x = args[0]
        if x.is_empty:
            return '[empty]', 0
        if x.lo == -math.inf and x.hi == math.inf:
            return '[entire]', 0
        ends = ['-infinity' if v == -math.inf else 'infinity' if v == math.inf
                else f64_to_hex(v + 0.0) for v in (x.lo, x.hi)]
        return f'[{ends[0]}, {ends[1]}]', 0
    raise ValueError(f'no oracle for {op}')


# --- candidate sources -------------------------------------------------------------

def _rng(seed: int, *parts) -> random.Random:
    h = hashlib.sha256(':'.join(map(str, (seed,) + parts)).encode()).digest()
    return random.Random(int.from_bytes(h[:8], 'big'))


def _nice(rng, lo=-8, hi=8, denom=4) -> float:
    return rng.randint(lo * denom, hi * denom) / denom


def _nice_interval(rng, positive=False) -> Interval:
    if positive:
        a, b = sorted((_nice(rng, 0, 8) or 0.25, _nice(rng, 0, 8) or 0.5))
        return Interval(max(a, 0.25), max(b, 0.25))
    a, b = sorted((_nice(rng), _nice(rng)))
    return Interval(a, b)


def _bits_between(rng, lo: float, hi: float) -> float:
    return key_float(rng.randint(float_key(lo), float_key(hi)))


def _bits_interval(rng, lo=-MAXREAL, hi=MAXREAL) -> Interval:
    a, b = sorted((_bits_between(rng, lo, hi), _bits_between(rng, lo, hi)))
    return Interval(a + 0.0, b + 0.0)


_POSITIVE_OPS = ('sqrt', 'log', 'log2', 'log10', 'pow')
_PARTNER = (Interval(1.0, 2.0), Interval(-3.0, 0.5), Interval(0.5, 0.5))


def _with_partners(op, bases, rng=None):
    """Complete unary bases to the op's arity with fixed partners."""
    n = ARITY[op]
    out = []
    for i, x in enumerate(bases):
        if n == 1:
            out.append((x,))
            continue
        p = _PARTNER[i % len(_PARTNER)]
        if op == 'pow':
            out.append((x, p))
            out.append((Interval(2.0, 3.0), x))
        elif n == 2:
            out.append((x, p))
            if i % 2:
                out.append((p, x))
        else:
            out.append((x, p, _PARTNER[(i + 1) % len(_PARTNER)]))
    return out


def _signed_zero_variants(x: Interval):
    """Token variants with every zero endpoint written as 0.0 and -0.0."""
    ends = [num_token(x.lo), num_token(x.hi)]
    options = [['0.0', '-0.0'] if v == 0 else [t] for v, t in zip((x.lo, x.hi), ends)]
    return [Literal.interval(a, b) for a in options[0] for b in options[1]]


SAMPLE_CANON = {
    'add': [
        ((Literal.interval('-1.0', '1.0'), Literal.interval('empty')), Literal.interval('empty')),
        ((Literal.interval('1.0', '2.0'), Literal.interval('3.0', 'infinity')),
         Literal.interval('4.0', 'infinity')),
        ((Literal.interval('1.0', 'infinity'), Literal.interval('-infinity', '4.0')),
         Literal.interval('entire')),
        ((Literal.interval('0X1.FFFFFFFFFFFFP+0'), Literal.interval('0X1.999999999999AP-4')),
         Literal.interval('0X1.0CCCCCCCCCCC4P+1', '0X1.0CCCCCCCCCCC5P+1')),
    ],
    'div': [
        ((Literal.interval('empty'), Literal.interval('empty')), Literal.interval('empty')),
        ((Literal.interval('-30.0', '15.0'), Literal.interval('entire')), Literal.interval('entire')),
    ],
}


def _interval_sources(category, op, rng, count):
    """Input tuples (values or literals) for an interval operation."""
    positive = op in _POSITIVE_OPS
    if category == 'easy':
        bases = [_nice_interval(rng, positive) for _ in range(count)]
        return _with_partners(op, bases)
    if category == 'signed-zero':
        bases = [Interval(0.0, 0.0), Interval(0.0, 1.5), Interval(-2.0, 0.0),
                 Interval(0.0, math.inf), Interval(-math.inf, 0.0)]
        out = []
        for args in _with_partners(op, bases):
            variants = [_signed_zero_variants(a) if a.lo == 0 or a.hi == 0 else [interval_lit(a)]
                        for a in args]
            for combo in _product(variants):
                out.append(combo)
        return out
    if category == 'infinity':
        bases = [Interval(1.0, math.inf), Interval(-math.inf, -1.0), ENTIRE,
                 Interval(-math.inf, 0.5), Interval(MAXREAL, math.inf),
                 Interval(-math.inf, -MAXREAL)]
        return _with_partners(op, bases)
    if category == 'overflow':
        return _OVERFLOW.get(op)
    if category == 'subnormal':
        return _subnormal_sources(op, rng, count)
    if category == 'binade':
        bases = []
        for _ in range(count):
            k = rng.randint(-1020, 1020) if op not in ('exp',) else rng.randint(-10, 9)
            p = math.ldexp(1.0, k)
            bases.append(rng.choice([Interval(next_down(p), next_up(p)), Interval(p, next_up(p)),
                                     Interval(next_down(p), p), Interval(-next_up(p), -next_down(p))]))
        return _with_partners(op, bases)
    if category == 'trig-reduction':
        if op not in ('sin', 'cos', 'tan'):
            return None
        return [(x,) for x in _trig_points(rng, count)]
    if category == 'fuzz':
        out = []
        for _ in range(count):
            if op in ('exp',):
                args = [_bits_interval(rng, -800.0, 800.0)]
            elif op in ('sin', 'cos', 'tan'):
                args = [_bits_interval(rng, -1e6, 1e6)]
            else:
                args = [_bits_interval(rng) for _ in range(ARITY[op])]
            if op == 'pow':
                args[1] = _bits_interval(rng, -64.0, 64.0)
            out.append(tuple(args))
        return out
    return None


def _product(lists):
    if not lists:
        return [()]
    rest = _product(lists[1:])
    return [(x,) + r for x in lists[0] for r in rest]


_M = MAXREAL
_OVERFLOW = {
    'add': [(Interval(_M, _M), Interval(_M, _M)), (Interval(-_M, _M), Interval(-_M, _M)),
            (Interval(1e308, 1.5e308), Interval(1e308, 1.5e308))],
    'sub': [(Interval(-_M, -_M), Interval(_M, _M)), (Interval(1e308, 1.5e308), Interval(-1.5e308, -1e308))],
    'mul': [(Interval(0.0, _M), Interval(0.0, _M)), (Interval(0.75 * _M, _M), Interval(0.75 * _M, _M)),
            (Interval(-_M, _M), Interval(2.0, 2.0)), (Interval(1e200, 1e300), Interval(-1e300, -1e200))],
    'div': [(Interval(_M, _M), Interval(0.5, 0.5)), (Interval(1.0, 2.0), Interval(MINSUB, MINSUB)),
            (Interval(-_M, _M), Interval(0.25, 4.0))],
    'recip': [(Interval(MINSUB, MINSUB),), (Interval(-2 * MINSUB, -MINSUB),)],
    'sqr': [(Interval(1e200, 1e200),), (Interval(-1e300, 2.0),), (Interval(_M, _M),)],
    'fma': [(Interval(_M, _M), Interval(2.0, 2.0), Interval(-_M, -_M)),
            (Interval(0.0, _M), Interval(0.0, _M), Interval(-1.0, 1.0)),
            (Interval(1e300, 1e300), Interval(1e10, 1e10), Interval(0.0, 0.0))],
    'exp': [(Interval(709.0, 710.0),), (Interval(710.0, 800.0),), (Interval(700.0, 709.7),),
            (Interval(0.0, _M),)],
    'pow': [(Interval(10.0, 10.0), Interval(400.0, 400.0)), (Interval(2.0, 2.0), Interval(1024.0, 1024.0)),
            (Interval(0.5, 0.5), Interval(-1100.0, -1000.0)), (Interval(1e300, _M), Interval(2.0, 3.0))],
    'tan': [(Interval(_M, _M),)],
    'sin': [(Interval(_M, _M),), (Interval(-_M, -1e300),)],
    'cos': [(Interval(_M, _M),)],
    'atan': [(Interval(1e300, _M),)],
    'log': [(Interval(1e300, _M),)],
    'log2': [(Interval(1e300, _M),)],
    'log10': [(Interval(1e300, _M),)],
    'sqrt': [(Interval(_M, _M),)],
    'neg': [(Interval(-_M, _M),)],
}


def _subnormal_sources(op, rng, count):
    def sub():
        return key_float(rng.randint(1, float_key(MINNORM) - 1))
    if op == 'exp':
        out = [(Interval(-740.0, -709.0),), (Interval(-745.5, -744.0),), (Interval(-750.0, -746.0),)]
        out += [(Interval(x, x),) for x in (-720.5, -730.25, -744.4)]
        out += [(Interval(sub(), MINNORM),)]
        return out
    bases = [Interval(*sorted((sub(), sub()))) for _ in range(count - 2)]
    bases += [Interval(MINSUB, MINSUB), Interval(-MINNORM, MINSUB)]
    out = _with_partners(op, bases)
    if op == 'mul':
        out.append((Interval(1e-200, 1e-200), Interval(1e-200, 1e-200)))
        out.append((Interval(MINNORM, MINNORM), Interval(0.5, 0.5)))
    if op == 'div':
        out.append((Interval(MINNORM, MINNORM), Interval(3.0, 3.0)))
    if op == 'fma':
        out.append((Interval(1e-200, 1e-200), Interval(1e-200, 1e-200), Interval(MINSUB, MINSUB)))
    return out


def _nearest_multiples(k: int):
    """The three doubles around k*pi/2: below, nearest, above."""
    pi = pi_interval(200)
    v = (pi.lo.to_fraction() + pi.hi.to_fraction()) * k / 4
    near = v.numerator / v.denominator
    return next_down(near), near, next_up(near)


def _trig_points(rng, count):
    ks = [1, 2, 3, 4, 5, 6, 7, 8]
    ks += sorted(rng.randint(9, 10 ** 6) for _ in range(max(count - 4, 1)))
    ks += [10 ** 6]
    out = []
    for k in ks:
        below, near, above = _nearest_multiples(k)
        out += [Interval(below, below), Interval(near, near), Interval(above, above)]
        out.append(Interval(below, above))
    return out


# --- numeric, boolean and constructor sources --------------------------------------

def _numeric_sources(category, op, rng, count):
    if category == 'easy':
        return [(_nice_interval(rng),) for _ in range(count)]
    if category == 'signed-zero':
        out = []
        for x in (Interval(0.0, 0.0), Interval(0.0, 3.0), Interval(-2.5, 0.0)):
            out += [(v,) for v in _signed_zero_variants(x)]
        return out
    if category == 'infinity':
        return [(x,) for x in (ENTIRE, Interval(1.0, math.inf), Interval(-math.inf, -1.0),
                               Interval(-math.inf, 0.0))]
    if category == 'nan':
        return [(EMPTY,)]
    if category == 'overflow':
        return [(x,) for x in (Interval(-_M, _M), Interval(_M / 2, _M), Interval(_M, _M),
                               Interval(-_M, 1.0))]
    if category == 'subnormal':
        return [(Interval(MINSUB, 3 * MINSUB),), (Interval(-MINSUB, MINSUB),),
                (Interval(MINSUB, MINNORM),), (Interval(-5 * MINSUB, -MINSUB),)]
    if category == 'binade':
        out = []
        for _ in range(count):
            p = math.ldexp(1.0, rng.randint(-1000, 1000))
            out.append((Interval(next_down(p), next_up(p)),))
        return out
    if category == 'fuzz':
        return [(_bits_interval(rng),) for _ in range(count)]
    return None


def _bool_sources(category, op, rng, count):
    unary = op in ('isEmpty', 'isEntire')

    def pair(x, y):
        if unary:
            return (x,)
        if op == 'isMember':
            v = x.lo if not x.is_empty and math.isfinite(x.lo) else 1.0
            return (v, y)
        return (x, y)
    if category == 'easy':
        out = []
        for _ in range(count):
            x, y = _nice_interval(rng), _nice_interval(rng)
            out.append(pair(x, y))
        out.append(pair(Interval(1.0, 2.0), Interval(1.0, 3.0)))
        out.append(pair(Interval(1.5, 2.0), Interval(1.0, 3.0)))
        if op == 'isMember':
            out += [(4.0, Interval(4.0, 4.0)), (math.nan, Interval(1.0, 2.0)),
                    (math.inf, ENTIRE)]
        return out
    if category == 'infinity':
        return [pair(ENTIRE, ENTIRE), pair(Interval(1.0, math.inf), ENTIRE),
                pair(Interval(1.0, math.inf), Interval(0.0, math.inf))]
    if category == 'nan':
        return [pair(EMPTY, Interval(1.0, 2.0)), pair(Interval(1.0, 2.0), EMPTY), pair(EMPTY, EMPTY)]
    if category == 'signed-zero':
        out = []
        for lit in _signed_zero_variants(Interval(0.0, 0.0)):
            if unary:
                out.append((lit,))
            elif op == 'isMember':
                out.append((0.0, lit))
                out.append((-0.0, lit))
            else:
                out.append((lit, Interval(0.0, 1.0)))
                out.append((Interval(-1.0, 0.0), lit))
        return out
    if category == 'binade':
        out = []
        for _ in range(count):
            p = math.ldexp(1.0, rng.randint(-1000, 1000))
            out.append(pair(Interval(p, next_up(p)), Interval(next_down(p), next_up(p))))
        return out
    if category == 'fuzz':
        return [pair(_bits_interval(rng), _bits_interval(rng)) for _ in range(count)]
    return None


_IO_NUMBERS = {
    # (lower text, upper text) at three field lengths each
    'decimal': [('1', '2'), ('0.1234567', '0.7654321'), ('0.12345678901234567', '0.98765432109876543')],
    'exponent': [('1e-5', '2e5'), ('1.234567e-100', '7.654321e+100'),
                 ('1.2345678901234567e-300', '9.8765432109876543e300')],
    'hex': [('0x1p-3', '0x1p+3'), ('0x1.abcdefp-7', '0x1.fedcbap+7'),
            ('0x1.0000000000001p+0', '0x1.fffffffffffffp+1023')],
}
_IO_VALID = ['[{lo}, {hi}]', '[ {lo} , {hi} ]', '[{lo}]']
_IO_KEYWORDS = [('[empty]', EMPTY), ('[ EMPTY ]', EMPTY), ('[entire]', ENTIRE),
                ('[Entire]', ENTIRE), ('[-inf, 1]', Interval(-math.inf, 1.0)),
                ('[-infinity, +infinity]', ENTIRE), ('[1, Inf]', Interval(1.0, math.inf)),
                ('[-0.0, 0.0]', Interval(0.0, 0.0)), ('[]', EMPTY)]
_IO_INVALID = ['[4, 3]', '[1,', '1, 2]', '[nan, 1]', '[inf]', '[1, 2, 3]', '[a, b]',
               '[-infinity]', '', '[+infinity, +infinity]', '[0x1.8p]']


def _text_cases():
    """(string, expected interval, signal) for textToInterval."""
    out = []
    for form in _IO_VALID:
        for family, pairs in _IO_NUMBERS.items():
            for lo, hi in pairs:
                s = form.format(lo=lo, hi=hi)
                upper = lo if '{hi}' not in form else hi
                x = Interval(oracle_number(lo, 'down'), oracle_number(upper, 'up'))
                out.append((s, x, None))
    for s, x in _IO_KEYWORDS:
        out.append((s, x, None))
    for s in _IO_INVALID:
        out.append((s, EMPTY, UNDEFINED))
    return out


def _constructor_sources(category, op, rng, count):
    if op == 'textToInterval':
        if category != 'io-forms':
            return None
        return [((s,), x, sig) for s, x, sig in _text_cases()]
    if op == 'intervalToText':
        if category != 'io-forms':
            return None
        xs = [Interval(1.0, 2.0), Interval(-0.1, 0.1), EMPTY, ENTIRE,
              Interval(-math.inf, MINSUB), Interval(1.0 / 3, MAXREAL)]
        return [((x,), None, None) for x in xs]
    if op == 'numsToInterval':
        table = {
            'easy': [(1.0, 2.0), (-3.5, -3.5), (0.25, 8.0)],
            'nan': [(math.nan, 1.0), (1.0, math.nan), (math.nan, math.nan)],
            'infinity': [(-math.inf, math.inf), (1.0, math.inf), (math.inf, math.inf),
                         (-math.inf, -math.inf)],
            'signed-zero': [(-0.0, 0.0), (0.0, -0.0), (-0.0, -0.0)],
            'io-forms': [(2.0, 1.0)],
            'subnormal': [(MINSUB, MINNORM), (-MINSUB, -MINSUB)],
            'overflow': [(-_M, _M)],
        }
        pairs = table.get(category)
        if pairs is None:
            return None
        out = []
        for lo, hi in pairs:
            bad = math.isnan(lo) or math.isnan(hi) or lo > hi or lo == math.inf or hi == -math.inf
            out.append(((lo, hi), None, UNDEFINED if bad else None))
        return out
    if op == 'newDec':
        if category != 'decorations':
            return None
        xs = [Interval(1.0, 2.0), ENTIRE, EMPTY, Interval(-math.inf, 3.0), Interval(0.0, 0.0)]
        return [((x,), None, None) for x in xs]
    return None


# --- generation -----------------------------------------------------------------------

def _arg_value(a):
    if isinstance(a, Literal):
        return a.value()
    return a


def _arg_literal(a):
    return a if isinstance(a, Literal) else value_lit(a)


def _mode_for(op: str) -> str:
    return 'accurate' if op in ELEM_OPS else 'tightest'


def _shard(plan: GenPlan, category: str, op: str):
    """Assertions for one (category, op) pair, or a reason string if none apply."""
    rng = _rng(plan.seed, category, op)
    cls = op_class(op)
    emitted, dropped = [], []
    if cls == 'interval':
        if category == 'decorations':
            if ARITY[op] > 2:
                return 'decoration enumeration covers arity 1 and 2', []
            cases, _ = enumerate_dec_cases(op)
            sources = [c.inputs for c in cases]
        elif category in ('nan', 'io-forms'):
            return f'{category} does not apply to interval operations', []
        else:
            sources = _interval_sources(category, op, rng, plan.count)
        if category == 'easy' and op in SAMPLE_CANON:
            for inputs, expected in SAMPLE_CANON[op]:
                emitted.append((Assertion(op, list(inputs), [expected]), 64))
        if not sources:
            return f'no {category} inputs for {op}', emitted
        for args in sources:
            values = [_arg_value(a) for a in args]
            expected, q = certify(op, values)
            lits = [_arg_literal(a) for a in args]
            if expected is None:
                dropped.append(f'{category}.{op}: {op} {" ".join(map(str, lits))} uncertified at q={q}')
                continue
            emitted.append((Assertion(op, lits, [value_lit(expected)], mode=_mode_for(op)), q))
        return None, (emitted, dropped)
    if cls == 'numeric':
        sources = _numeric_sources(category, op, rng, plan.count)
    elif cls == 'boolean':
        sources = _bool_sources(category, op, rng, plan.count)
    else:
        sources = _constructor_sources(category, op, rng, plan.count)
        if sources is None:
            return f'{category} does not apply to {op}', []
        for args, known, signal in sources:
            values = [_arg_value(a) for a in args]
            expected = known if known is not None else certify(op, values)[0]
            emitted.append((Assertion(op, [_arg_literal(a) for a in args],
                                      [value_lit(expected)], signal=signal), 0))
        return None, (emitted, dropped)
    if not sources:
        return f'{category} does not apply to {op}', []
    for args in sources:
        values = [_arg_value(a) for a in args]
        expected, q = certify(op, values)
        emitted.append((Assertion(op, [_arg_literal(a) for a in args], [value_lit(expected)]), q))
    return None, (emitted, dropped)


def generate(plan: GenPlan = GenPlan(), name: str = 'bundled') -> Generated:
    """Deterministic suite for ``plan``: same plan, same bytes."""
    suite = TestSuite(name=name)
    out = Generated(suite)
    for op in plan.ops:
        if op_class(op) is None:
            out.unsupported.append(f'{op}: not in the operation vocabulary')
    for category in plan.categories:
        for op in plan.ops:
            if op_class(op) is None:
                continue
            reason, result = _shard(plan, category, op)
            if reason is not None and not result:
                out.inapplicable.append(f'{category}.{op}: {reason}')
                continue
            emitted, dropped = result if reason is None else (result, [])
            out.dropped.extend(dropped)
            if not emitted:
                out.inapplicable.append(f'{category}.{op}: every candidate dropped')
                continue
            tc = TestCase(f'{category}.{op}')
            for i, (a, q) in enumerate(emitted):
                tc.assertions.append(a)
                out.provenance.append(f'{name}.{tc.name}#{i} op={op} category={category} '
                                      f'q_final={q} certified=true seed={plan.seed}')
            suite.testcases.append(tc)
    return out


# --- self-validation -------------------------------------------------------------------

@dataclass
class ValidationReport:
    confirmed: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)    # (where, op, given, oracle)
    unverifiable: list = field(default_factory=list)  # (where, op, reason)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def by_class(self, ops) -> dict:
        ops = set(ops)
        return {
            'confirmed': sum(1 for w, op in self.confirmed if op in ops),
            'mismatches': sum(1 for m in self.mismatches if m[1] in ops),
            'unverifiable': sum(1 for u in self.unverifiable if u[1] in ops),
        }

    def render(self) -> str:
        lines = [f'MISMATCH {w} {op} given={g} oracle={o}' for w, op, g, o in self.mismatches]
        lines += [f'UNVERIFIABLE {w} {op} {r}' for w, op, r in self.unverifiable]
        lines.append(f'VALIDATE confirmed={len(self.confirmed)} mismatches={len(self.mismatches)} '
                     f'unverifiable={len(self.unverifiable)}')
        return '\n'.join(lines) + '\n'


def _text_oracle(s: str):
    """Independent reading of an interval literal string."""
    t = s.strip()
    if len(t) < 2 or t[0] != '[' or t[-1] != ']':
        return EMPTY, UNDEFINED
    inner = t[1:-1].strip().lower()
    if inner in ('', 'empty'):
        return EMPTY, None
    if inner == 'entire':
        return ENTIRE, None
    parts = [p.strip() for p in t[1:-1].split(',')]
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2:
        return EMPTY, UNDEFINED
    try:
        lo = oracle_number(parts[0], 'down')
        hi = oracle_number(parts[1], 'up')
    except (ValueError, ZeroDivisionError):
        return EMPTY, UNDEFINED
    if lo > hi or lo == math.inf or hi == -math.inf:
        return EMPTY, UNDEFINED
    if len(t[1:-1].split(',')) == 1 and math.isinf(lo):
        return EMPTY, UNDEFINED
    return Interval(lo + 0.0, hi + 0.0), None


def _same(a, b) -> bool:
    if isinstance(a, float) and isinstance(b, float):
        return (math.isnan(a) and math.isnan(b)) or a == b
    return type(a) is type(b) and a == b


def self_validate(suite: TestSuite) -> ValidationReport:
    """Re-derive every expected value with the oracle."""
    rep = ValidationReport()
    name = suite.name or 'suite'
    for tc, i, a in suite.assertions():
        where = f'{name}.{tc.name}#{i}'
        cls = op_class(a.op)
        if cls is None or len(a.expected) != 1:
            rep.unverifiable.append((where, a.op, 'no oracle for this operation'))
            continue
        try:
            args = [lit.value() for lit in a.inputs]
            given = a.expected[0].value()
        except (ValueError, TypeError) as exc:
            rep.unverifiable.append((where, a.op, f'bad literal: {exc}'))
            continue
        signal = None
        try:
            if a.op == 'textToInterval':
                oracle, signal = _text_oracle(args[0])
            else:
                if cls == 'interval' and isinstance(given, DecoratedInterval):
                    args = [x if isinstance(x, DecoratedInterval) else new_dec(x) for x in args]
                oracle, q = certify(a.op, args)
                if a.op == 'numsToInterval' and oracle.is_empty:
                    signal = UNDEFINED
        except (TypeError, ValueError) as exc:
            rep.unverifiable.append((where, a.op, f'oracle rejected inputs: {exc}'))
            continue
        if oracle is None:
            rep.unverifiable.append((where, a.op, 'oracle could not certify'))
            continue
        if _same(given, oracle) and (a.signal == signal or cls == 'interval' and a.signal is None):
            rep.confirmed.append((where, a.op))
        else:
            from .harness.report import render_value
            rep.mismatches.append((where, a.op, render_value(given) + (f' signal {a.signal}' if a.signal else ''),
                                   render_value(oracle) + (f' signal {signal}' if signal else '')))
    return rep


# --- inclusion fuzzing -------------------------------------------------------------------

def _sample_points(x: Interval, n: int, rng) -> list:
    lo = max(x.lo, -MAXREAL)
    hi = min(x.hi, MAXREAL)
    pts = [lo, hi]
    if lo <= 0 <= hi:
        pts.append(0.0)
    for s in (MINSUB, -MINSUB):
        if lo <= s <= hi:
            pts.append(s)
            break
    else:
        if lo < MINNORM and hi > 0 and lo > 0:
            pts.append(lo)
    k_lo, k_hi = float_key(lo), float_key(hi)
    while len(pts) < n:
        pts.append(key_float(rng.randint(k_lo, k_hi)) + 0.0)
    return pts[:n]


def _host(op: str, p):
    """Round-to-nearest host evaluation, or None outside the domain."""
    try:
        if op == 'add':
            return p[0] + p[1]
        if op == 'sub':
            return p[0] - p[1]
        if op == 'mul':
            return p[0] * p[1]
        if op == 'div':
            return None if p[1] == 0 else p[0] / p[1]
        if op == 'recip':
            return None if p[0] == 0 else 1 / p[0]
        if op == 'sqr':
            return p[0] * p[0]
        if op == 'neg':
            return -p[0]
        if op == 'sqrt':
            return math.sqrt(p[0]) if p[0] >= 0 else None
        if op == 'fma':
            exact = Fraction(p[0]) * Fraction(p[1]) + Fraction(p[2])
            return exact.numerator / exact.denominator
        if op in ('log', 'log2', 'log10'):
            return getattr(math, op)(p[0]) if p[0] > 0 else None
        if op == 'pow':
            if p[0] > 0 or (p[0] == 0 and p[1] > 0):
                return math.pow(p[0], p[1])
            return None
        if op in ('exp', 'sin', 'cos', 'tan', 'atan'):
            return getattr(math, op)(p[0])
    except OverflowError:
        return math.inf if op != 'pow' or p[0] > 1 or p[1] < 0 else 0.0
    return None


def fuzz_check(provider, op: str, *boxes: Interval, n: int = 1000,
               seed: int = DEFAULT_SEED, tau: float = 1.0) -> list:
    """``n`` point verdicts (f(p) in F(box) and F(point box) inside F(box))
    followed by one width verdict against the oracle's tightest enclosure."""
    if n < 1:
        raise ValueError('n must be at least 1')
    if len(boxes) != ARITY[op]:
        raise ValueError(f'{op} takes {ARITY[op]} interval(s), got {len(boxes)}')
    rng = _rng(seed, 'fuzz-check', op, *[f'{b.lo!r},{b.hi!r}' for b in boxes])
    mode = AccuracyMode('valid', tau)
    try:
        whole = provider.interval_op(op, *boxes)
    except Exception as exc:
        return [Verdict(ERROR, f'provider raised on the box: {exc}', None, None, mode)]
    columns = [_sample_points(b, n, rng) if not b.is_empty else [] for b in boxes]
    if any(not c for c in columns):
        return [Verdict(PASS, '', whole, EMPTY, mode)]
    for c in columns[1:]:
        rng.shuffle(c)
    verdicts = []
    for p in zip(*columns):
        where = ' '.join(f64_to_hex(v) for v in p)
        try:
            part = provider.interval_op(op, *[Interval(v, v) for v in p])
        except Exception as exc:
            verdicts.append(Verdict(ERROR, f'provider raised at point {where}: {exc}', None, None, mode))
            continue
        v = _host(op, p) if op not in ('intersection', 'convexHull') else None
        ok_point = True
        if v is not None and not math.isnan(v):
            ok_point = (not whole.is_empty and next_down(v) <= whole.hi and next_up(v) >= whole.lo)
        ok_box = core.subset(part, whole)
        if ok_point and ok_box:
            verdicts.append(Verdict(PASS, '', part, whole, mode))
        else:
            what = 'f(p) outside F(x)' if not ok_point else 'F([p]) not inside F(x)'
            verdicts.append(Verdict(FAIL, f'{what} at {where}', part, whole, mode))
    tight = tightest_eval(op, *boxes)
    if tight.certified:
        expected = EMPTY if tight.empty else Interval(tight.lo + 0.0, tight.hi + 0.0)
        verdicts.append(judge_interval(whole, expected, mode))
    return verdicts


@dataclass(frozen=True)
class FuzzCase:
    op: str
    args: tuple
    zone: str


_ZONE_OPS = {
    'binade': ('add', 'sub', 'mul', 'div', 'recip', 'sqr', 'sqrt', 'fma', 'log', 'log2',
               'log10', 'atan', 'pow', 'neg'),
    'wide': ('add', 'mul', 'div', 'sqr', 'exp', 'sin', 'cos', 'atan', 'fma', 'recip'),
    'subnormal': ('add', 'sub', 'mul', 'div', 'sqrt', 'fma', 'exp', 'log', 'sin', 'atan'),
    'trig': ('sin', 'cos', 'tan'),
    'overflow': ('add', 'mul', 'sqr', 'exp', 'pow', 'fma', 'div'),
}


def _zone_box(zone, op, j, rng):
    if zone == 'binade':
        k = rng.randint(-60, 60)
        return Interval(math.ldexp(1.0, k - 1), math.ldexp(1.0, k + 1))
    if zone == 'wide':
        return _bits_interval(rng, -1e20, 1e20)
    if zone == 'subnormal':
        if op == 'exp':
            return Interval(-746.0, -700.0)
        return Interval(-MINNORM, 3 * MINNORM) if op not in ('log', 'sqrt') else Interval(MINSUB, MINNORM)
    if zone == 'trig':
        k = rng.choice([1, 2, 3, 7, 1001, 99999, 10 ** 6])
        below, _, above = _nearest_multiples(k)
        return Interval(next_down(below), next_up(above)) if rng.random() < 0.5 else Interval(below - 1.0, below)
    if op == 'exp':
        return Interval(700.0, 720.0)
    return Interval(1e300, MAXREAL) if j == 0 else Interval(2.0, 4.0)


def fuzz_corpus(seed: int = DEFAULT_SEED, size: int = 50) -> list:
    """Seeded boxes across binades, subnormals, trig reduction zones near
    k*pi/2 and the overflow threshold, dealt round-robin by zone."""
    rng = _rng(seed, 'fuzz-corpus')
    zones = tuple(_ZONE_OPS)
    out = []
    for i in range(size):
        zone = zones[i % len(zones)]
        ops = _ZONE_OPS[zone]
        op = ops[(i // len(zones)) % len(ops)]
        args = [_zone_box(zone, op, j, rng) for j in range(ARITY[op])]
        if op == 'pow':
            args[1] = Interval(1.0, 2.0) if zone == 'overflow' else Interval(-3.0, 3.0)
        out.append(FuzzCase(op, tuple(args), zone))
    return out
