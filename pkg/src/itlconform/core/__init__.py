"""Reference set-based interval engine over Binary64."""
from .interval import (EMPTY, ENTIRE, Interval, UndefinedOperation, make_interval,
                       nums_to_interval, point, intersection, convex_hull, inf, sup,
                       mid, rad, wid, mag, mig, is_empty, is_entire, equal, subset,
                       interior, disjoint, is_member)
from .arith import neg, add, sub, mul, div, recip, sqr, sqrt, fma
from .elementary import (exp, log, log2, log10, sin, cos, tan, atan, pow,
                         validate_host_libm, ensure_validated)
from .text import (text_to_interval, text_to_interval_signalled, interval_to_text,
                   parse_number)

INTERVAL_FUNCS = {
    'neg': neg, 'add': add, 'sub': sub, 'mul': mul, 'div': div, 'recip': recip,
    'sqr': sqr, 'sqrt': sqrt, 'fma': fma,
    'exp': exp, 'log': log, 'log2': log2, 'log10': log10, 'sin': sin, 'cos': cos,
    'tan': tan, 'atan': atan, 'pow': pow,
    'intersection': intersection, 'convexHull': convex_hull,
}
NUMERIC_FUNCS = {'inf': inf, 'sup': sup, 'mid': mid, 'rad': rad, 'wid': wid,
                 'mag': mag, 'mig': mig}
BOOL_FUNCS = {'isEmpty': is_empty, 'isEntire': is_entire, 'equal': equal,
              'subset': subset, 'interior': interior, 'disjoint': disjoint,
              'isMember': is_member}

__all__ = ['EMPTY', 'ENTIRE', 'Interval', 'UndefinedOperation', 'make_interval',
           'nums_to_interval', 'point', 'text_to_interval', 'text_to_interval_signalled',
           'interval_to_text', 'parse_number', 'validate_host_libm', 'ensure_validated',
           'INTERVAL_FUNCS', 'NUMERIC_FUNCS', 'BOOL_FUNCS',
           'neg', 'add', 'sub', 'mul', 'div', 'recip', 'sqr', 'sqrt', 'fma',
           'exp', 'log', 'log2', 'log10', 'sin', 'cos', 'tan', 'atan', 'pow',
           'intersection', 'convex_hull', 'inf', 'sup', 'mid', 'rad', 'wid', 'mag', 'mig',
           'is_empty', 'is_entire', 'equal', 'subset', 'interior', 'disjoint', 'is_member']
