"""Arbitrary-precision oracle: BigFloat arithmetic, rigorous elementary
functions and certified tightest Binary64 enclosures."""
from .bigfloat import BigFloat, CAP, bf, bf_arith
from .functions import bf_elem
from .enclose import (Enclosure53, tightest_eval, half_pi_range, numeric_eval,
                      bool_eval, ARITY, ARITH_OPS, ELEM_OPS, SET_OPS, INTERVAL_OPS,
                      NUMERIC_OPS, BOOL_OPS)

__all__ = ['BigFloat', 'CAP', 'bf', 'bf_arith', 'bf_elem', 'Enclosure53',
           'tightest_eval', 'half_pi_range', 'numeric_eval', 'bool_eval', 'ARITY',
           'ARITH_OPS', 'ELEM_OPS', 'SET_OPS', 'INTERVAL_OPS', 'NUMERIC_OPS', 'BOOL_OPS']
