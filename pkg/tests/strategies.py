"""Hypothesis strategies for Binary64 intervals."""
import math

from hypothesis import strategies as st

from itlconform.core import EMPTY, ENTIRE, Interval

floats = st.floats(allow_nan=False)
finite = st.floats(allow_nan=False, allow_infinity=False)
specials = st.sampled_from([0.0, -0.0, 1.0, -1.0, 2.0, 0.5, 1e-310, -1e-310,
                            1.7976931348623157e308, -1.7976931348623157e308, math.inf, -math.inf])
endpoint = st.one_of(floats, specials, st.integers(-16, 16).map(float))


@st.composite
def intervals(draw, allow_empty=True, bounded=False):
    if allow_empty and draw(st.integers(0, 30)) == 0:
        return EMPTY
    src = finite if bounded else endpoint
    a, b = sorted((draw(src), draw(src)))
    if a == math.inf or b == -math.inf:
        return ENTIRE if not bounded else Interval(0.0, 0.0)
    return Interval(a + 0.0, b + 0.0)


def positive_intervals():
    return st.tuples(st.floats(0, 1e300), st.floats(0, 1e300)).map(
        lambda p: Interval(min(p), max(p)))
