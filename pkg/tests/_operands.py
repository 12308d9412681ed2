"""Seeded operand mixes shared by the kernel and acceptance tests."""
import math
import random

from itlconform.fpkernel import MAXREAL, MINNORM, MINSUB, float_key, key_float, next_up

_TOP = float_key(MAXREAL)


def _any(rng):
    return key_float(rng.randint(-_TOP, _TOP))


def _zone(rng, kind):
    if kind == 0:
        return _any(rng)
    if kind == 1:  # subnormal or tiny normal
        return rng.choice((-1, 1)) * key_float(rng.randint(1, float_key(MINNORM) * 2))
    if kind == 2:  # near overflow
        return rng.choice((-1, 1)) * math.ldexp(1 + rng.random(), rng.randint(1000, 1023))
    if kind == 3:
        return rng.uniform(-4, 4)
    return float(rng.randint(-2 ** 30, 2 ** 30)) * math.ldexp(1.0, rng.randint(-60, 60))


def operand_pairs(n, seed=1788):
    """``n`` pairs mixing uniform bit patterns, subnormals, near-overflow
    values, cancellation partners and signed zeros."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        a = _zone(rng, rng.randrange(5))
        r = rng.random()
        if r < 0.1:
            b = -a if rng.random() < 0.5 else -next_up(a)  # cancellation
        elif r < 0.15:
            b = rng.choice((0.0, -0.0, MINSUB, -MINSUB))
        elif r < 0.2:  # top binade against small factors: quotients near overflow
            a = math.copysign(math.ldexp(1 + rng.random(), 1023), a)
            b = rng.choice((-1, 1)) * rng.uniform(0.5, 4)
        else:
            b = _zone(rng, rng.randrange(5))
        if not math.isfinite(b):
            b = MAXREAL
        out.append((a, b))
    return out
