"""Providers: adaptors between the harness and an interval library.

A provider declares a capability for every operation of the vocabulary and
exposes one entry point per operation class.  Absent operations are skipped
by the runner, never called.
"""
from __future__ import annotations

import json
import subprocess
import sys
import threading

from .. import core
from ..core import ENTIRE, Interval
from ..decorations import NAI, Dec, DecoratedInterval, dec_op, local_dec, new_dec, set_dec
from ..judge import next_out
from ..oracle import ARITY, BOOL_OPS, INTERVAL_OPS, NUMERIC_OPS, tightest_eval

BARE = 'supported-bare'
DECORATED = 'supported-decorated'  # bare and decorated
ABSENT = 'absent'

CONSTRUCTORS = ('numsToInterval', 'textToInterval', 'intervalToText', 'newDec')
VOCABULARY = INTERVAL_OPS + NUMERIC_OPS + BOOL_OPS + CONSTRUCTORS
SIGNALLING = ('numsToInterval', 'textToInterval')


def op_class(op: str) -> str | None:
    if op in INTERVAL_OPS:
        return 'interval'
    if op in NUMERIC_OPS:
        return 'numeric'
    if op in BOOL_OPS:
        return 'boolean'
    if op in CONSTRUCTORS:
        return 'text'
    return None


class Provider:
    """Base adaptor.  Subclasses override the entry points they support."""

    name = 'base'
    concurrency_safe = True

    def capabilities(self) -> dict:
        return {op: ABSENT for op in VOCABULARY}

    def capability(self, op: str) -> str:
        return self.capabilities().get(op, ABSENT)

    def interval_op(self, op: str, *args: Interval) -> Interval:
        raise NotImplementedError(op)

    def decorated_op(self, op: str, *args: DecoratedInterval) -> DecoratedInterval:
        raise NotImplementedError(op)

    def numeric_op(self, op: str, x: Interval) -> float:
        raise NotImplementedError(op)

    def boolean_op(self, op: str, *args) -> bool:
        raise NotImplementedError(op)

    def text_op(self, op: str, *args):
        """Constructors and I/O; returns ``(value, signals)``."""
        raise NotImplementedError(op)

    def close(self):
        pass


class ReferenceProvider(Provider):
    """The built-in engine."""

    name = 'reference'

    def capabilities(self):
        caps = {op: DECORATED for op in INTERVAL_OPS}
        caps.update({op: BARE for op in NUMERIC_OPS + BOOL_OPS + CONSTRUCTORS})
        return caps

    def interval_op(self, op, *args):
        return core.INTERVAL_FUNCS[op](*args)

    def decorated_op(self, op, *args):
        return dec_op(op, *args)

    def numeric_op(self, op, x):
        if isinstance(x, DecoratedInterval):
            x = x.interval
        return core.NUMERIC_FUNCS[op](x)

    def boolean_op(self, op, *args):
        args = [a.interval if isinstance(a, DecoratedInterval) else a for a in args]
        return core.BOOL_FUNCS[op](*args)

    def text_op(self, op, *args):
        if op == 'numsToInterval':
            return core.nums_to_interval(*args)
        if op == 'textToInterval':
            return core.text_to_interval_signalled(*args)
        if op == 'intervalToText':
            return core.interval_to_text(*args), set()
        if op == 'newDec':
            return new_dec(*args), set()
        raise NotImplementedError(op)


class EntireProvider(Provider):
    """Stub answering Entire to every interval question; sound but useless."""

    name = 'entire'

    def capabilities(self):
        caps = {op: ABSENT for op in VOCABULARY}
        caps.update({op: DECORATED for op in INTERVAL_OPS})
        caps.update({op: BARE for op in SIGNALLING})
        return caps

    def interval_op(self, op, *args):
        return ENTIRE

    def decorated_op(self, op, *args):
        return DecoratedInterval(ENTIRE, Dec.TRV)

    def text_op(self, op, *args):
        return ENTIRE, set()


class NextOutProvider(ReferenceProvider):
    """Returns the certified tightest result moved one ulp outward."""

    name = 'nextout'

    def interval_op(self, op, *args):
        return next_out(self._tightest(op, args))

    @staticmethod
    def _tightest(op, args):
        e = tightest_eval(op, *args)
        return core.EMPTY if e.empty else Interval(e.lo + 0.0, e.hi + 0.0)

    def decorated_op(self, op, *args):
        if any(a.is_nai for a in args):
            return NAI
        bare = [a.interval for a in args]
        result = self.interval_op(op, *bare)
        dec = min([local_dec(op, bare, result)] + [a.dec for a in args])
        return set_dec(result, dec)

    def text_op(self, op, *args):
        value, signals = super().text_op(op, *args)
        if isinstance(value, Interval):
            value = next_out(value)
        elif isinstance(value, DecoratedInterval) and not value.is_nai:
            value = set_dec(next_out(value.interval), value.dec)
        return value, signals


class LackingProvider(ReferenceProvider):
    """Reference engine with some operations declared absent."""

    def __init__(self, missing=('div',), name='lacking-div'):
        self.missing = frozenset(missing)
        self.name = name

    def capabilities(self):
        caps = super().capabilities()
        caps.update({op: ABSENT for op in self.missing})
        return caps


class CrashingProvider(ReferenceProvider):
    """Reference engine that raises on chosen operations."""

    name = 'crashing'

    def __init__(self, crash_ops=('div',)):
        self.crash_ops = frozenset(crash_ops)

    def _maybe_crash(self, op):
        if op in self.crash_ops:
            raise RuntimeError(f'provider crashed in {op}')

    def interval_op(self, op, *args):
        self._maybe_crash(op)
        return super().interval_op(op, *args)

    def decorated_op(self, op, *args):
        self._maybe_crash(op)
        return super().decorated_op(op, *args)


class EchoProvider(Provider):
    """Out-of-process provider speaking the JSON-lines wire protocol of
    :mod:`itlconform.harness.wire`; the bundled server echoes the reference
    engine, which makes this a working template for foreign adaptors."""

    name = 'echo'
    concurrency_safe = False

    def __init__(self, command=None):
        self.command = command or [sys.executable, '-m', 'itlconform.harness.wire']
        self._proc = None
        self._lock = threading.Lock()
        self._next_id = 0
        self._caps = None

    def _call(self, method, **params):
        from .wire import decode, encode
        with self._lock:
            if self._proc is None:
                self._proc = subprocess.Popen(self.command, stdin=subprocess.PIPE,
                                              stdout=subprocess.PIPE, text=True)
            self._next_id += 1
            msg = {'id': self._next_id, 'method': method,
                   'params': {k: encode(v) for k, v in params.items()}}
            self._proc.stdin.write(json.dumps(msg, sort_keys=True) + '\n')
            self._proc.stdin.flush()
            line = self._proc.stdout.readline()
        if not line:
            raise RuntimeError('wire peer closed the connection')
        reply = json.loads(line)
        if 'error' in reply:
            raise RuntimeError(reply['error'])
        return decode(reply['result'])

    def capabilities(self):
        if self._caps is None:
            self._caps = self._call('capabilities')
        return self._caps

    def interval_op(self, op, *args):
        return self._call('interval', op=op, args=list(args))

    def decorated_op(self, op, *args):
        return self._call('decorated', op=op, args=list(args))

    def numeric_op(self, op, x):
        return self._call('numeric', op=op, args=[x])

    def boolean_op(self, op, *args):
        return self._call('boolean', op=op, args=list(args))

    def text_op(self, op, *args):
        value, signals = self._call('text', op=op, args=list(args))
        return value, set(signals)

    def close(self):
        if self._proc is not None:
            self._proc.stdin.close()
            self._proc.wait(timeout=10)
            self._proc = None


PROVIDERS = {
    'reference': ReferenceProvider,
    'entire': EntireProvider,
    'nextout': NextOutProvider,
    'lacking-div': LackingProvider,
    'crashing': CrashingProvider,
    'echo': EchoProvider,
}


def get_provider(name: str) -> Provider:
    try:
        return PROVIDERS[name]()
    except KeyError:
        raise KeyError(f'unknown provider {name!r}; choose from {", ".join(PROVIDERS)}') from None


__all__ = ['Provider', 'ReferenceProvider', 'EntireProvider', 'NextOutProvider',
           'LackingProvider', 'CrashingProvider', 'EchoProvider', 'PROVIDERS',
           'get_provider', 'VOCABULARY', 'CONSTRUCTORS', 'SIGNALLING', 'op_class',
           'BARE', 'DECORATED', 'ABSENT', 'ARITY']
