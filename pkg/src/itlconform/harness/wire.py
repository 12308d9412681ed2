"""JSON-lines wire protocol for out-of-process providers.

Each request is one line ``{"id": n, "method": m, "params": {...}}`` and each
reply one line ``{"id": n, "result": ...}`` or ``{"id": n, "error": "..."}``.
Methods: ``capabilities``, ``interval``, ``decorated``, ``numeric``,
``boolean``, ``text``.  Floats travel as canonical hex strings so that no
bit is lost.  Running this module serves the reference engine, an echo stub
that foreign adaptors can imitate.
"""
from __future__ import annotations

import json
import sys

from ..core import EMPTY, Interval
from ..decorations import Dec, DecoratedInterval
from ..fpkernel import f64_to_hex


def _hex(x: float) -> str:
    return f64_to_hex(x)


def _unhex(s: str) -> float:
    return float.fromhex(s)


def encode(v):
    if isinstance(v, DecoratedInterval):
        return {'decorated': encode(v.interval), 'dec': v.dec.label}
    if isinstance(v, Interval):
        return {'interval': 'empty' if v.is_empty else [_hex(v.lo), _hex(v.hi)]}
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, float):
        return {'float': _hex(v)}
    if isinstance(v, int):
        return {'float': _hex(float(v))}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v) if isinstance(v, (set, frozenset)) else v
        return [encode(x) for x in items]
    if isinstance(v, dict):
        return {k: encode(x) for k, x in v.items()}
    raise TypeError(f'cannot encode {type(v).__name__}')


def decode(v):
    if isinstance(v, list):
        return [decode(x) for x in v]
    if isinstance(v, dict):
        if 'decorated' in v:
            return DecoratedInterval(decode(v['decorated']), Dec.parse(v['dec']))
        if 'interval' in v:
            body = v['interval']
            return EMPTY if body == 'empty' else Interval(_unhex(body[0]), _unhex(body[1]))
        if 'float' in v and len(v) == 1:
            return _unhex(v['float'])
        return {k: decode(x) for k, x in v.items()}
    return v


def handle(provider, request: dict) -> dict:
    method = request.get('method')
    params = {k: decode(x) for k, x in request.get('params', {}).items()}
    try:
        if method == 'capabilities':
            result = provider.capabilities()
        elif method == 'interval':
            result = provider.interval_op(params['op'], *params['args'])
        elif method == 'decorated':
            result = provider.decorated_op(params['op'], *params['args'])
        elif method == 'numeric':
            result = provider.numeric_op(params['op'], *params['args'])
        elif method == 'boolean':
            result = provider.boolean_op(params['op'], *params['args'])
        elif method == 'text':
            value, signals = provider.text_op(params['op'], *params['args'])
            result = [value, sorted(signals)]
        else:
            raise ValueError(f'unknown method {method!r}')
    except Exception as exc:  # reported to the peer, never fatal
        return {'id': request.get('id'), 'error': f'{type(exc).__name__}: {exc}'}
    return {'id': request.get('id'), 'result': encode(result)}


def serve(stdin=None, stdout=None, provider=None) -> int:
    from .providers import ReferenceProvider
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    provider = provider or ReferenceProvider()
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            reply = {'id': None, 'error': f'bad request: {exc}'}
        else:
            reply = handle(provider, request)
        stdout.write(json.dumps(reply, sort_keys=True) + '\n')
        stdout.flush()
    return 0


if __name__ == '__main__':
    sys.exit(serve())
