"""Plain-text and ndjson rendering of a Report.  Neither format carries
timing, so identical runs render identical bytes."""
from __future__ import annotations

import json
import math

from ..core import Interval, interval_to_text
from ..decorations import DecoratedInterval
from ..fpkernel import f64_to_hex
from ..judge import FAIL, PASS, SKIP_FLAVOR, SKIP_UNSUPPORTED, ERROR
from .runner import Report

_PREFIX = {FAIL: 'FAIL', ERROR: 'ERROR', SKIP_UNSUPPORTED: 'SKIP', SKIP_FLAVOR: 'SKIP'}


def render_value(v) -> str:
    if v is None:
        return '-'
    if isinstance(v, DecoratedInterval):
        return f'{interval_to_text(v.interval)}_{v.dec.label}'
    if isinstance(v, Interval):
        return interval_to_text(v)
    if isinstance(v, bool):
        return 'true' if v else 'false'
    if isinstance(v, float):
        if math.isinf(v):
            return 'infinity' if v > 0 else '-infinity'
        return f64_to_hex(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return '{' + ','.join(map(str, v)) + '}'
    return str(v)


def _inputs(a) -> str:
    return ' '.join(str(lit) for lit in a.inputs)


def totals_line(report: Report) -> str:
    t = report.totals
    skips = t[SKIP_UNSUPPORTED] + t[SKIP_FLAVOR]
    return f'TOTAL pass={t[PASS]} fail={t[FAIL]} skip={skips} error={t[ERROR]}'


def render_text(report: Report) -> str:
    lines = []
    for r in report.records:
        v = r.verdict
        if v.passed:
            continue
        lines.append(f'{_PREFIX[v.status]} {r.where} {r.assertion.op} {_inputs(r.assertion)} '
                     f'expected={render_value(v.expected)} got={render_value(v.observed)} '
                     f'mode={v.mode} reason={v.reason}')
    t = report.totals
    lines.append(f'provider: {report.provider}')
    for name, path, digest in report.suites:
        lines.append(f'suite: {name} {path or "-"} sha256={digest}')
    lines.append(f'assertions: {len(report.records)}')
    for status, count in t.items():
        lines.append(f'  {status}: {count}')
    lines.append(totals_line(report))
    return '\n'.join(lines) + '\n'


def render_ndjson(report: Report) -> str:
    lines = []
    for r in report.records:
        v = r.verdict
        obj = {
            'suite': r.suite, 'testcase': r.testcase, 'index': r.index,
            'line': r.assertion.line, 'op': r.assertion.op,
            'inputs': [str(lit) for lit in r.assertion.inputs],
            'expected': render_value(v.expected), 'got': render_value(v.observed),
            'mode': str(v.mode), 'status': v.status, 'reason': v.reason,
            'provider': report.provider,
        }
        lines.append(json.dumps(obj, sort_keys=True))
    lines.append(totals_line(report))
    return '\n'.join(lines) + '\n'


def render_report(report: Report, fmt: str = 'text') -> bytes:
    if fmt == 'text':
        return render_text(report).encode('utf-8')
    if fmt == 'ndjson':
        return render_ndjson(report).encode('utf-8')
    raise ValueError(f'unknown report format {fmt!r}')
