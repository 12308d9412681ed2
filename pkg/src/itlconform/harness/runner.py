"""Suite execution: skip logic, evaluation through a provider, judging."""
from __future__ import annotations

import fnmatch
import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..decorations import DecoratedInterval, new_dec
from ..itl import DEFAULT_FLAVOR, Assertion, TestSuite, serialize
from ..judge import (ERROR, SKIP_FLAVOR, SKIP_UNSUPPORTED, STATUSES, AccuracyMode,
                     Verdict, judge, judge_signal)
from .providers import ABSENT, ARITY, DECORATED, SIGNALLING, Provider, op_class

_INPUT_KINDS = {
    'isMember': ('number', 'interval'),
    'numsToInterval': ('number', 'number'),
    'textToInterval': ('string',),
    'intervalToText': ('interval',),
    'newDec': ('interval',),
}


def _expected_kinds(op: str, cls: str):
    if op in _INPUT_KINDS:
        return _INPUT_KINDS[op]
    if cls == 'interval':
        return ('interval',) * ARITY[op]
    if cls == 'numeric':
        return ('interval',)
    if op in ('isEmpty', 'isEntire'):
        return ('interval',)
    return ('interval', 'interval')


@dataclass(frozen=True)
class VerdictRecord:
    suite: str
    testcase: str
    index: int
    assertion: Assertion
    verdict: Verdict

    @property
    def where(self) -> str:
        return f'{self.suite}.{self.testcase}#{self.index}'


@dataclass
class Report:
    provider: str
    records: list = field(default_factory=list)
    suites: list = field(default_factory=list)  # (name, path, sha256)
    wall_time: float = 0.0

    @property
    def totals(self) -> dict:
        counts = {s: 0 for s in STATUSES}
        for r in self.records:
            counts[r.verdict.status] += 1
        return counts

    @property
    def exit_code(self) -> int:
        t = self.totals
        return 1 if t['fail'] or t['error'] else 0


def suite_digest(suite: TestSuite) -> str:
    return hashlib.sha256(serialize(suite).encode('utf-8')).hexdigest()


def _skip(status, reason, mode):
    return Verdict(status, reason, None, None, mode)


def evaluate(provider: Provider, a: Assertion, mode: AccuracyMode) -> Verdict:
    """Run one assertion through ``provider`` and judge it."""
    if a.flavor != DEFAULT_FLAVOR:
        return _skip(SKIP_FLAVOR, f'flavor {a.flavor} not tested', mode)
    cls = op_class(a.op)
    if cls is None:
        return _skip(SKIP_UNSUPPORTED, f'unknown operation {a.op}', mode)
    cap = provider.capability(a.op)
    if cap == ABSENT:
        return _skip(SKIP_UNSUPPORTED, f'{a.op} absent from provider', mode)
    decorated = any(lit.is_decorated for lit in a.inputs + a.expected)
    if decorated and cls == 'interval' and cap != DECORATED:
        return _skip(SKIP_UNSUPPORTED, f'decorated {a.op} absent from provider', mode)
    kinds = _expected_kinds(a.op, cls)
    if len(a.inputs) != len(kinds) or any(l.kind != k for l, k in zip(a.inputs, kinds)):
        return Verdict(ERROR, f'{a.op} expects inputs ({", ".join(kinds)})', None, None, mode)
    if len(a.expected) != 1:
        return Verdict(ERROR, 'exactly one expected literal is supported', None, None, mode)
    try:
        args = [lit.value() for lit in a.inputs]
        expected = a.expected[0].value()
        if decorated and cls == 'interval':
            args = [x if isinstance(x, DecoratedInterval) else new_dec(x) for x in args]
            if not isinstance(expected, DecoratedInterval):
                expected = new_dec(expected)
    except (ValueError, TypeError) as exc:
        return Verdict(ERROR, f'bad literal: {exc}', None, None, mode)
    signals = set()
    try:
        if cls == 'interval':
            computed = (provider.decorated_op if decorated else provider.interval_op)(a.op, *args)
        elif cls == 'numeric':
            computed = provider.numeric_op(a.op, *args)
        elif cls == 'boolean':
            computed = provider.boolean_op(a.op, *args)
        else:
            computed, signals = provider.text_op(a.op, *args)
    except Exception as exc:  # crash containment: one assertion, one error
        return Verdict(ERROR, f'provider raised {type(exc).__name__}: {exc}', None, expected, mode)
    expected_text = a.expected[0].tokens[0] if a.expected[0].kind == 'number' else None
    verdict = judge(computed, expected, mode, expected_text)
    if verdict.passed and (a.signal or signals or a.op in SIGNALLING):
        sig = judge_signal(signals, a.signal, mode)
        if not sig.passed:
            return Verdict(sig.status, sig.reason, computed, expected, mode)
    return verdict


def _matches(pattern, suite_name: str, case: str) -> bool:
    return pattern is None or fnmatch.fnmatchcase(f'{suite_name}.{case}', pattern)


def run_suite(provider: Provider, suite: TestSuite, mode: str | None = None,
              tau: float | None = None, pattern: str | None = None, jobs: int = 1,
              report: Report | None = None) -> Report:
    """Evaluate every assertion in file order; ``mode`` overrides per-assertion levels."""
    started = time.perf_counter()
    report = report or Report(provider.name)
    name = suite.name or 'suite'
    report.suites.append((name, suite.source, suite_digest(suite)))

    def run_case(tc):
        out = []
        if not _matches(pattern, name, tc.name):
            return out
        for i, a in enumerate(tc.assertions):
            m = AccuracyMode(mode or a.mode, tau)
            out.append(VerdictRecord(name, tc.name, i, a, evaluate(provider, a, m)))
        return out

    if jobs > 1 and provider.concurrency_safe:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_case, suite.testcases))
    else:
        chunks = [run_case(tc) for tc in suite.testcases]
    for chunk in chunks:
        report.records.extend(chunk)
    report.wall_time += time.perf_counter() - started
    return report


def run_suites(provider: Provider, suites, **options) -> Report:
    report = Report(provider.name)
    for suite in suites:
        run_suite(provider, suite, report=report, **options)
    return report
