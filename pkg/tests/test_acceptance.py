"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line; the lines are printed together at the
end of the pytest session (see conftest.py) and also when this file is run
directly with ``python3 tests/test_acceptance.py``.
"""
import math
import re
import struct
import time
from fractions import Fraction

import pytest

from itlconform import data_path
from itlconform.core import Interval
from itlconform.decorations import DecoratedInterval, Dec, dec_op, brute_local_dec, enumerate_dec_cases
from itlconform.fpkernel import MINSUB, dir_op, two_prod, two_sum
from itlconform.generator import fuzz_check, fuzz_corpus, self_validate
from itlconform.harness import (CrashingProvider, EntireProvider, NextOutProvider,
                                ReferenceProvider, render_ndjson, render_text, run_suite)
from itlconform.harness.cli import main as cli
from itlconform.itl import Literal, parse, parse_file
from itlconform.judge import ERROR, PASS
from itlconform.oracle import ARITY, ELEM_OPS, INTERVAL_OPS
from itlconform.oracle import bigfloat as B
from itlconform.oracle.bigfloat import BigFloat

from _operands import operand_pairs

RESULTS = {}
N_PAIRS = 100_000


def record(n, ok, what, detail=''):
    RESULTS[n] = f'criterion {n:2d} {"PASS" if ok else "FAIL"}  {what}' + (f'  [{detail}]' if detail else '')
    assert ok, RESULTS[n]


@pytest.fixture(scope='module')
def bundled():
    return parse_file(data_path('bundled.itl'))


def _interval_expected(a):
    lit = a.expected[0]
    return lit.kind == 'interval'


def test_1_sample_fidelity():
    t0 = time.perf_counter()
    suite = parse(data_path('sample.itl').read_text(), name='sample')
    report = run_suite(ReferenceProvider(), suite)
    elapsed = time.perf_counter() - t0
    shape = [len(tc.assertions) for tc in suite.testcases]
    hexcase = report.records[3]
    exact = hexcase.verdict.observed == Interval(float.fromhex('0X1.0CCCCCCCCCCC4P+1'),
                                                 float.fromhex('0X1.0CCCCCCCCCCC5P+1'))
    passes = sum(r.verdict.passed for r in report.records)
    ok = not suite.diagnostics and shape == [4, 2] and passes == 6 and exact and elapsed < 1.0
    record(1, ok, 'sample suite: 2 testcases, 6/6 pass, hex add bit-exact',
           f'{passes} pass, {elapsed:.3f}s')


def test_2_oracle_certification(bundled):
    t0 = time.perf_counter()
    rep = self_validate(bundled)
    elapsed = time.perf_counter() - t0
    ops = {a.op for _, _, a in bundled.assertions()}
    arith = rep.by_class(ops - set(ELEM_OPS))
    elem = rep.by_class(ELEM_OPS)
    elem_total = sum(elem.values())
    certified = elem['confirmed'] / elem_total if elem_total else 1.0
    ok = (arith['mismatches'] == 0 and arith['unverifiable'] == 0 and elem['mismatches'] == 0
          and certified >= 0.99 and elapsed < 60 and len(bundled) >= 1500)
    record(2, ok, 'validate bundled suite',
           f'{len(bundled)} assertions, arith {arith}, elem certified {certified:.2%}, {elapsed:.1f}s')


def _bits(x):
    return b'nan' if x != x else struct.pack('>d', x)


def test_3_directed_rounding_equivalence():
    pairs = operand_pairs(N_PAIRS)
    bad = {}
    for op in ('add', 'sub', 'mul', 'div', 'sqrt'):
        bad[op] = 0
        for a, b in pairs:
            args = (abs(a),) if op == 'sqrt' else (a, b)
            big = [BigFloat.from_float(x) for x in args]
            for d in ('down', 'up'):
                want = B.bf_arith(op, d, 128, *big).round_f64(d)
                if _bits(dir_op(op, d, *args)) != _bits(want):
                    bad[op] += 1
    record(3, not any(bad.values()), f'dir_op equals oracle RD/RU on {N_PAIRS} pairs per op',
           ' '.join(f'{k}={v}' for k, v in bad.items()))


def _eft_check(eft, a, b, exact_value):
    """(kind, ok): kind is 'exact' when the residual is a double, else the
    degenerate case the pair exercises."""
    hi, lo, exact = eft(a, b)
    if not math.isfinite(hi):
        return 'overflow', math.isnan(lo)
    residual = exact_value - Fraction(hi)
    if Fraction(float(residual)) == residual:
        got = B.add(BigFloat.from_float(hi), BigFloat.from_float(lo), None, 'down')
        return 'exact', exact and got.to_fraction() == exact_value
    # residual below the subnormal grid: flagged inexact, sign kept, error under MINSUB
    return 'underflow', (not exact and (lo > 0) == (residual > 0)
                         and abs(Fraction(lo) - residual) < MINSUB)


def test_4_eft_exactness():
    efts = {'sum': (two_sum, lambda a, b: Fraction(a) + Fraction(b)),
            'prod': (two_prod, lambda a, b: Fraction(a) * Fraction(b))}
    tally = {k: {'exact': 0, 'overflow': 0, 'underflow': 0} for k in efts}
    bad = 0
    seed = 4
    while min(t['exact'] for t in tally.values()) < N_PAIRS:
        for a, b in operand_pairs(N_PAIRS // 4, seed=seed):
            for name, (eft, exact_op) in efts.items():
                if tally[name]['exact'] >= N_PAIRS:
                    continue
                kind, ok = _eft_check(eft, a, b, exact_op(a, b))
                tally[name][kind] += 1
                bad += not ok
        seed += 1
    ok = bad == 0 and tally['prod']['overflow'] and tally['prod']['underflow'] and tally['sum']['overflow']
    record(4, bool(ok), 'EFT hi+lo reproduces exact sum and product',
           f'{tally}, mismatches {bad}')


def test_5_inclusion_fuzzing():
    provider = ReferenceProvider()
    corpus = fuzz_corpus(7, 50)
    violations = checks = 0
    for case in corpus:
        verdicts = fuzz_check(provider, case.op, *case.args, n=1000, seed=7)
        checks += len(verdicts)
        violations += sum(v.status != PASS for v in verdicts)
    zones = sorted({c.zone for c in corpus})
    ok = violations == 0 and len(corpus) == 50 and 'trig' in zones and 'subnormal' in zones
    record(5, ok, 'fuzz_check over 50 seeded boxes x 1000 points',
           f'{checks} checks, {violations} violations, zones {",".join(zones)}')


def test_6_decoration_combinatorics():
    disagreements = 0
    over = []
    for op in INTERVAL_OPS:
        if ARITY[op] > 2:
            continue
        cases, _ = enumerate_dec_cases(op)
        if len(cases) > 5 ** (ARITY[op] + 1):
            over.append(op)
        for c in cases:
            if any(x.is_nai for x in c.inputs):
                disagreements += not c.expected.is_nai
                continue
            bare = [x.interval for x in c.inputs]
            want = min([brute_local_dec(op, bare, c.expected.interval)] + [x.dec for x in c.inputs])
            disagreements += c.expected.dec != want
    sqrt_case = dec_op('sqrt', DecoratedInterval(Interval(-1.0, 4.0), Dec.COM)).dec == Dec.TRV
    ok = disagreements == 0 and not over and sqrt_case
    record(6, ok, 'decoration cases within 25/125 and match brute force',
           f'{disagreements} disagreements, over budget {over or "none"}, sqrt([-1,4]) trv {sqrt_case}')


def test_7_accuracy_discrimination(bundled):
    accurate = run_suite(NextOutProvider(), bundled, mode='accurate')
    acc_fail = [r for r in accurate.records if not r.verdict.passed]
    tight = run_suite(NextOutProvider(), bundled, mode='tightest')
    bounded = [r for r in tight.records if _interval_expected(r.assertion)
               and _nonempty_bounded(r.verdict.expected)]
    tight_pass = [r for r in bounded if r.verdict.passed]
    entire = run_suite(EntireProvider(), bundled, mode='valid', tau=1.0)
    judged = [r for r in entire.records if _interval_expected(r.assertion)
              and r.verdict.status != 'skip-unsupported' and _bounded(r.verdict.expected)]
    entire_pass = [r for r in judged if r.verdict.passed]
    ok = not acc_fail and bounded and not tight_pass and judged and not entire_pass
    record(7, ok, 'nextout passes accurate, fails tightest; Entire fails valid tau=1',
           f'accurate fails {len(acc_fail)}, tightest passes {len(tight_pass)}/{len(bounded)}, '
           f'Entire passes {len(entire_pass)}/{len(judged)}')


def _bare(x):
    return x.interval if isinstance(x, DecoratedInterval) else x


def _bounded(x):
    return isinstance(_bare(x), Interval) and _bare(x).is_bounded


def _nonempty_bounded(x):
    return _bounded(x) and not _bare(x).is_empty


_ZERO = re.compile(r'^[+-]?(0+\.?0*|\.0+|0[xX]0+\.?0*(p[+-]?\d+)?)([eE][+-]?\d+)?$')


def _resign(lit):
    if lit.kind != 'interval':
        return lit
    toks = tuple(('0.0' if t.startswith('-') else '-0.0') if _ZERO.match(t) else t for t in lit.tokens)
    return Literal(lit.kind, toks, lit.dec)


def test_8_signed_zero_indifference(bundled):
    resigned = parse_file(data_path('bundled.itl'))
    touched = 0
    for _, _, a in resigned.assertions():
        new_in = [_resign(x) for x in a.inputs]
        new_ex = [_resign(x) for x in a.expected]
        touched += (new_in != a.inputs) + (new_ex != a.expected)
        a.inputs, a.expected = new_in, new_ex
    before = [r.verdict.status for r in run_suite(ReferenceProvider(), bundled).records]
    after = [r.verdict.status for r in run_suite(ReferenceProvider(), resigned).records]
    changed = sum(x != y for x, y in zip(before, after))
    ok = changed == 0 and touched > 100 and len(before) == len(after)
    record(8, ok, 'resigning zero endpoints changes no verdict',
           f'{touched} literals resigned, {changed} verdicts changed')


def test_9_determinism(tmp_path, capsys):
    outs = []
    for run in ('a', 'b'):
        d = tmp_path / run
        d.mkdir()
        assert cli(['gen', '--seed', '7', '--out', str(d / 'bundled.itl')]) == 0
        assert cli(['run', str(d / 'bundled.itl'), '--format', 'ndjson', '--out', str(d / 'r.ndjson')]) == 0
        outs.append([(d / f).read_bytes() for f in ('bundled.itl', 'bundled.provenance', 'r.ndjson')])
    capsys.readouterr()
    same = outs[0] == outs[1]
    shipped = outs[0][0] == data_path('bundled.itl').read_bytes() and \
        outs[0][1] == data_path('bundled.provenance').read_bytes()
    record(9, same and shipped, 'gen --seed 7 and run --format ndjson are byte-identical',
           f'repeat identical {same}, matches shipped suite {shipped}')


def test_10_crash_containment(bundled):
    report = run_suite(CrashingProvider(('div',)), bundled)
    errors = [r for r in report.records if r.verdict.status == ERROR]
    wrong = [r for r in errors if r.assertion.op != 'div']
    missed = [r for r in report.records if r.assertion.op == 'div' and r.verdict.status != ERROR]
    others_ok = all(r.verdict.passed for r in report.records if r.assertion.op != 'div')
    text = render_text(report)
    nd = render_ndjson(report)
    rendered = text.count('\nERROR ') + text.startswith('ERROR ') == len(errors) and \
        nd.count('\n') == len(report.records) + 1
    ok = errors and not wrong and not missed and others_ok and rendered and report.exit_code == 1
    record(10, ok, 'crashing div yields errors only on div assertions, exit 1',
           f'{len(errors)} errors, {len(wrong)} misplaced, exit {report.exit_code}')


if __name__ == '__main__':
    import sys
    sys.exit(pytest.main([__file__, '-q', '-p', 'no:cacheprovider']))
