import math

import pytest

from itlconform.core import Interval
from itlconform.fpkernel import next_down
from itlconform.generator import (CATEGORIES, GenPlan, certify, fuzz_check, fuzz_corpus,
                                  generate, num_token, oracle_number, self_validate)
from itlconform.harness import CrashingProvider, ReferenceProvider
from itlconform.itl import parse, serialize
from itlconform.judge import ERROR, FAIL, PASS

SMALL = GenPlan(ops=('add', 'div', 'sin', 'mid', 'subset', 'textToInterval', 'numsToInterval'),
                count=2)


@pytest.fixture(scope='module')
def small():
    return generate(SMALL, name='small')


def test_same_plan_same_bytes(small):
    again = generate(SMALL, name='small')
    assert serialize(again.suite) == serialize(small.suite)
    assert again.provenance_text(SMALL) == small.provenance_text(SMALL)
    other = generate(GenPlan(ops=SMALL.ops, count=2, seed=8), name='small')
    assert serialize(other.suite) != serialize(small.suite)


def test_sample_canon_leads_easy_cases(small):
    text = serialize(small.suite)
    assert 'add [ 0X1.FFFFFFFFFFFFP+0 ] [ 0X1.999999999999AP-4 ] = [ 0X1.0CCCCCCCCCCC4P+1, 0X1.0CCCCCCCCCCC5P+1 ];' in text
    assert 'div [ -30.0, 15.0 ] [ entire ] = [ entire ];' in text


def test_every_assertion_confirmed(small):
    rep = self_validate(parse(serialize(small.suite), name='small'))
    assert not rep.mismatches and not rep.unverifiable
    assert len(rep.confirmed) == len(small.suite)


def test_names_modes_and_provenance(small):
    names = {tc.name for tc in small.suite.testcases}
    assert 'trig-reduction.sin' in names and 'io-forms.textToInterval' in names
    for tc in small.suite.testcases:
        assert tc.name.split('.')[0] in CATEGORIES
        for a in tc.assertions:
            assert a.mode == ('accurate' if a.op == 'sin' else 'tightest')
    prov = small.provenance_text(SMALL)
    assert '# inapplicable nan.add:' in prov
    assert 'small.easy.add#0 op=add category=easy' in prov


def test_malformed_text_carries_signal(small):
    tc = next(t for t in small.suite.testcases if t.name == 'io-forms.textToInterval')
    bad = [a for a in tc.assertions if a.signal]
    assert len(bad) >= 10
    assert all(a.expected[0].keyword == 'empty' for a in bad)


def test_uncertified_candidates_are_dropped(monkeypatch):
    import itlconform.generator as g
    from itlconform.oracle import Enclosure53
    monkeypatch.setattr(g, 'tightest_eval', lambda op, *xs: Enclosure53(-math.inf, math.inf, False, 4096))
    out = generate(GenPlan(ops=('exp',), categories=('easy',), count=3))
    assert len(out.suite) == 0
    assert len(out.dropped) == 3 and 'uncertified at q=4096' in out.dropped[0]


def test_self_validate_catches_wrong_expectation():
    suite = parse('testcase t { add [1] [2] = [3]; add [1] [2] = [2, 3]; '
                  'textToInterval "[1, 2]" = [1, 2] signal UndefinedOperation; }', name='t')
    rep = self_validate(suite)
    assert len(rep.confirmed) == 1
    assert [m[0] for m in rep.mismatches] == ['t.t#1', 't.t#2']


def test_certify_and_literals():
    assert certify('sqrt', [Interval(2.0, 2.0)])[0].hi == float.fromhex('0x1.6a09e667f3bcdp+0')
    assert certify('numsToInterval', [2.0, 1.0])[0].is_empty
    assert certify('intervalToText', [Interval(1.0, 2.0)])[0] == '[0x1p+0, 0x1p+1]'
    assert num_token(0.25) == '0.25'
    assert num_token(0.1) == '0x1.999999999999ap-4'
    assert num_token(-math.inf) == '-infinity'
    assert oracle_number('0.1', 'down') == next_down(0.1)
    assert oracle_number('0x1p-1074', 'up') == 5e-324


class Shrinking(ReferenceProvider):
    """Unsound: drops the top tenth of every wide result."""
    name = 'shrinking'

    def interval_op(self, op, *args):
        x = super().interval_op(op, *args)
        if x.is_empty or not x.is_bounded or x.lo == x.hi:
            return x
        return Interval(x.lo, x.hi - (x.hi - x.lo) / 10)


def test_fuzz_check_reference_and_broken():
    box = Interval(0.5, 3.0)
    ok = fuzz_check(ReferenceProvider(), 'exp', box, n=200)
    assert len(ok) == 201 and all(v.status == PASS for v in ok)
    bad = fuzz_check(Shrinking(), 'exp', box, n=200)
    assert any(v.status == FAIL for v in bad)
    crash = fuzz_check(CrashingProvider(('mul',)), 'mul', box, box, n=10)
    assert [v.status for v in crash] == [ERROR]
    with pytest.raises(ValueError):
        fuzz_check(ReferenceProvider(), 'fma', box, box, n=5)


def test_fuzz_corpus_shape():
    corpus = fuzz_corpus(7)
    assert len(corpus) == 50
    assert {c.zone for c in corpus} >= {'binade', 'subnormal', 'trig'}
    assert corpus == fuzz_corpus(7)
