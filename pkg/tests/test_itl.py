
import pytest
from hypothesis import given, strategies as st

from itlconform import data_path
from itlconform.itl import (Assertion, ITLSyntaxError, Literal, parse,
                            parse_file, parse_strict, serialize)
from itlconform.itl import number_value
from itlconform.itl import TestCase as Case, TestSuite as Suite

SAMPLE = data_path('sample.itl').read_text()


def test_sample_parses_cleanly():
    suite = parse(SAMPLE, name='sample')
    assert not suite.diagnostics
    assert [tc.name for tc in suite.testcases] == ['addition.test', 'division.test']
    assert [len(tc.assertions) for tc in suite.testcases] == [4, 2]
    a = suite.testcases[0].assertions[3]
    assert a.inputs[0].tokens == ('0X1.FFFFFFFFFFFFP+0',)


def test_serialize_round_trip_is_stable():
    once = serialize(parse(SAMPLE))
    twice = serialize(parse(once))
    assert once == twice
    assert '/* Testing the addition function */' in once


def test_annotations_and_signals():
    text = '''testcase t {
        sin [1, 2] = [0.5, 1] <accurate>;
        add [1] [2] = [3] <valid, cxsc>;
        textToInterval "[4, 3]" = [empty] signal UndefinedOperation;
        isMember 0.5 [0, 1] = true;
        add [1, 2]_com [1, 2]_dac = [2, 4]_dac;
        add [nai] [1, 2] = [nai];
    }'''
    suite = parse_strict(text)
    sin, add, tti, mem, dec, nai = suite.testcases[0].assertions
    assert sin.mode == 'accurate'
    assert (add.mode, add.flavor) == ('valid', 'cxsc')
    assert tti.signal == 'UndefinedOperation' and tti.inputs[0].kind == 'string'
    assert mem.inputs[0].to_number() == 0.5 and mem.expected[0].to_bool() is True
    assert dec.inputs[1].dec == 'dac' and dec.inputs[1].is_decorated
    assert nai.inputs[0].to_decorated().is_nai
    assert serialize(parse(serialize(suite))) == serialize(suite)


def test_decimal_literals_round_outward():
    x = Literal.interval('0.1').to_interval()
    assert x.lo < 0.1 == x.hi
    suite = parse('testcase t { add [0.1] [1] = [1.1]; }')
    assert any('round outward' in d.message for d in suite.diagnostics if d.severity == 'warning')


@pytest.mark.parametrize('text, line, col, fragment', [
    ('testcase t { add [1,2] [3,4] [4,6]; }', 1, 35, "missing '='"),
    ('testcase t { add [2,1] ; }', 1, 24, "missing '='"),
    ('testcase t {\n  add [1,2] = [1,2];\n', 3, 1, 'unterminated'),
    ('testcase t { add [1,2 = [1]; }', 1, 23, "expected ',' or ']'"),
    ('testcase t { add [1] } testcase u { }', 1, 22, 'expected a literal'),
    ('testcase t { } testcase t { }', 1, 16, 'duplicate'),
    ('testcase t { add [2,1] = [3]; }', 1, 14, 'invalid bounds'),
    ('/* open', 1, 1, 'unterminated block comment'),
])
def test_errors_are_located(text, line, col, fragment):
    suite = parse(text)
    assert suite.errors
    d = suite.errors[0]
    assert (d.line, d.col) == (line, col)
    assert fragment in d.message
    with pytest.raises(ITLSyntaxError):
        parse_strict(text)


def test_recovery_keeps_later_assertions():
    suite = parse('testcase t { add [1] = ; sub [3] [1] = [2]; oops; neg [1] = [-1]; }')
    ops = [a.op for a in suite.testcases[0].assertions]
    assert ops == ['sub', 'neg']
    assert len(suite.errors) == 2


def test_recovery_does_not_swallow_next_testcase():
    suite = parse('testcase t { add [1] } testcase u { neg [1] = [-1]; }')
    assert [tc.name for tc in suite.testcases] == ['t', 'u']
    assert len(suite.testcases[1].assertions) == 1


def test_unsupported_construct_is_skipped_with_warning():
    suite = parse('include "x.itl"; testcase t { neg [1] = [-1]; }')
    assert not suite.errors
    assert any('unsupported' in d.message for d in suite.diagnostics)
    assert len(suite) == 1


def test_parse_file(tmp_path):
    p = tmp_path / 'mini.itl'
    p.write_text('testcase m { neg [1, 2] = [-2, -1]; }')
    suite = parse_file(p)
    assert suite.name == 'mini' and suite.source == str(p)


ident = st.from_regex(r'[a-z][a-z0-9_]{0,8}', fullmatch=True)
_finite = ['1', '-2.5', '0x1.8p+1', '0.0', '-0.0']
lower = st.sampled_from(_finite + ['-infinity'])
upper = st.sampled_from(_finite + ['infinity'])


@given(st.lists(st.tuples(ident, st.lists(st.tuples(lower, upper), min_size=1, max_size=4)),
                min_size=1, max_size=4, unique_by=lambda t: t[0]))
def test_serialize_parse_identity(cases):
    suite = Suite("h")
    for name, pairs in cases:
        tc = Case(name)
        for a, b in pairs:
            a, b = sorted((a, b), key=number_value)
            tc.assertions.append(Assertion('convexHull', [Literal.interval(a, b), Literal.interval(a, b)],
                                           [Literal.interval(a, b)]))
        suite.testcases.append(tc)
    back = parse(serialize(suite), name='h')
    assert not back.errors
    assert back == suite
