import io
import json
import math
import subprocess
import sys

import pytest

from itlconform import data_path
from itlconform.core import EMPTY, ENTIRE, Interval
from itlconform.decorations import Dec, DecoratedInterval
from itlconform.harness import (ABSENT, CrashingProvider, EchoProvider, EntireProvider,
                                LackingProvider, NextOutProvider, ReferenceProvider,
                                get_provider, render_ndjson, render_text, run_suite)
from itlconform.harness.cli import main
from itlconform.harness.wire import decode, encode, handle, serve
from itlconform.itl import parse, parse_file
from itlconform.judge import ERROR, FAIL, PASS, SKIP_FLAVOR, SKIP_UNSUPPORTED

SAMPLE = data_path('sample.itl')


def statuses(report):
    return [r.verdict.status for r in report.records]


def test_reference_passes_sample():
    report = run_suite(ReferenceProvider(), parse_file(SAMPLE))
    assert statuses(report) == [PASS] * 6
    assert report.exit_code == 0


def test_absent_operation_is_skipped_not_called():
    report = run_suite(LackingProvider(), parse_file(SAMPLE))
    assert statuses(report) == [PASS] * 4 + [SKIP_UNSUPPORTED] * 2
    assert report.exit_code == 0


def test_crash_is_contained():
    report = run_suite(CrashingProvider(), parse_file(SAMPLE))
    assert statuses(report) == [PASS] * 4 + [ERROR] * 2
    assert 'RuntimeError' in report.records[-1].verdict.reason
    assert report.exit_code == 1


def test_skips_and_input_errors():
    suite = parse('''testcase s {
        add [1] [2] = [3] <tightest, cxsc>;
        frobnicate [1] = [1];
        add [1] = [1];
        inf [empty] = infinity;
        add [1, 2]_com [1, 2] = [2, 4]_com;
    }''')
    st = statuses(run_suite(ReferenceProvider(), suite))
    assert st == [SKIP_FLAVOR, SKIP_UNSUPPORTED, ERROR, PASS, PASS]
    st = statuses(run_suite(EntireProvider(), suite))
    assert st[3] == SKIP_UNSUPPORTED and st[4] == FAIL


def test_mode_override_and_filter():
    suite = parse_file(SAMPLE)
    report = run_suite(NextOutProvider(), suite, mode='accurate')
    assert statuses(report) == [PASS] * 6
    report = run_suite(NextOutProvider(), suite, pattern='*.division.*')
    assert len(report.records) == 2


def test_jobs_do_not_change_results():
    suite = parse_file(data_path('bundled.itl'))
    one = run_suite(ReferenceProvider(), suite, pattern='*.easy.*')
    four = run_suite(ReferenceProvider(), suite, pattern='*.easy.*', jobs=4)
    assert render_ndjson(one) == render_ndjson(four)


def test_reports():
    report = run_suite(CrashingProvider(), parse_file(SAMPLE))
    text = render_text(report)
    assert text.startswith('ERROR sample.division.test#0 div')
    assert text.rstrip().endswith('TOTAL pass=4 fail=0 skip=0 error=2')
    lines = render_ndjson(report).splitlines()
    assert len(lines) == 7
    first = json.loads(lines[0])
    assert first['status'] == 'pass' and first['testcase'] == 'addition.test'
    assert lines[-1] == 'TOTAL pass=4 fail=0 skip=0 error=2'


@pytest.mark.parametrize('value', [
    Interval(0.1, 2.0), EMPTY, ENTIRE, DecoratedInterval(Interval(1.0, 2.0), Dec.DEF),
    -0.0, math.inf, True, '[1, 2]', [1.5, Interval(-1.0, 1.0)],
])
def test_wire_round_trip(value):
    back = decode(json.loads(json.dumps(encode(value))))
    if isinstance(value, float):
        assert math.copysign(1, back) == math.copysign(1, value) and back == value
    else:
        assert back == value


def test_wire_handle_and_serve():
    p = ReferenceProvider()
    reply = handle(p, {'id': 3, 'method': 'interval',
                       'params': {'op': 'add', 'args': encode([Interval(1.0, 2.0), Interval(1.0, 1.0)])}})
    assert reply == {'id': 3, 'result': encode(Interval(2.0, 3.0))}
    assert 'error' in handle(p, {'id': 4, 'method': 'nope'})
    out = io.StringIO()
    serve(io.StringIO('{"id": 1, "method": "capabilities"}\nnot json\n'), out, p)
    replies = [json.loads(line) for line in out.getvalue().splitlines()]
    assert replies[0]['result']['div'] == 'supported-decorated'
    assert 'bad request' in replies[1]['error']


def test_echo_provider_matches_reference():
    echo = EchoProvider()
    try:
        report = run_suite(echo, parse_file(SAMPLE))
        assert statuses(report) == [PASS] * 6
        assert echo.text_op('textToInterval', '[4, 3]') == (EMPTY, {'UndefinedOperation'})
    finally:
        echo.close()


def test_provider_registry():
    assert get_provider('entire').capability('mid') == ABSENT
    with pytest.raises(KeyError):
        get_provider('nope')


def test_cli_run(capsys, tmp_path):
    assert main(['run', str(SAMPLE)]) == 0
    assert 'TOTAL pass=6' in capsys.readouterr().out
    out = tmp_path / 'r.ndjson'
    assert main(['run', str(SAMPLE), '--provider', 'crashing', '--format', 'ndjson',
                 '--out', str(out)]) == 1
    assert out.read_text().endswith('TOTAL pass=4 fail=0 skip=0 error=2\n')


def test_cli_usage_errors(capsys, tmp_path):
    assert main(['run', str(tmp_path / 'missing.itl')]) == 2
    bad = tmp_path / 'bad.itl'
    bad.write_text('testcase t { add [1] ; }')
    assert main(['run', str(bad)]) == 2
    assert 'bad.itl:1:' in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(['run', str(SAMPLE), '--mode', 'sloppy'])
    assert info.value.code == 2
    assert main(['gen', '--out', str(tmp_path / 'x.itl'), '--categories', 'bogus']) == 2


def test_cli_gen_validate_fuzz(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv('ITLCONFORM_SEED', '11')
    out = tmp_path / 'small.itl'
    assert main(['gen', '--ops', 'add,sqrt,nope', '--categories', 'easy,overflow',
                 '--count', '2', '--out', str(out)]) == 0
    assert 'seed=11' in out.with_suffix('.provenance').read_text()
    assert 'unsupported op nope' in capsys.readouterr().err
    assert main(['validate', str(out)]) == 0
    assert 'mismatches=0' in capsys.readouterr().out
    tampered = tmp_path / 'tampered.itl'
    tampered.write_text('testcase t { add [1] [2] = [4]; }')
    assert main(['validate', str(tampered)]) == 1
    assert main(['fuzz', '--op', 'sin', '--box', '[1, 3]', '--n', '50']) == 0
    assert 'failures=0' in capsys.readouterr().out
    assert main(['fuzz', '--op', 'add', '--box', '[1, 3]']) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, '-m', 'itlconform', 'run', str(SAMPLE)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and 'TOTAL pass=6' in proc.stdout
