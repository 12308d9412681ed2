"""Command line: ``run``, ``gen``, ``validate`` and ``fuzz``.

Exit codes: 0 all clear, 1 failures or errors in the results, 2 usage or
input problems.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from ..itl import MODES, parse_file, serialize
from .providers import PROVIDERS, VOCABULARY, get_provider
from .report import render_report
from .runner import run_suites


def _default_seed() -> int:
    raw = os.environ.get('ITLCONFORM_SEED')
    if raw is None:
        return 7
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f'itlconform: ITLCONFORM_SEED must be an integer, got {raw!r}')


def _load(paths, err):
    suites = []
    for p in paths:
        try:
            suite = parse_file(p)
        except OSError as exc:
            err(f'cannot read {p}: {exc.strerror or exc}')
            return None
        for d in suite.diagnostics:
            print(f'{p}:{d}', file=sys.stderr)
        if suite.errors:
            err(f'{p}: {len(suite.errors)} syntax error(s)')
            return None
        suites.append(suite)
    return suites


def _write(out, data: bytes):
    if out in (None, '-'):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def cmd_run(args, err) -> int:
    suites = _load(args.suites, err)
    if suites is None:
        return 2
    provider = get_provider(args.provider)
    try:
        report = run_suites(provider, suites, mode=args.mode, tau=args.tau,
                            pattern=args.filter, jobs=args.jobs)
    finally:
        provider.close()
    _write(args.out, render_report(report, args.format))
    return report.exit_code


def cmd_gen(args, err) -> int:
    from ..generator import CATEGORIES, GenPlan, generate
    ops = tuple(args.ops.split(',')) if args.ops else VOCABULARY
    cats = tuple(args.categories.split(',')) if args.categories else CATEGORIES
    try:
        plan = GenPlan(ops=ops, categories=cats, count=args.count, seed=args.seed)
    except ValueError as exc:
        err(str(exc))
        return 2
    out = Path(args.out)
    result = generate(plan, name=out.stem)
    for line in result.unsupported:
        print(f'itlconform: unsupported op {line}', file=sys.stderr)
    out.write_text(serialize(result.suite), encoding='utf-8')
    out.with_suffix('.provenance').write_text(result.provenance_text(plan), encoding='utf-8')
    print(f'wrote {len(result.suite)} assertions to {out} '
          f'({len(result.dropped)} dropped, {len(result.inapplicable)} inapplicable)')
    return 0


def cmd_validate(args, err) -> int:
    from ..generator import self_validate
    suites = _load(args.suites, err)
    if suites is None:
        return 2
    bad = False
    for suite in suites:
        rep = self_validate(suite)
        sys.stdout.write(rep.render())
        bad = bad or not rep.ok
    return 1 if bad else 0


def _parse_box(text, err):
    from ..core import text_to_interval, UndefinedOperation
    try:
        return text_to_interval(text)
    except UndefinedOperation as exc:
        err(f'bad interval {text!r}: {exc}')
        return None


def cmd_fuzz(args, err) -> int:
    from ..generator import FuzzCase, fuzz_check, fuzz_corpus
    from ..judge import PASS
    from ..oracle import ARITY
    if args.op is not None:
        if args.op not in ARITY:
            err(f'fuzz needs an interval operation, got {args.op!r}')
            return 2
        boxes = [_parse_box(t, err) for t in args.box]
        if any(b is None for b in boxes):
            return 2
        if len(boxes) != ARITY[args.op]:
            err(f'{args.op} takes {ARITY[args.op]} interval(s), got {len(boxes)}')
            return 2
        cases = [FuzzCase(args.op, tuple(boxes), 'cli')]
    else:
        cases = fuzz_corpus(args.seed)
    provider = get_provider(args.provider)
    failures = 0
    try:
        for c in cases:
            verdicts = fuzz_check(provider, c.op, *c.args, n=args.n, seed=args.seed)
            bad = [v for v in verdicts if v.status != PASS]
            failures += len(bad)
            boxes = ' '.join(str(b) for b in c.args)
            print(f'{"ok" if not bad else "FAIL"} {c.op} {boxes} checks={len(verdicts)} bad={len(bad)}')
            for v in bad[:5]:
                print(f'  {v.status}: {v.reason}')
    finally:
        provider.close()
    print(f'FUZZ cases={len(cases)} failures={failures}')
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog='itlconform', description='IEEE 1788 conformance harness')
    sub = ap.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='run ITL suites against a provider')
    run.add_argument('suites', nargs='+')
    run.add_argument('--provider', default='reference', choices=sorted(PROVIDERS))
    run.add_argument('--mode', choices=MODES, help='override every assertion mode')
    run.add_argument('--tau', type=float, help='width slack for valid mode')
    run.add_argument('--filter', help='glob over suite.testcase names')
    run.add_argument('--format', default='text', choices=('text', 'ndjson'))
    run.add_argument('--out', help='report file (default stdout)')
    run.add_argument('--jobs', type=int, default=1)

    gen = sub.add_parser('gen', help='generate an oracle-checked suite')
    gen.add_argument('--ops', help='comma separated operation names')
    gen.add_argument('--categories', help='comma separated categories')
    gen.add_argument('--count', type=int, default=6, help='candidates per category and op')
    gen.add_argument('--seed', type=int, default=None)
    gen.add_argument('--out', required=True)

    val = sub.add_parser('validate', help='re-derive expected values with the oracle')
    val.add_argument('suites', nargs='+')

    fz = sub.add_parser('fuzz', help='inclusion fuzzing against a provider')
    fz.add_argument('--op', help='single operation; omit for the seeded corpus')
    fz.add_argument('--box', action='append', default=[], help='interval literal, once per input')
    fz.add_argument('--n', type=int, default=1000)
    fz.add_argument('--seed', type=int, default=None)
    fz.add_argument('--provider', default='reference', choices=sorted(PROVIDERS))
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, 'seed', 0) is None:
        args.seed = _default_seed()

    def err(msg):
        print(f'itlconform: {msg}', file=sys.stderr)

    handlers = {'run': cmd_run, 'gen': cmd_gen, 'validate': cmd_validate, 'fuzz': cmd_fuzz}
    return handlers[args.command](args, err)


if __name__ == '__main__':
    sys.exit(main())
