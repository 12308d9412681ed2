"""Conformance harness: providers, runner, reports and the CLI."""
from .providers import (ABSENT, BARE, DECORATED, PROVIDERS, VOCABULARY, CrashingProvider,
                        EchoProvider, EntireProvider, LackingProvider, NextOutProvider,
                        Provider, ReferenceProvider, get_provider, op_class)
from .report import render_ndjson, render_report, render_text, totals_line
from .runner import Report, VerdictRecord, evaluate, run_suite, run_suites, suite_digest

__all__ = ['ABSENT', 'BARE', 'DECORATED', 'PROVIDERS', 'VOCABULARY', 'CrashingProvider',
           'EchoProvider', 'EntireProvider', 'LackingProvider', 'NextOutProvider', 'Provider',
           'ReferenceProvider', 'get_provider', 'op_class', 'render_ndjson', 'render_report',
           'render_text', 'totals_line', 'Report', 'VerdictRecord', 'evaluate', 'run_suite',
           'run_suites', 'suite_digest']
