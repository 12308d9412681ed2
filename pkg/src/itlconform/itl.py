"""Interval Test Language: tokenizer, recursive-descent parser, serializer.

A file is a sequence of ``testcase NAME { ... }`` blocks.  Each block holds
assertions of the form::

    OP lit+ = lit+ [signal NAME] [<mode[, flavor]>];

Literals are intervals (``[a, b]``, ``[a]``, ``[empty]``, ``[entire]``,
``[nai]``, each with an optional ``_dec`` suffix), numbers (decimal, C99 hex,
``infinity``, ``nan``), ``true``/``false`` and double-quoted strings.  Token
text is kept verbatim so that serialization never re-rounds a number.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import core
from .core import Interval
from .decorations import NAI, Dec, DecoratedInterval, set_dec
from .fpkernel import HexLiteralError, InexactLiteralError, hex_to_f64, round_fraction

MODES = ('tightest', 'accurate', 'valid')
DEFAULT_FLAVOR = 'set-based'

__all__ = ['Literal', 'Assertion', 'TestCase', 'TestSuite', 'Diagnostic',
           'ITLSyntaxError', 'parse', 'parse_file', 'serialize', 'MODES']


class ITLSyntaxError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__('\n'.join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    col: int
    message: str

    def __str__(self):
        return f'{self.line}:{self.col}: {self.severity}: {self.message}'


# --- literals ---------------------------------------------------------------

_DEC_NUM = re.compile(r'[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?')
_HEX_NUM = re.compile(r'[+-]?0[xX](?:[0-9a-fA-F]+\.?[0-9a-fA-F]*|\.[0-9a-fA-F]+)(?:[pP][+-]?\d+)?')
_INF_NUM = re.compile(r'[+-]?inf(?:inity)?', re.I)
_NAN_NUM = re.compile(r'[+-]?nan', re.I)
INTERVAL_KEYWORDS = ('empty', 'entire', 'nai')
_IDENT = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')


def is_number(text: str) -> bool:
    return any(p.fullmatch(text) for p in (_DEC_NUM, _HEX_NUM, _INF_NUM, _NAN_NUM))


def number_value(text: str, direction: str | None = None) -> float:
    """Value of a number token; decimal text that is not a double needs a
    rounding direction, hex text must be exact."""
    if _INF_NUM.fullmatch(text):
        return -math.inf if text.startswith('-') else math.inf
    if _NAN_NUM.fullmatch(text):
        return math.nan
    if _HEX_NUM.fullmatch(text):
        return hex_to_f64(text)
    fr = Fraction(text)
    if direction is None:
        try:
            v = fr.numerator / fr.denominator
        except OverflowError:
            v = math.inf if fr > 0 else -math.inf
        return -0.0 if text.lstrip().startswith('-') and v == 0 else v
    v = round_fraction(fr, direction)
    return -0.0 if text.startswith('-') and v == 0 else v


def exact_decimal(text: str) -> bool:
    if not _DEC_NUM.fullmatch(text):
        return True
    fr = Fraction(text)
    try:
        return Fraction(fr.numerator / fr.denominator) == fr
    except OverflowError:
        return False


@dataclass(frozen=True)
class Literal:
    """One literal; ``tokens`` holds the verbatim inner texts."""
    kind: str  # interval | number | boolean | string
    tokens: tuple
    dec: str | None = None

    @classmethod
    def interval(cls, *tokens: str, dec: str | None = None) -> 'Literal':
        return cls('interval', tuple(tokens), dec)

    @classmethod
    def number(cls, text: str) -> 'Literal':
        return cls('number', (text,))

    @property
    def is_decorated(self) -> bool:
        return self.kind == 'interval' and (self.dec is not None or self.keyword == 'nai')

    @property
    def keyword(self) -> str | None:
        if self.kind == 'interval' and len(self.tokens) == 1 and self.tokens[0].lower() in INTERVAL_KEYWORDS:
            return self.tokens[0].lower()
        return None

    def to_interval(self) -> Interval:
        if self.kind != 'interval':
            raise TypeError(f'{self.kind} literal is not an interval')
        kw = self.keyword
        if kw in ('empty', 'nai'):
            return core.EMPTY
        if kw == 'entire':
            return core.ENTIRE
        lo_t, hi_t = self.tokens if len(self.tokens) == 2 else self.tokens * 2
        return core.make_interval(number_value(lo_t, 'down'), number_value(hi_t, 'up'))

    def to_decorated(self) -> DecoratedInterval:
        if self.keyword == 'nai':
            return NAI
        x = self.to_interval()
        if self.dec is None:
            from .decorations import new_dec
            return new_dec(x)
        d = set_dec(x, Dec.parse(self.dec))
        if d.is_nai and self.dec != 'ill':
            raise ValueError(f'invalid decoration {self.dec} for {x!r}')
        return d

    def to_number(self) -> float:
        if self.kind != 'number':
            raise TypeError(f'{self.kind} literal is not a number')
        return number_value(self.tokens[0])

    def to_bool(self) -> bool:
        if self.kind != 'boolean':
            raise TypeError(f'{self.kind} literal is not a boolean')
        return self.tokens[0] == 'true'

    def value(self):
        if self.kind == 'interval':
            return self.to_decorated() if self.is_decorated else self.to_interval()
        if self.kind == 'number':
            return self.to_number()
        if self.kind == 'boolean':
            return self.to_bool()
        return self.tokens[0]

    def __str__(self):
        if self.kind == 'interval':
            body = '[ ' + ', '.join(self.tokens) + ' ]'
            return body + (f'_{self.dec}' if self.dec else '')
        if self.kind == 'string':
            return '"' + self.tokens[0].replace('\\', '\\\\').replace('"', '\\"') + '"'
        return self.tokens[0]


@dataclass
class Assertion:
    op: str
    inputs: list
    expected: list
    mode: str = 'tightest'
    flavor: str = DEFAULT_FLAVOR
    signal: str | None = None
    line: int = field(default=0, compare=False)
    comments: list = field(default_factory=list)

    def __str__(self):
        parts = [self.op, *map(str, self.inputs), '=', *map(str, self.expected)]
        if self.signal:
            parts += ['signal', self.signal]
        if self.mode != 'tightest' or self.flavor != DEFAULT_FLAVOR:
            ann = self.mode if self.flavor == DEFAULT_FLAVOR else f'{self.mode}, {self.flavor}'
            parts.append(f'<{ann}>')
        return ' '.join(parts) + ';'


@dataclass
class TestCase:
    name: str
    assertions: list = field(default_factory=list)
    line: int = field(default=0, compare=False)
    comments: list = field(default_factory=list)
    trailing: list = field(default_factory=list)


@dataclass
class TestSuite:
    name: str = ''
    testcases: list = field(default_factory=list)
    source: str = field(default='', compare=False)
    trailing: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list, compare=False)

    @property
    def errors(self):
        return [d for d in self.diagnostics if d.severity == 'error']

    def assertions(self):
        """Yield ``(testcase, index, assertion)`` in file order."""
        for tc in self.testcases:
            for i, a in enumerate(tc.assertions):
                yield tc, i, a

    def __len__(self):
        return sum(len(tc.assertions) for tc in self.testcases)


# --- tokenizer ---------------------------------------------------------------

@dataclass(frozen=True)
class _Tok:
    kind: str  # word punct string dec comment eof
    text: str
    line: int
    col: int


_TOKEN = re.compile(r'''
    (?P<ws>[ \t\r\n]+)
  | (?P<lcomment>//[^\n]*)
  | (?P<bcomment>/\*.*?\*/)
  | (?P<open_comment>/\*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<dec>(?<=\])_[A-Za-z]+)
  | (?P<punct>[{}\[\],=;<>])
  | (?P<word>[^\s\[\]{},=;<>"/]+)
  | (?P<bad>.)
''', re.X | re.S)


def _tokenize(text: str, diags: list):
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        value = m.group()
        col = m.start() - line_start + 1
        if kind == 'open_comment':
            diags.append(Diagnostic('error', line, col, 'unterminated block comment'))
            break
        if kind in ('lcomment', 'bcomment'):
            yield _Tok('comment', value, line, col)
        elif kind == 'string':
            yield _Tok('string', _unescape(value[1:-1]), line, col)
        elif kind == 'bad':
            yield _Tok('bad', value, line, col)
        elif kind != 'ws':
            yield _Tok(kind, value, line, col)
        nl = value.count('\n')
        if nl:
            line += nl
            line_start = m.start() + value.rindex('\n') + 1
    yield _Tok('eof', '', line, len(text) - line_start + 1)


def _unescape(s: str) -> str:
    return re.sub(r'\\(.)', r'\1', s)


# --- parser -------------------------------------------------------------------

class _Error(Exception):
    def __init__(self, tok: _Tok, message: str):
        super().__init__(message)
        self.tok = tok


class _Parser:
    def __init__(self, text: str, source: str):
        self.diags: list = []
        self.toks = list(_tokenize(text, self.diags))
        self.pos = 0
        self.source = source

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self) -> _Tok:
        tok = self.toks[self.pos]
        if tok.kind != 'eof':
            self.pos += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.take()
        if tok.text != text or tok.kind not in ('punct', 'word'):
            raise _Error(tok, f'expected {text!r}, found {_describe(tok)}')
        return tok

    def comments(self) -> list:
        out = []
        while self.peek().kind == 'comment':
            out.append(self.take().text)
        return out

    def error(self, tok: _Tok, message: str, severity: str = 'error'):
        self.diags.append(Diagnostic(severity, tok.line, tok.col, message))

    def suite(self, name: str) -> TestSuite:
        suite = TestSuite(name=name, source=self.source)
        names = set()
        while True:
            pending = self.comments()
            tok = self.peek()
            if tok.kind == 'eof':
                suite.trailing = pending
                break
            if tok.kind == 'word' and tok.text == 'testcase':
                tc = self.testcase()
                if tc is None:
                    continue
                tc.comments = pending
                if tc.name in names:
                    self.error(tok, f'duplicate testcase name {tc.name!r}')
                else:
                    names.add(tc.name)
                    suite.testcases.append(tc)
            else:
                self.error(tok, f'skipped: unsupported construct {_describe(tok)}', 'warning')
                self.skip_construct()
        suite.diagnostics = self.diags
        return suite

    def skip_construct(self):
        depth = 0
        while True:
            tok = self.take()
            if tok.kind == 'eof':
                return
            if tok.text == '{' and tok.kind == 'punct':
                depth += 1
            elif tok.text == '}' and tok.kind == 'punct':
                depth -= 1
                if depth <= 0:
                    return
            elif tok.text == ';' and depth == 0:
                return

    def testcase(self):
        start = self.take()
        name_tok = self.take()
        try:
            if name_tok.kind != 'word':
                raise _Error(name_tok, f'expected testcase name, found {_describe(name_tok)}')
            self.expect('{')
        except _Error as exc:
            self.error(exc.tok, str(exc))
            self.skip_construct()
            return None
        tc = TestCase(name=name_tok.text, line=start.line)
        while True:
            pending = self.comments()
            tok = self.peek()
            if tok.kind == 'eof':
                tc.trailing = pending
                self.error(tok, f'unterminated testcase {tc.name!r}')
                return tc
            if tok.kind == 'punct' and tok.text == '}':
                self.take()
                tc.trailing = pending
                return tc
            try:
                a = self.assertion()
                a.comments = pending
                tc.assertions.append(a)
            except _Error as exc:
                self.error(exc.tok, str(exc))
                self.resync(exc.tok)

    def resync(self, bad: _Tok | None = None):
        """Skip to just past the next ';' (or stop before a closing brace).

        ``bad`` is the offending token; if it was a terminator already
        consumed, recovery happens right there.
        """
        if bad is not None and self.pos and self.toks[self.pos - 1] is bad and bad.kind == 'punct':
            if bad.text == ';':
                return
            if bad.text == '}':
                self.pos -= 1
                return
        while True:
            tok = self.peek()
            if tok.kind == 'eof' or (tok.kind == 'punct' and tok.text == '}'):
                return
            self.take()
            if tok.kind == 'punct' and tok.text == ';':
                return

    def assertion(self) -> Assertion:
        op_tok = self.take()
        if op_tok.kind != 'word' or not _IDENT.fullmatch(op_tok.text):
            raise _Error(op_tok, f'expected operation name, found {_describe(op_tok)}')
        inputs = []
        while not (self.peek().kind == 'punct' and self.peek().text == '='):
            if self.peek().kind == 'comment':
                self.take()
                continue
            inputs.append(self.literal())
        self.take()
        expected = []
        signal = None
        mode, flavor = 'tightest', DEFAULT_FLAVOR
        while True:
            tok = self.peek()
            if tok.kind == 'comment':
                self.take()
                continue
            if tok.kind == 'punct' and tok.text in (';', '<'):
                break
            if tok.kind == 'word' and tok.text == 'signal':
                self.take()
                sig = self.take()
                if sig.kind != 'word':
                    raise _Error(sig, f'expected signal name, found {_describe(sig)}')
                signal = sig.text
                continue
            expected.append(self.literal())
        if not inputs:
            raise _Error(op_tok, f'{op_tok.text}: no input literals')
        if not expected:
            raise _Error(self.peek(), f'{op_tok.text}: no expected literal')
        if self.peek().text == '<':
            self.take()
            mode_tok = self.take()
            if mode_tok.text not in MODES:
                raise _Error(mode_tok, f'unknown accuracy mode {mode_tok.text!r}')
            mode = mode_tok.text
            if self.peek().text == ',':
                self.take()
                fl = self.take()
                if fl.kind != 'word':
                    raise _Error(fl, f'expected flavor name, found {_describe(fl)}')
                flavor = fl.text
            self.expect('>')
        self.expect(';')
        for lit in inputs + expected:
            if lit.kind == 'interval':
                try:
                    lit.to_decorated()
                except ValueError as exc:
                    raise _Error(op_tok, f'{op_tok.text}: {exc}') from None
        return Assertion(op_tok.text, inputs, expected, mode, flavor, signal, op_tok.line)

    def literal(self) -> Literal:
        tok = self.take()
        if tok.kind == 'punct' and tok.text == '[':
            return self.interval_literal(tok)
        if tok.kind == 'string':
            return Literal('string', (tok.text,))
        if tok.kind == 'word':
            if tok.text in ('true', 'false'):
                return Literal('boolean', (tok.text,))
            self.check_number(tok)
            return Literal.number(tok.text)
        if tok.kind == 'punct' and tok.text == ';':
            raise _Error(tok, "missing '=' before ';'")
        raise _Error(tok, f'expected a literal, found {_describe(tok)}')

    def check_number(self, tok: _Tok):
        if not is_number(tok.text):
            raise _Error(tok, f'malformed number {tok.text!r}')
        try:
            number_value(tok.text)
        except (InexactLiteralError, HexLiteralError) as exc:
            raise _Error(tok, str(exc)) from None
        if not exact_decimal(tok.text):
            self.error(tok, f'decimal {tok.text} is not a double; bounds round outward', 'warning')

    def interval_literal(self, open_tok: _Tok) -> Literal:
        tokens = []
        while True:
            tok = self.take()
            if tok.kind != 'word':
                raise _Error(tok, f'expected interval bound, found {_describe(tok)}')
            if tok.text.lower() not in INTERVAL_KEYWORDS:
                self.check_number(tok)
            tokens.append(tok.text)
            sep = self.take()
            if sep.text == ']' and sep.kind == 'punct':
                break
            if sep.text != ',' or len(tokens) > 1:
                raise _Error(sep, f"expected ',' or ']', found {_describe(sep)}")
        keywords = [t for t in tokens if t.lower() in INTERVAL_KEYWORDS]
        if keywords and len(tokens) > 1:
            raise _Error(open_tok, f'keyword {keywords[0]!r} used as a bound')
        dec = None
        if self.peek().kind == 'dec':
            dec_tok = self.take()
            dec = dec_tok.text[1:]
            if dec not in [d.label for d in Dec]:
                raise _Error(dec_tok, f'unknown decoration {dec!r}')
        return Literal('interval', tuple(tokens), dec)


def _describe(tok: _Tok) -> str:
    return 'end of input' if tok.kind == 'eof' else repr(tok.text)


def parse(text: str, name: str = '', source: str = '') -> TestSuite:
    """Parse ITL text; problems are collected in ``suite.diagnostics``."""
    return _Parser(text, source).suite(name)


def parse_strict(text: str, name: str = '', source: str = '') -> TestSuite:
    suite = parse(text, name, source)
    if suite.errors:
        raise ITLSyntaxError(suite.errors)
    return suite


def parse_file(path) -> TestSuite:
    from pathlib import Path
    p = Path(path)
    return parse(p.read_text(encoding='utf-8'), name=p.stem, source=str(p))


# --- serializer ---------------------------------------------------------------

def serialize(suite: TestSuite) -> str:
    """Canonical text: one assertion per line, four-space indent."""
    out = []
    for tc in suite.testcases:
        out.extend(tc.comments)
        out.append(f'testcase {tc.name} {{')
        for a in tc.assertions:
            out.extend('    ' + c for c in a.comments)
            out.append('    ' + str(a))
        out.extend('    ' + c for c in tc.trailing)
        out.append('}')
    out.extend(suite.trailing)
    return '\n'.join(out) + '\n' if out else ''
