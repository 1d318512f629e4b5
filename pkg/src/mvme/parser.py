"""Surface syntax for formulas, theories and (anti-)sequents.

Grammar, loosest to tightest binding::

    formula := impl
    impl    := disj (("->" | "=>") impl)?
    disj    := kop ("|" kop)*
    kop     := conj (("(x)" | "(+)") conj)*
    conj    := unary ("&" unary)*
    unary   := ("~" | "inc" | "ninc") unary | atom
    atom    := IDENT | CONST | "(" formula ")" | NAME "(" formula ("," formula)* ")"

``=>`` is sugar for ``~a | b``. ``NAME(...)`` applies any other connective a
loaded spec registers under an identifier symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .formula import App, Atom, Const, Formula
from .logic import LogicSpec
from .sequent import AntiSequent, ManySidedSequent

__all__ = ["SourceSpan", "parse_formula", "parse_theory", "parse_inline_theory",
           "parse_sequent", "parse_antisequent", "parse_template", "parse_atoms"]


@dataclass(frozen=True)
class SourceSpan:
    start: int  # byte offsets into the UTF-8 input
    end: int
    line: int
    column: int


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<kop>\(x\)|\(\+\))
  | (?P<arrow>->|=>)
  | (?P<hole>\#\d+)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[~&|(),\[\]:])
""", re.VERBOSE)

_OPERAND_END = {"ident", "const", "hole", ")"}


@dataclass
class _Tok:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(text, line_offset=1, allow_holes=False):
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", _span(text, i, i + 1, line_offset))
        kind = m.lastgroup
        s = m.group()
        if kind == "ws":
            i = m.end()
            continue
        prev = toks[-1].kind if toks else None
        if kind == "kop" and prev not in _OPERAND_END:
            # "(x)" in operand position is a parenthesised atom x
            toks.append(_Tok("(", "(", i, i + 1))
            i += 1
            continue
        if kind == "hole" and not allow_holes:
            raise ParseError(f"placeholder {s} outside a connective definition",
                             _span(text, i, m.end(), line_offset))
        if kind == "word":
            if s in ("inc", "ninc"):
                kind = "prefix"
            elif s[0].islower():
                kind = "ident"
            else:
                kind = "const"
        elif kind == "punct":
            kind = {"~": "prefix"}.get(s, s)
        toks.append(_Tok(kind, s, i, m.end()))
        i = m.end()
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


def _span(text, start, end, line_offset=1):
    before = text[:start]
    line = before.count("\n")
    col = start - (before.rfind("\n") + 1) + 1
    b_start = len(before.encode("utf-8"))
    b_end = b_start + len(text[start:end].encode("utf-8"))
    return SourceSpan(b_start, b_end, line + line_offset, col)


class _Parser:
    def __init__(self, text, spec, line_offset=1, allow_holes=False):
        self.text = text
        self.spec = spec
        self.line_offset = line_offset
        self.toks = _tokenize(text, line_offset, allow_holes)
        self.pos = 0

    @property
    def tok(self):
        return self.toks[self.pos]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, _span(self.text, tok.start, max(tok.end, tok.start), self.line_offset))

    def advance(self):
        tok = self.tok
        self.pos += 1
        return tok

    def expect(self, kind, what=None):
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {what or kind!r}, found {found!r}")
        return self.advance()

    def resolve(self, symbol, arity, tok):
        if self.spec is None:
            return
        if not self.spec.has_symbol(symbol):
            if symbol in ("inc", "ninc"):
                raise self.error(f"{symbol!r} requires an active minimization set", tok)
            raise self.error(f"unknown symbol {symbol!r} in logic {self.spec.name}", tok)
        have = self.spec.connective(symbol).arity
        if have != arity:
            raise self.error(f"{symbol!r} takes {have} argument(s), got {arity}", tok)

    def formula(self):
        left = self.disj()
        if self.tok.kind == "arrow":
            tok = self.advance()
            right = self.formula()
            if tok.text == "=>":
                self.resolve("~", 1, tok)
                self.resolve("|", 2, tok)
                return App("|", (App("~", (left,)), right))
            self.resolve("->", 2, tok)
            return App("->", (left, right))
        return left

    def _left_assoc(self, sub, kinds):
        left = sub()
        while self.tok.kind in kinds:
            tok = self.advance()
            right = sub()
            self.resolve(tok.text, 2, tok)
            left = App(tok.text, (left, right))
        return left

    def disj(self):
        return self._left_assoc(self.kop, {"|"})

    def kop(self):
        return self._left_assoc(self.conj, {"kop"})

    def conj(self):
        return self._left_assoc(self.unary, {"&"})

    def unary(self):
        if self.tok.kind == "prefix":
            tok = self.advance()
            arg = self.unary()
            self.resolve(tok.text, 1, tok)
            return App(tok.text, (arg,))
        return self.atom()

    def atom(self):
        tok = self.tok
        if tok.kind == "(":
            self.advance()
            inner = self.formula()
            if self.tok.kind != ")":
                raise self.error("unbalanced parentheses: expected ')'", self.tok if self.tok.kind != "eof" else tok)
            self.advance()
            return inner
        if tok.kind in ("ident", "const", "hole"):
            self.advance()
            if self.toks[self.pos].kind == "(" and tok.kind != "hole":
                return self.call(tok)
            if tok.kind == "ident":
                return Atom(tok.text)
            if tok.kind == "hole":
                return Atom(tok.text)
            self.resolve(tok.text, 0, tok)
            return Const(tok.text)
        if tok.kind == "eof":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")

    def call(self, head):
        self.expect("(")
        args = [self.formula()]
        while self.tok.kind == ",":
            self.advance()
            args.append(self.formula())
        self.expect(")", ")")
        self.resolve(head.text, len(args), head)
        return App(head.text, tuple(args))

    def finish(self):
        if self.tok.kind != "eof":
            if self.tok.kind == ")":
                raise self.error("unbalanced parentheses: unexpected ')'")
            raise self.error(f"unexpected {self.tok.text!r}")


def parse_formula(text: str, spec: LogicSpec | None, *, line: int = 1) -> Formula:
    """Parse one formula; symbols are checked against ``spec`` when given."""
    p = _Parser(text, spec, line)
    if p.tok.kind == "eof":
        raise p.error("empty formula")
    phi = p.formula()
    p.finish()
    return phi


def parse_template(text: str) -> Formula:
    """Parse a derived-connective definition with ``#1``, ``#2`` placeholders."""
    p = _Parser(text, None, allow_holes=True)
    phi = p.formula()
    p.finish()
    return phi


def parse_theory(text: str, spec: LogicSpec) -> frozenset:
    """One formula per nonempty line; ``#`` starts a comment."""
    out = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            out.add(parse_formula(body, spec, line=lineno))
    return frozenset(out)


def parse_inline_theory(text: str, spec: LogicSpec) -> frozenset:
    """``;``-separated formulas, as used on the command line."""
    return frozenset(parse_formula(part, spec) for part in text.split(";") if part.strip())


def parse_atoms(text: str) -> frozenset:
    names = [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]
    for name in names:
        if not re.fullmatch(r"[a-z][a-zA-Z0-9_]*", name):
            raise ParseError(f"{name!r} is not an atom name")
    return frozenset(names)


def _parse_components(text, spec):
    p = _Parser(text, spec)
    comps = [set() for _ in spec.values]
    seen = set()
    while p.tok.kind != "eof":
        open_tok = p.expect("[", "[")
        label = p.tok
        if label.kind not in ("ident", "const"):
            raise p.error("expected a truth-value label")
        p.advance()
        if label.text not in spec.values:
            raise p.error(f"unknown value label {label.text!r} for logic {spec.name}", label)
        if label.text in seen:
            raise p.error(f"duplicate component label {label.text!r}", label)
        seen.add(label.text)
        p.expect(":", ":")
        idx = spec.index(label.text)
        if p.tok.kind != "]":
            comps[idx].add(p.formula())
            while p.tok.kind == ",":
                p.advance()
                comps[idx].add(p.formula())
        if p.tok.kind != "]":
            raise p.error("expected ',' or ']'", p.tok if p.tok.kind != "eof" else open_tok)
        p.advance()
    return tuple(frozenset(c) for c in comps)


def parse_sequent(text: str, spec: LogicSpec, *, anti: bool = False):
    """``[value: phi, psi] ...``; omitted components are empty."""
    comps = _parse_components(text, spec)
    return AntiSequent(comps) if anti else ManySidedSequent(comps)


def parse_antisequent(text: str, spec: LogicSpec) -> AntiSequent:
    return parse_sequent(text, spec, anti=True)
