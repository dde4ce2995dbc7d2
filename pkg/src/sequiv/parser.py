"""Parsers for the nested-program and weight-constraint text formats.

Nested syntax::

    p ; q.                 % disjunction, body top
    bot :- p, q.           % bot/top are the constants
    r :- not (p ; q), -s.  % -s is classical negation

Precedence is ``not`` > ``,`` > ``;`` and both binary connectives fold to
the right. Weight constraint syntax::

    1 {p, q} 1.
    p :- not q.
    bot :- 2 {p=1.5, q}.

Comments run from ``%`` to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import ParseError, ReservedNameError
from .literals import Literal, check_user_atom
from .nested import BOT, TOP, And, Formula, NestedProgram, Not, Or, Rule
from .wcp import BOTTOM, NEG_INF, POS_INF, RuleElement, WcpProgram, WcpRule, WeightConstraint

KEYWORDS = {"not", "top", "bot"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|%[^\n]*)
  | (?P<nl>\n)
  | (?P<num>-?\d+(?:\.\d+|/\d+)?)
  | (?P<ident>[a-z_][A-Za-z0-9_]*(?:\([A-Za-z0-9_]+(?:,[A-Za-z0-9_]+)*\))?)
  | (?P<punct>:-|[.,;(){}=-])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.tokens = tokenize(text)
        self.i = 0
        self.allow_reserved = allow_reserved

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("punct", "ident")

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def error(self, message: str):
        t = self.tok
        found = t.text or "end of input"
        raise ParseError(f"{message}, found {found!r}", t.line, t.col)

    def atom(self) -> str:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            self.error("expected an atom")
        self.advance()
        if not self.allow_reserved:
            try:
                check_user_atom(t.text)
            except ReservedNameError as exc:
                raise ReservedNameError(f"line {t.line}, column {t.col}: {exc}") from None
        return t.text

    def literal(self) -> Literal:
        if self.at("-"):
            self.advance()
            return Literal(self.atom(), True)
        return Literal(self.atom())

    def number(self) -> Fraction:
        t = self.tok
        if t.kind != "num":
            self.error("expected a number")
        self.advance()
        return Fraction(t.text)

    # -- nested formulas

    def formula(self) -> Formula:
        left = self.conjunction()
        if self.at(";"):
            self.advance()
            return Or(left, self.formula())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        if self.at(","):
            self.advance()
            return And(left, self.conjunction())
        return left

    def unary(self) -> Formula:
        if self.at("not"):
            self.advance()
            return Not(self.unary())
        if self.at("top"):
            self.advance()
            return TOP
        if self.at("bot"):
            self.advance()
            return BOT
        if self.at("("):
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        return self.literal()

    def nested_program(self) -> list[Rule]:
        rules = []
        while self.tok.kind != "eof":
            head = BOT if self.at(":-") else self.formula()
            body = TOP
            if self.at(":-"):
                self.advance()
                body = self.formula()
            self.expect(".")
            rules.append(Rule(head, body))
        return rules

    # -- weight constraints

    def weight_element(self) -> tuple[RuleElement, Fraction]:
        negative = False
        if self.at("not"):
            self.advance()
            negative = True
        e = RuleElement(self.literal(), negative)
        w = Fraction(1)
        if self.at("="):
            self.advance()
            t = self.tok
            w = self.number()
            if w < 0:
                raise ParseError("negative weight", t.line, t.col)
        return e, w

    def braces(self, lower) -> WeightConstraint:
        self.expect("{")
        items = []
        if not self.at("}"):
            items.append(self.weight_element())
            while self.at(","):
                self.advance()
                items.append(self.weight_element())
        self.expect("}")
        upper = self.number() if self.tok.kind == "num" else POS_INF
        return WeightConstraint(lower, tuple(items), upper)

    def wcp_item(self, head: bool) -> WeightConstraint:
        t = self.tok
        if self.at("bot"):
            self.advance()
            return BOTTOM
        if self.at("top") and not head:
            self.advance()
            return WeightConstraint(NEG_INF, (), POS_INF)
        if t.kind == "num":
            return self.braces(self.number())
        if self.at("{"):
            return self.braces(NEG_INF)
        if self.at("not"):
            if head:
                raise ParseError("negative rule element in rule head", t.line, t.col)
            self.advance()
            return WeightConstraint(1, ((RuleElement(self.literal(), True), 1),), POS_INF)
        return WeightConstraint(1, ((RuleElement(self.literal()), 1),), POS_INF)

    def wcp_program(self) -> list[WcpRule]:
        rules = []
        while self.tok.kind != "eof":
            t = self.tok
            head = BOTTOM if self.at(":-") else self.wcp_item(head=True)
            if any(e.negative for e, _ in head.elements):
                raise ParseError("negative rule element in rule head", t.line, t.col)
            body = []
            if self.at(":-"):
                self.advance()
                body.append(self.wcp_item(head=False))
                while self.at(","):
                    self.advance()
                    body.append(self.wcp_item(head=False))
            self.expect(".")
            rules.append(WcpRule(head, tuple(body)))
        return rules

    def finish(self):
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")


def parse_nested(text: str, *, atoms: Iterable[str] = (), allow_reserved: bool = False) -> NestedProgram:
    p = _Parser(text, allow_reserved)
    return NestedProgram(tuple(p.nested_program()), frozenset(atoms))


def parse_formula(text: str, *, allow_reserved: bool = False) -> Formula:
    p = _Parser(text, allow_reserved)
    f = p.formula()
    p.finish()
    return f


def parse_wcp(text: str, *, atoms: Iterable[str] = (), allow_reserved: bool = False) -> WcpProgram:
    p = _Parser(text, allow_reserved)
    return WcpProgram(tuple(p.wcp_program()), frozenset(atoms))


def language_of(path: str | Path, explicit: str | None = None) -> str:
    if explicit:
        return explicit
    suffix = Path(path).suffix
    if suffix == ".wcp":
        return "wcp"
    if suffix == ".lp":
        return "nested"
    raise ValueError(f"cannot infer the language of {path}; use --lang")


def parse_program(text: str, language: str, **kwargs):
    if language == "wcp":
        return parse_wcp(text, **kwargs)
    if language == "nested":
        return parse_nested(text, **kwargs)
    raise ValueError(f"unknown language {language!r}")


def load_program(path: str | Path, language: str | None = None, **kwargs):
    return parse_program(Path(path).read_text(), language_of(path, language), **kwargs)
