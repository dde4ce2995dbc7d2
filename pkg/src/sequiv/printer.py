"""Text rendering that the parsers read back to structurally equal programs."""

from __future__ import annotations

import math
from fractions import Fraction

from .literals import Literal
from .nested import And, Bottom, Formula, NestedProgram, Not, Or, Rule, Top
from .wcp import BOTTOM, WcpProgram, WcpRule, WeightConstraint

_OR, _AND, _NOT = 1, 2, 3


def format_formula(f: Formula, ctx: int = 0) -> str:
    if isinstance(f, Literal):
        return str(f)
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Not):
        return "not " + format_formula(f.arg, _NOT)
    if isinstance(f, And):
        text = f"{format_formula(f.left, _NOT)}, {format_formula(f.right, _AND)}"
        return f"({text})" if ctx > _AND else text
    if isinstance(f, Or):
        text = f"{format_formula(f.left, _AND)} ; {format_formula(f.right, _OR)}"
        return f"({text})" if ctx > _OR else text
    raise TypeError(f"not a formula: {f!r}")


def format_rule(r: Rule) -> str:
    if isinstance(r.body, Top):
        return f"{format_formula(r.head)}."
    return f"{format_formula(r.head)} :- {format_formula(r.body)}."


def format_nested(p: NestedProgram) -> str:
    return "".join(format_rule(r) + "\n" for r in p.rules)


def format_number(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d == 1:
        digits = 0
        y = x
        while y.denominator != 1:
            y *= 10
            digits += 1
        sign = "-" if y < 0 else ""
        s = str(abs(y.numerator)).rjust(digits + 1, "0")
        return f"{sign}{s[:-digits]}.{s[-digits:]}"
    return f"{x.numerator}/{x.denominator}"


def format_constraint(c: WeightConstraint) -> str:
    if c == BOTTOM:
        return "bot"
    if c.lower == 1 and c.upper == math.inf and len(c.elements) == 1 and c.elements[0][1] == 1:
        return str(c.elements[0][0])
    items = ", ".join(str(e) if w == 1 else f"{e}={format_number(w)}" for e, w in c.elements)
    text = "{" + items + "}"
    if c.lower != -math.inf:
        text = f"{format_number(c.lower)} {text}"
    if c.upper != math.inf:
        text = f"{text} {format_number(c.upper)}"
    return text


def format_wcp_rule(r: WcpRule) -> str:
    head = format_constraint(r.head)
    if not r.body:
        return f"{head}."
    return f"{head} :- {', '.join(format_constraint(c) for c in r.body)}."


def format_wcp(p: WcpProgram) -> str:
    return "".join(format_wcp_rule(r) + "\n" for r in p.rules)


def format_program(p) -> str:
    return format_wcp(p) if isinstance(p, WcpProgram) else format_nested(p)
