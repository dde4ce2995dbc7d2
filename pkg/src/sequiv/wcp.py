"""Weight constraint programs: syntax tree, weight sums, reducts, answer sets.

Weights and finite bounds are :class:`fractions.Fraction` so that a sum
landing exactly on a bound is decided without rounding. Infinite bounds are
``math.inf`` / ``-math.inf``, which compare correctly against fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .errors import UpperBoundError
from .literals import Literal, Universe

Bound = Union[Fraction, float]  # float only for +-inf
NEG_INF = -math.inf
POS_INF = math.inf


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def to_bound(value) -> Bound:
    if value is None:
        raise TypeError("use NEG_INF / POS_INF for omitted bounds")
    if isinstance(value, float) and math.isinf(value):
        return value
    return to_fraction(value)


@dataclass(frozen=True, order=True)
class RuleElement:
    literal: Literal
    negative: bool = False

    def satisfied_by(self, x: frozenset[Literal]) -> bool:
        return (self.literal in x) != self.negative

    def __str__(self) -> str:
        return f"not {self.literal}" if self.negative else str(self.literal)


def elem(name: str | Literal, negative: bool = False) -> RuleElement:
    if isinstance(name, Literal):
        return RuleElement(name, negative)
    if name.startswith("-"):
        return RuleElement(Literal(name[1:], True), negative)
    return RuleElement(Literal(name), negative)


@dataclass(frozen=True)
class WeightConstraint:
    """``lower <= {e1=w1, ...} <= upper`` with duplicate elements merged."""

    lower: Bound = NEG_INF
    elements: tuple[tuple[RuleElement, Fraction], ...] = ()
    upper: Bound = POS_INF

    def __post_init__(self):
        merged: dict[RuleElement, Fraction] = {}
        for e, w in self.elements:
            w = to_fraction(w)
            if w < 0:
                raise ValueError(f"negative weight {w} for {e}")
            merged[e] = merged.get(e, Fraction(0)) + w
        object.__setattr__(self, "elements", tuple(sorted(merged.items())))
        object.__setattr__(self, "lower", to_bound(self.lower))
        object.__setattr__(self, "upper", to_bound(self.upper))

    def atoms(self) -> set[str]:
        return {e.literal.atom for e, _ in self.elements}

    @property
    def positive_elements(self) -> tuple[tuple[RuleElement, Fraction], ...]:
        return tuple((e, w) for e, w in self.elements if not e.negative)

    @property
    def negative_elements(self) -> tuple[tuple[RuleElement, Fraction], ...]:
        return tuple((e, w) for e, w in self.elements if e.negative)

    @property
    def literals(self) -> tuple[Literal, ...]:
        """Literals of the positive elements (the head literals when used as a head)."""
        return tuple(e.literal for e, _ in self.elements if not e.negative)


def constraint(lower=NEG_INF, elements: Iterable = (), upper=POS_INF) -> WeightConstraint:
    """Accepts elements as RuleElement, (RuleElement, weight), names or ``"not a"`` strings."""
    items = []
    for item in elements:
        if isinstance(item, tuple):
            e, w = item
        else:
            e, w = item, 1
        if isinstance(e, str):
            e = elem(e[4:], True) if e.startswith("not ") else elem(e)
        elif isinstance(e, Literal):
            e = RuleElement(e)
        items.append((e, w))
    return WeightConstraint(lower, tuple(items), upper)


def singleton(e: RuleElement | str | Literal) -> WeightConstraint:
    """A rule element standing alone denotes ``1 <= {e}``."""
    return constraint(1, [e])


BOTTOM = WeightConstraint(Fraction(1), (), POS_INF)


@dataclass(frozen=True)
class WcpRule:
    head: WeightConstraint
    body: tuple[WeightConstraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        if any(e.negative for e, _ in self.head.elements):
            raise ValueError("rule heads may not contain negative rule elements")

    def atoms(self) -> set[str]:
        return self.head.atoms().union(*(c.atoms() for c in self.body))


@dataclass(frozen=True)
class WcpProgram:
    rules: tuple[WcpRule, ...] = ()
    signature: frozenset[str] = field(default=frozenset())

    def __post_init__(self):
        rules = tuple(r if isinstance(r, WcpRule) else WcpRule(r) for r in self.rules)
        object.__setattr__(self, "rules", rules)
        occurring = set().union(*(r.atoms() for r in rules)) if rules else set()
        object.__setattr__(self, "signature", frozenset(self.signature) | occurring)

    def with_atoms(self, atoms: Iterable[str]) -> WcpProgram:
        return WcpProgram(self.rules, self.signature | frozenset(atoms))

    def union(self, other: WcpProgram) -> WcpProgram:
        return WcpProgram(self.rules + other.rules, self.signature | other.signature)

    @property
    def is_negation_free(self) -> bool:
        return not any(
            e.literal.negated for r in self.rules for c in (r.head, *r.body) for e, _ in c.elements
        )

    def __len__(self) -> int:
        return len(self.rules)


def wcp_program(*rules: WcpRule | WeightConstraint, atoms: Iterable[str] = ()) -> WcpProgram:
    return WcpProgram(tuple(rules), frozenset(atoms))


def wrule(head, *body) -> WcpRule:
    """Shorthand: string/literal heads and body items become singleton constraints."""

    def lift(c):
        if isinstance(c, WeightConstraint):
            return c
        if isinstance(c, str) and c.startswith("not "):
            return singleton(elem(c[4:], True))
        return singleton(c)

    if isinstance(head, str) and head == "bot":
        head = BOTTOM
    return WcpRule(lift(head), tuple(lift(c) for c in body))


# -- semantics -------------------------------------------------------------


def weight_sum(elements: Iterable[tuple[RuleElement, Fraction]], x: frozenset[Literal]) -> Fraction:
    return sum((w for e, w in elements if e.satisfied_by(x)), Fraction(0))


def satisfies_constraint(x: frozenset[Literal], c: WeightConstraint) -> bool:
    v = weight_sum(c.elements, x)
    return c.lower <= v <= c.upper


def satisfies_wcp_rule(x: frozenset[Literal], rule: WcpRule) -> bool:
    if all(satisfies_constraint(x, c) for c in rule.body):
        return satisfies_constraint(x, rule.head)
    return True


def satisfies_wcp_program(x: frozenset[Literal], prog: WcpProgram) -> bool:
    return all(satisfies_wcp_rule(x, r) for r in prog.rules)


def reduct_lower_constraint(c: WeightConstraint, x: frozenset[Literal]) -> WeightConstraint:
    """``(L <= S)^X = L - v(negative part of S, X) <= positive part of S``."""
    if c.upper != POS_INF:
        raise UpperBoundError("reduct is defined for constraints of the form L <= S only")
    lower = c.lower - weight_sum(c.negative_elements, x)
    return WeightConstraint(lower, c.positive_elements, POS_INF)


def _lower_half(c: WeightConstraint) -> WeightConstraint:
    return WeightConstraint(c.lower, c.elements, POS_INF)


def reduct_wcp_rule(rule: WcpRule, x: frozenset[Literal], signature: Iterable[str] = ()) -> WcpProgram:
    upper_ok = all(weight_sum(c.elements, x) <= c.upper for c in rule.body)
    if not upper_ok:
        return WcpProgram((), frozenset(signature))
    body = tuple(reduct_lower_constraint(_lower_half(c), x) for c in rule.body)
    rules = tuple(WcpRule(singleton(lit), body) for lit in rule.head.literals if lit in x)
    return WcpProgram(rules, frozenset(signature))


def reduct_wcp_program(prog: WcpProgram, x: frozenset[Literal]) -> WcpProgram:
    rules: list[WcpRule] = []
    for r in prog.rules:
        rules.extend(reduct_wcp_rule(r, x).rules)
    return WcpProgram(tuple(rules), prog.signature)


def wcp_answer_sets(
    prog: WcpProgram,
    *,
    atoms: Iterable[str] = (),
    max_atoms: int | None = None,
    method: str = "enumerate",
    limit: int | None = None,
) -> list[frozenset[Literal]]:
    """Answer sets in deterministic order.

    ``method="enumerate"`` checks every consistent candidate (subject to the
    atom cap); ``method="search"`` runs the complete backtracking solver,
    which has no cap and honours ``limit``.
    """
    from . import kernels

    prog = prog.with_atoms(atoms)
    universe = Universe(prog.signature)
    if method == "search":
        from .solver import search_answer_sets

        return search_answer_sets(prog, limit=limit)
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    positive = prog.is_negation_free
    kernels.check_cap("answer set enumeration", universe.n, positive, max_atoms)
    compiled = kernels.compile_wcp(prog, universe)
    masks = kernels.answer_set_masks(compiled, universe.consistent_masks(positive))
    found = [universe.from_mask(m) for m in universe.sort_masks(masks)]
    return found if limit is None else found[:limit]
