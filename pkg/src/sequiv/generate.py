"""Seeded random programs for cross-checking and property tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .literals import Literal
from .nested import BOT, TOP, And, Formula, NestedProgram, Not, Or, Rule
from .wcp import NEG_INF, POS_INF, RuleElement, WcpProgram, WcpRule, WeightConstraint

ATOMS = ("p", "q", "r", "s", "t", "u")


def atom_names(n: int) -> tuple[str, ...]:
    return ATOMS[:n] if n <= len(ATOMS) else tuple(f"a{i}" for i in range(n))


def random_literal(rng: random.Random, atoms: Sequence[str], negation: bool) -> Literal:
    return Literal(rng.choice(atoms), negation and rng.random() < 0.3)


def random_formula(rng: random.Random, atoms: Sequence[str], depth: int = 2, negation: bool = False) -> Formula:
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        r = rng.random()
        if r < 0.06:
            return TOP
        if r < 0.12:
            return BOT
        return random_literal(rng, atoms, negation)
    if roll < 0.6:
        return Not(random_formula(rng, atoms, depth - 1, negation))
    node = And if roll < 0.8 else Or
    return node(random_formula(rng, atoms, depth - 1, negation), random_formula(rng, atoms, depth - 1, negation))


def random_nested_program(
    rng: random.Random,
    atoms: Sequence[str],
    max_rules: int = 4,
    *,
    negation: bool = False,
    depth: int = 2,
) -> NestedProgram:
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        head = random_formula(rng, atoms, depth, negation)
        body = TOP if rng.random() < 0.25 else random_formula(rng, atoms, depth, negation)
        rules.append(Rule(head, body))
    return NestedProgram(tuple(rules), frozenset(atoms))


def _simple_body_item(rng: random.Random, atoms: Sequence[str]) -> Formula:
    lit = Literal(rng.choice(atoms))
    r = rng.random()
    if r < 0.45:
        return lit
    if r < 0.9:
        return Not(lit)
    return Not(Not(lit))


def random_simple_program(rng: random.Random, atoms: Sequence[str], max_rules: int = 4) -> NestedProgram:
    """Nondisjunctive rules with conjunctive bodies; every rule has a weight constraint counterpart."""
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        r = rng.random()
        if r < 0.65:
            head: Formula = Literal(rng.choice(atoms))
        elif r < 0.85:
            head = BOT
        else:
            head = Not(Literal(rng.choice(atoms)))
        items = [_simple_body_item(rng, atoms) for _ in range(rng.randint(0, 3))]
        body: Formula = TOP
        for item in reversed(items):
            body = item if body is TOP else And(item, body)
        rules.append(Rule(head, body))
    return NestedProgram(tuple(rules), frozenset(atoms))


def _weight(rng: random.Random) -> Fraction:
    return rng.choice([Fraction(1), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2), Fraction(0)])


def _bound(rng: random.Random, total: Fraction, upper: bool):
    if rng.random() < (0.6 if upper else 0.3):
        return POS_INF if upper else NEG_INF
    return Fraction(rng.randint(0, max(1, int(2 * total)))) / 2


def random_constraint(
    rng: random.Random, atoms: Sequence[str], *, head: bool = False, negation: bool = False
) -> WeightConstraint:
    items = []
    for _ in range(rng.randint(0 if head else 1, 3)):
        neg = not head and rng.random() < 0.4
        items.append((RuleElement(random_literal(rng, atoms, negation), neg), _weight(rng)))
    total = sum((w for _, w in items), Fraction(0))
    if not head and len(items) == 1 and rng.random() < 0.5:
        return WeightConstraint(1, ((items[0][0], 1),), POS_INF)
    lower = _bound(rng, total, False)
    upper = _bound(rng, total, True)
    if lower != NEG_INF and upper != POS_INF and upper < lower:
        lower, upper = upper, lower
    return WeightConstraint(lower, tuple(items), upper)


def random_wcp_program(
    rng: random.Random,
    atoms: Sequence[str],
    max_rules: int = 4,
    *,
    negation: bool = False,
    max_body: int = 2,
) -> WcpProgram:
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        head = random_constraint(rng, atoms, head=True, negation=negation)
        body = tuple(random_constraint(rng, atoms, negation=negation) for _ in range(rng.randint(0, max_body)))
        rules.append(WcpRule(head, body))
    return WcpProgram(tuple(rules), frozenset(atoms))
