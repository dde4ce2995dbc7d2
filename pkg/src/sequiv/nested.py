"""Programs with nested expressions: syntax tree, satisfaction, reduct, answer sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Union

from .literals import Literal, Universe, set_key


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Literal, Top, Bottom, Not, And, Or]

TOP = Top()
BOT = Bottom()


def conj(*parts: Formula) -> Formula:
    """Right-folded conjunction; the empty conjunction is ``top``."""
    if not parts:
        return TOP
    return reduce(lambda acc, f: And(f, acc), reversed(parts[:-1]), parts[-1])


def disj(*parts: Formula) -> Formula:
    """Right-folded disjunction; the empty disjunction is ``bot``."""
    if not parts:
        return BOT
    return reduce(lambda acc, f: Or(f, acc), reversed(parts[:-1]), parts[-1])


def formula_atoms(f: Formula) -> set[str]:
    if isinstance(f, Literal):
        return {f.atom}
    if isinstance(f, Not):
        return formula_atoms(f.arg)
    if isinstance(f, (And, Or)):
        return formula_atoms(f.left) | formula_atoms(f.right)
    return set()


def contains_not(f: Formula) -> bool:
    if isinstance(f, Not):
        return True
    if isinstance(f, (And, Or)):
        return contains_not(f.left) or contains_not(f.right)
    return False


def contains_negated(f: Formula) -> bool:
    if isinstance(f, Literal):
        return f.negated
    if isinstance(f, Not):
        return contains_negated(f.arg)
    if isinstance(f, (And, Or)):
        return contains_negated(f.left) or contains_negated(f.right)
    return False


def is_elementary(f: Formula) -> bool:
    return isinstance(f, (Literal, Top, Bottom))


@dataclass(frozen=True)
class Rule:
    head: Formula
    body: Formula = TOP

    def atoms(self) -> set[str]:
        return formula_atoms(self.head) | formula_atoms(self.body)


@dataclass(frozen=True)
class NestedProgram:
    rules: tuple[Rule, ...] = ()
    signature: frozenset[str] = field(default=frozenset())

    def __post_init__(self):
        rules = tuple(r if isinstance(r, Rule) else Rule(r) for r in self.rules)
        object.__setattr__(self, "rules", rules)
        occurring = set().union(*(r.atoms() for r in rules)) if rules else set()
        object.__setattr__(self, "signature", frozenset(self.signature) | occurring)

    def with_atoms(self, atoms: Iterable[str]) -> NestedProgram:
        return NestedProgram(self.rules, self.signature | frozenset(atoms))

    def union(self, other: NestedProgram) -> NestedProgram:
        return NestedProgram(self.rules + other.rules, self.signature | other.signature)

    @property
    def is_nondisjunctive(self) -> bool:
        def ok(h):
            return is_elementary(h) or (isinstance(h, Not) and is_elementary(h.arg))

        return all(ok(r.head) for r in self.rules)

    @property
    def is_negation_free(self) -> bool:
        """True when classical negation does not occur."""
        return not any(contains_negated(r.head) or contains_negated(r.body) for r in self.rules)

    def __len__(self) -> int:
        return len(self.rules)


def program(*rules: Rule | Formula, atoms: Iterable[str] = ()) -> NestedProgram:
    return NestedProgram(tuple(rules), frozenset(atoms))


# -- satisfaction ----------------------------------------------------------


def satisfies_formula(x: frozenset[Literal], f: Formula) -> bool:
    if isinstance(f, Literal):
        return f in x
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not satisfies_formula(x, f.arg)
    if isinstance(f, And):
        return satisfies_formula(x, f.left) and satisfies_formula(x, f.right)
    if isinstance(f, Or):
        return satisfies_formula(x, f.left) or satisfies_formula(x, f.right)
    raise TypeError(f"not a formula: {f!r}")


def satisfies_rule(x: frozenset[Literal], rule: Rule) -> bool:
    return not satisfies_formula(x, rule.body) or satisfies_formula(x, rule.head)


def satisfies_program(x: frozenset[Literal], prog: NestedProgram) -> bool:
    return all(satisfies_rule(x, r) for r in prog.rules)


# -- reduct ----------------------------------------------------------------


def reduct_formula(f: Formula, x: frozenset[Literal]) -> Formula:
    """Replace each maximal ``not G`` by ``bot`` if ``x`` satisfies G, else ``top``."""
    if isinstance(f, Not):
        return BOT if satisfies_formula(x, f.arg) else TOP
    if isinstance(f, And):
        return And(reduct_formula(f.left, x), reduct_formula(f.right, x))
    if isinstance(f, Or):
        return Or(reduct_formula(f.left, x), reduct_formula(f.right, x))
    return f


def reduct_rule(rule: Rule, x: frozenset[Literal]) -> Rule:
    return Rule(reduct_formula(rule.head, x), reduct_formula(rule.body, x))


def reduct_program(prog: NestedProgram, x: frozenset[Literal]) -> NestedProgram:
    return NestedProgram(tuple(reduct_rule(r, x) for r in prog.rules), prog.signature)


# -- answer sets -----------------------------------------------------------

DEFAULT_MAX_ATOMS = 12
DEFAULT_MAX_ATOMS_POSITIVE = 16


def answer_sets(
    prog: NestedProgram,
    *,
    atoms: Iterable[str] = (),
    max_atoms: int | None = None,
) -> list[frozenset[Literal]]:
    """All answer sets, in deterministic order, by exhaustive enumeration.

    Without classical negation every answer set is a set of atoms, so only
    atom sets are enumerated in that case.
    """
    from . import kernels

    prog = prog.with_atoms(atoms)
    universe = Universe(prog.signature)
    positive = prog.is_negation_free
    kernels.check_cap("answer set enumeration", universe.n, positive, max_atoms)
    compiled = kernels.compile_nested(prog, universe)
    masks = kernels.answer_set_masks(compiled, universe.consistent_masks(positive))
    return [universe.from_mask(m) for m in universe.sort_masks(masks)]


def sorted_sets(sets: Iterable[frozenset[Literal]]) -> list[frozenset[Literal]]:
    return sorted(sets, key=set_key)
