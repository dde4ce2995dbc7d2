"""SE-models, (strong) equivalence and distinguishing contexts for both languages."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from . import kernels
from .errors import CapacityError, NegationError
from .literals import Literal, Universe, format_set, is_consistent, positive_part, set_key
from .nested import (
    And,
    Formula,
    NestedProgram,
    Not,
    Or,
    Rule,
    answer_sets,
    formula_atoms,
    contains_negated,
    reduct_program,
    satisfies_program,
)
from .wcp import (
    WcpProgram,
    WcpRule,
    reduct_wcp_program,
    satisfies_wcp_program,
    singleton,
    wcp_answer_sets,
)

Program = Union[NestedProgram, WcpProgram]

CASE_CONTEXT_FALSIFIES = "context-falsifies-one-program"
CASE_SUBSET_BREAKS = "subset-breaks-minimality"


@dataclass(frozen=True)
class SEModel:
    here: frozenset[Literal]
    there: frozenset[Literal]

    def __post_init__(self):
        object.__setattr__(self, "here", frozenset(self.here))
        object.__setattr__(self, "there", frozenset(self.there))
        if not self.here <= self.there:
            raise ValueError("the here-set must be a subset of the there-set")
        if not is_consistent(self.there):
            raise ValueError("SE-model components must be consistent")

    @property
    def positive(self) -> bool:
        return not any(lit.negated for lit in self.there)

    def key(self) -> tuple:
        return set_key(self.there), set_key(self.here)

    def __str__(self) -> str:
        return f"({format_set(self.here)}, {format_set(self.there)})"


@dataclass(frozen=True)
class DistinguishingContext:
    """A program R such that exactly one of P+R, Q+R has ``separating_set`` as an answer set."""

    context_program: Program
    separating_set: frozenset[Literal]
    case: str
    answer_set_of: str  # "first" or "second": which union has the separating set


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    method: str = "direct"
    mismatch: Optional[SEModel] = None
    mismatch_in: Optional[str] = None  # which program has the mismatching SE-model
    witness: Optional[DistinguishingContext] = None

    def __bool__(self) -> bool:
        return self.equivalent


# -- language dispatch -----------------------------------------------------


def _is_wcp(p: Program) -> bool:
    return isinstance(p, WcpProgram)


def same_language(p: Program, q: Program) -> None:
    if _is_wcp(p) != _is_wcp(q):
        raise TypeError("both programs must be in the same language")


def program_satisfied(x: frozenset[Literal], p: Program) -> bool:
    return satisfies_wcp_program(x, p) if _is_wcp(p) else satisfies_program(x, p)


def program_reduct(p: Program, x: frozenset[Literal]) -> Program:
    return reduct_wcp_program(p, x) if _is_wcp(p) else reduct_program(p, x)


def compile_program(p: Program, universe: Universe) -> kernels.Compiled:
    return kernels.compile_wcp(p, universe) if _is_wcp(p) else kernels.compile_nested(p, universe)


def program_answer_sets(p: Program, *, atoms: Iterable[str] = (), max_atoms: int | None = None):
    if _is_wcp(p):
        return wcp_answer_sets(p, atoms=atoms, max_atoms=max_atoms)
    return answer_sets(p, atoms=atoms, max_atoms=max_atoms)


def _union(p: Program, q: Program) -> Program:
    return p.union(q)


def joint_signature(*programs: Program, atoms: Iterable[str] = ()) -> frozenset[str]:
    sig = set(atoms)
    for p in programs:
        sig |= p.signature
    return frozenset(sig)


# -- SE-models -------------------------------------------------------------


def is_se_model(pair: SEModel, p: Program) -> bool:
    """``Y |= P`` and ``X |= P^Y``, checked symbolically."""
    if not pair.here <= pair.there:
        return False
    return program_satisfied(pair.there, p) and program_satisfied(pair.here, program_reduct(p, pair.there))


def _se_masks(p: Program, universe: Universe, positive: bool, max_atoms: int | None):
    kernels.check_cap("SE-model enumeration", universe.n, positive, max_atoms)
    compiled = compile_program(p, universe)
    return kernels.se_pair_masks(compiled, universe.consistent_masks(positive))


def se_models(
    p: Program,
    positive_only: bool = False,
    *,
    atoms: Iterable[str] = (),
    max_atoms: int | None = None,
) -> list[SEModel]:
    if positive_only and not p.is_negation_free:
        raise NegationError("positive SE-models characterize only programs without classical negation")
    universe = Universe(joint_signature(p, atoms=atoms))
    xs, ys = _se_masks(p, universe, positive_only, max_atoms)
    xs, ys = universe.sort_pairs(xs, ys)
    return [SEModel(universe.from_mask(x), universe.from_mask(y)) for x, y in zip(xs, ys)]


def positive_projection_agrees(p: Program, pair: SEModel) -> bool:
    if not p.is_negation_free:
        raise NegationError("projection agreement applies to programs without classical negation")
    projected = SEModel(positive_part(pair.here), positive_part(pair.there))
    return is_se_model(pair, p) == is_se_model(projected, p)


# -- equivalence -----------------------------------------------------------


def equivalent(p: Program, q: Program, *, atoms: Iterable[str] = (), max_atoms: int | None = None) -> bool:
    same_language(p, q)
    sig = joint_signature(p, q, atoms=atoms)
    return program_answer_sets(p, atoms=sig, max_atoms=max_atoms) == program_answer_sets(
        q, atoms=sig, max_atoms=max_atoms
    )


def _pack(xs: np.ndarray, ys: np.ndarray, shift: int) -> np.ndarray:
    return (ys.astype(np.int64) << shift) | xs.astype(np.int64)


def _unpack(keys: np.ndarray, shift: int):
    return keys & ((1 << shift) - 1), keys >> shift


def first_mismatch(universe: Universe, p_pairs, q_pairs) -> tuple[SEModel, str] | None:
    """The least pair (in enumeration order) that is an SE-model of exactly one side."""
    top = max([int(a.max()) for a in (*p_pairs, *q_pairs) if len(a)] or [0])
    shift = max(top.bit_length(), 1)
    if 2 * shift > 62:
        raise CapacityError("SE-model comparison", universe.n, 15)
    kp = np.unique(_pack(*p_pairs, shift))
    kq = np.unique(_pack(*q_pairs, shift))
    only_p = np.setdiff1d(kp, kq, assume_unique=True)
    only_q = np.setdiff1d(kq, kp, assume_unique=True)
    if not len(only_p) and not len(only_q):
        return None
    keys = np.concatenate([only_p, only_q])
    side = np.concatenate([np.zeros(len(only_p), dtype=np.int64), np.ones(len(only_q), dtype=np.int64)])
    xs, ys = _unpack(keys, shift)
    ysize, yrank = universe.order_keys(ys)
    xsize, xrank = universe.order_keys(xs)
    i = np.lexsort((xrank, xsize, yrank, ysize))[0]
    pair = SEModel(universe.from_mask(int(xs[i])), universe.from_mask(int(ys[i])))
    return pair, ("first" if side[i] == 0 else "second")


def strongly_equivalent_direct(
    p: Program,
    q: Program,
    *,
    atoms: Iterable[str] = (),
    max_atoms: int | None = None,
    witness: bool = True,
    verify: bool = True,
) -> Verdict:
    """Compare SE-model sets; positive SE-models suffice when neither program uses classical negation."""
    same_language(p, q)
    universe = Universe(joint_signature(p, q, atoms=atoms))
    positive = p.is_negation_free and q.is_negation_free
    found = first_mismatch(
        universe,
        _se_masks(p, universe, positive, max_atoms),
        _se_masks(q, universe, positive, max_atoms),
    )
    if found is None:
        return Verdict(True, "direct")
    pair, side = found
    ctx = None
    if witness:
        has, lacks = (p, q) if side == "first" else (q, p)
        ctx = distinguishing_context(pair, has, lacks, first_has=(side == "first"))
        if verify:
            verify_context(p, q, ctx, atoms=universe.atoms, max_atoms=max_atoms)
    return Verdict(False, "direct", pair, side, ctx)


def distinguishing_context(pair: SEModel, has: Program, lacks: Program, first_has: bool = True) -> DistinguishingContext:
    """Build R from an SE-model of ``has`` that ``lacks`` does not have.

    If the there-set falsifies ``lacks``, R is the there-set as facts and it is an
    answer set of ``has`` + R only. Otherwise R is the here-set as facts plus
    ``L :- L'`` for distinct L, L' outside the here-set, and the there-set is an
    answer set of ``lacks`` + R only.
    """
    x, y = pair.here, pair.there
    wcp = _is_wcp(has)
    if not program_satisfied(y, lacks):
        facts, links, case = sorted(y), [], CASE_CONTEXT_FALSIFIES
        winner_is_has = True
    else:
        gap = sorted(y - x)
        facts, case = sorted(x), CASE_SUBSET_BREAKS
        links = [(a, b) for a in gap for b in gap if a != b]
        winner_is_has = False
    if wcp:
        rules = [WcpRule(singleton(lit)) for lit in facts]
        rules += [WcpRule(singleton(a), (singleton(b),)) for a, b in links]
        ctx_prog: Program = WcpProgram(tuple(rules))
    else:
        nrules = [Rule(lit) for lit in facts] + [Rule(a, b) for a, b in links]
        ctx_prog = NestedProgram(tuple(nrules))
    first = first_has if winner_is_has else not first_has
    return DistinguishingContext(ctx_prog, y, case, "first" if first else "second")


def _answer_sets_for_check(prog: Program, atoms, max_atoms):
    if _is_wcp(prog) and prog.is_negation_free and len(prog.signature | frozenset(atoms)) > 12:
        return wcp_answer_sets(prog, atoms=atoms, method="search")
    return program_answer_sets(prog, atoms=atoms, max_atoms=max_atoms)


def verify_context(p: Program, q: Program, ctx: DistinguishingContext, *, atoms=(), max_atoms=None) -> None:
    """Recompute answer sets of P+R and Q+R and confirm the separating set splits them."""
    r = ctx.context_program
    in_p = ctx.separating_set in _answer_sets_for_check(_union(p, r), atoms, max_atoms)
    in_q = ctx.separating_set in _answer_sets_for_check(_union(q, r), atoms, max_atoms)
    expected = (True, False) if ctx.answer_set_of == "first" else (False, True)
    if (in_p, in_q) != expected:
        raise AssertionError(f"distinguishing context failed verification: {(in_p, in_q)}")


# -- formulas relative to a program ----------------------------------------


def formula_equiv_relative(
    p: NestedProgram,
    f: Formula,
    g: Formula,
    *,
    atoms: Iterable[str] = (),
    max_atoms: int | None = None,
) -> bool:
    """For every SE-model (X, Y) of P: X |= F^Y iff X |= G^Y."""
    sig = joint_signature(p, atoms=set(atoms) | formula_atoms(f) | formula_atoms(g))
    universe = Universe(sig)
    positive = p.is_negation_free and not contains_negated(f) and not contains_negated(g)
    xs, ys = _se_masks(p, universe, positive, max_atoms)
    fv = kernels.eval_code(kernels.compile_formula(f, universe), xs, ys)
    gv = kernels.eval_code(kernels.compile_formula(g, universe), xs, ys)
    return bool(np.array_equal(fv, gv))


def _replace(node: Formula, old: Formula, new: Formula) -> Formula:
    if node == old:
        return new
    if isinstance(node, Not):
        return Not(_replace(node.arg, old, new))
    if isinstance(node, And):
        return And(_replace(node.left, old, new), _replace(node.right, old, new))
    if isinstance(node, Or):
        return Or(_replace(node.left, old, new), _replace(node.right, old, new))
    return node


def replace_regular(q: NestedProgram, old: Formula, new: Formula) -> NestedProgram:
    """Replace every regular occurrence of ``old`` by ``new``, outside-in.

    An atom under classical negation is part of a negative literal node, so
    it never matches a positive-literal pattern: irregular occurrences are
    skipped by construction.
    """
    rules = tuple(Rule(_replace(r.head, old, new), _replace(r.body, old, new)) for r in q.rules)
    return NestedProgram(rules, q.signature | formula_atoms(new))
