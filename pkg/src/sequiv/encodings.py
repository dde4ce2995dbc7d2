"""Reductions of strong equivalence to propositional unsatisfiability and to
inconsistency of a weight constraint program.

Both pipelines work on programs without classical negation. Interpretations
of the augmented language (every atom ``a`` doubled by ``a__prime``) decode to
pairs ``(new, old)``: ``old`` holds the original atoms that are true and
``new`` the atoms whose primed twin is true.
"""

from __future__ import annotations

import hashlib
import logging
from typing import Iterable

from .equivalence import (
    SEModel,
    Verdict,
    distinguishing_context,
    is_se_model,
    joint_signature,
    verify_context,
)
from .errors import NegationError
from .literals import PRIME_SUFFIX, Literal
from .nested import And, Bottom, Formula, NestedProgram, Not, Or, Rule, Top
from .printer import format_constraint
from .propositional import (
    DEFAULT_MAX_ATOMS as PROP_MAX_ATOMS,
    Conj,
    Disj,
    Impl,
    Neg,
    PAtom,
    PBot,
    PropFormula,
    PTop,
    backtrack_masks,
    conjunction,
    evaluate,
    not_equivalent,
    ordered_atoms,
)
from .wcp import (
    BOTTOM,
    NEG_INF,
    POS_INF,
    RuleElement,
    WcpProgram,
    WcpRule,
    WeightConstraint,
    satisfies_wcp_program,
    singleton,
    wcp_answer_sets,
)

log = logging.getLogger(__name__)

WITNESS = "__witness"
SELECTORS = ("__selp", "__selq")


def prime_name(atom: str) -> str:
    return atom + PRIME_SUFFIX


def unprime_name(atom: str) -> str | None:
    return atom[: -len(PRIME_SUFFIX)] if atom.endswith(PRIME_SUFFIX) else None


def _require_negation_free(*programs) -> None:
    for p in programs:
        if not p.is_negation_free:
            raise NegationError("the encodings apply to programs without classical negation")


def decode_pair(true_atoms: Iterable[str], atoms: Iterable[str]) -> SEModel:
    """``(new, old)`` for an interpretation of the augmented language."""
    true_atoms = set(true_atoms)
    old = frozenset(Literal(a) for a in atoms if a in true_atoms)
    new = frozenset(Literal(a) for a in atoms if prime_name(a) in true_atoms)
    return SEModel(new, old)


def encode_pair(pair: SEModel) -> frozenset[str]:
    return frozenset(l.atom for l in pair.there) | frozenset(prime_name(l.atom) for l in pair.here)


# -- classical encoding ----------------------------------------------------


def pl_formula(f: Formula) -> PropFormula:
    if isinstance(f, Literal):
        if f.negated:
            raise NegationError("classical negation cannot be encoded")
        return PAtom(f.atom)
    if isinstance(f, Top):
        return PTop()
    if isinstance(f, Bottom):
        return PBot()
    if isinstance(f, Not):
        return Neg(pl_formula(f.arg))
    if isinstance(f, And):
        return Conj(pl_formula(f.left), pl_formula(f.right))
    if isinstance(f, Or):
        return Disj(pl_formula(f.left), pl_formula(f.right))
    raise TypeError(f"not a formula: {f!r}")


def pl_rule(r: Rule) -> PropFormula:
    return Impl(pl_formula(r.body), pl_formula(r.head))


def prime(f: PropFormula) -> PropFormula:
    """Prime every atom occurrence outside the scope of negation."""
    if isinstance(f, PAtom):
        return PAtom(prime_name(f.name))
    if isinstance(f, Neg):
        return f
    if isinstance(f, (Conj, Disj, Impl)):
        return type(f)(prime(f.left), prime(f.right))
    if isinstance(f, (PTop, PBot)):
        return f
    raise TypeError(f"cannot prime {f!r}")


def pl_program(p: NestedProgram, atoms: Iterable[str] = ()) -> PropFormula:
    _require_negation_free(p)
    parts = [pl_rule(r) for r in p.rules]
    parts = [f.right if isinstance(f, Impl) and isinstance(f.left, PTop) else f for f in parts]
    primed = [prime(f) for f in parts]
    sig = sorted(p.signature | set(atoms))
    axioms = [Impl(PAtom(prime_name(a)), PAtom(a)) for a in sig]
    return conjunction(parts + primed + axioms)


def augmented_atoms(atoms: Iterable[str]) -> tuple[str, ...]:
    atoms = sorted(atoms)
    return tuple(sorted(atoms + [prime_name(a) for a in atoms]))


def strongly_equivalent_via_pl(
    p: NestedProgram,
    q: NestedProgram,
    *,
    atoms: Iterable[str] = (),
    max_atoms: int = PROP_MAX_ATOMS,
    minimal: bool = True,
    witness: bool = True,
) -> Verdict:
    """Strongly equivalent iff ``pl(P) xor pl(Q)`` has no model.

    A model decodes to an SE-model of exactly one program. With ``minimal``
    every model is visited and the least mismatch in the usual pair order is
    reported, matching the direct method; otherwise the first model is used.
    """
    _require_negation_free(p, q)
    sig = joint_signature(p, q, atoms=atoms)
    fp, fq = pl_program(p, sig), pl_program(q, sig)
    phi = not_equivalent(fp, fq)
    names = ordered_atoms(phi, augmented_atoms(sig), max_atoms)
    best = None
    for mask in backtrack_masks(phi, names):
        true_atoms = {a for i, a in enumerate(names) if mask >> i & 1}
        pair = decode_pair(true_atoms, sig)
        side = "first" if evaluate(fp, true_atoms) else "second"
        if best is None or pair.key() < best[0].key():
            best = (pair, side)
        if not minimal:
            break
    if best is None:
        return Verdict(True, "pl")
    return _verdict(p, q, sig, *best, method="pl", witness=witness)


def _verdict(p, q, sig, pair: SEModel, side: str, *, method: str, witness: bool) -> Verdict:
    ctx = None
    if witness:
        has, lacks = (p, q) if side == "first" else (q, p)
        ctx = distinguishing_context(pair, has, lacks, first_has=(side == "first"))
        verify_context(p, q, ctx, atoms=sig)
    return Verdict(False, method, pair, side, ctx)


# -- weight constraint encoding --------------------------------------------


def _prime_element(e: RuleElement) -> RuleElement:
    if e.negative:
        return e
    return RuleElement(Literal(prime_name(e.literal.atom)), False)


def prime_constraint(c: WeightConstraint) -> WeightConstraint:
    """Prime the atoms of the positive elements; ``not`` elements keep old atoms."""
    return WeightConstraint(c.lower, tuple((_prime_element(e), w) for e, w in c.elements), c.upper)


def choice(atom: str) -> WeightConstraint:
    """``0 <= {atom} <= 1``: makes the atom freely choosable."""
    return WeightConstraint(0, ((RuleElement(Literal(atom)), 1),), 1)


def _reduct_rules(r: WcpRule) -> list[WcpRule]:
    """Rules forcing ``X |= P^Y`` with ``X`` primed and ``Y`` unprimed.

    For each head literal ``a`` of ``r``: ``a' <- a, upper halves over Y,
    lower halves with positive elements over X and negative ones over Y``.
    """
    body = []
    for c in r.body:
        if c.upper != POS_INF:
            body.append(WeightConstraint(NEG_INF, c.elements, c.upper))
    for c in r.body:
        if c.lower != NEG_INF:
            body.append(prime_constraint(WeightConstraint(c.lower, c.elements, POS_INF)))
    return [
        WcpRule(singleton(prime_name(lit.atom)), (singleton(lit), *body)) for lit in r.head.literals
    ]


def wc_encode(p: WcpProgram, atoms: Iterable[str] = (), *, variant: str = "exact") -> WcpProgram:
    """A program whose answer sets are its models and decode to the SE-models of ``p``.

    ``variant="literal"`` adds the plain primed copy of ``p`` instead of the
    reduct rules. That copy ignores which head atoms hold in the there-set
    and keeps upper bounds over here-atoms, so it admits spurious pairs such
    as ``({}, {a})`` for the choice rule ``{a}``; it is kept for comparison.
    """
    _require_negation_free(p)
    sig = sorted(p.signature | set(atoms))
    rules = list(p.rules)
    if variant == "literal":
        rules += [WcpRule(prime_constraint(r.head), tuple(prime_constraint(c) for c in r.body)) for r in p.rules]
    elif variant == "exact":
        for r in p.rules:
            rules += _reduct_rules(r)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    for a in sig:
        rules.append(WcpRule(BOTTOM, (singleton(prime_name(a)), singleton(RuleElement(Literal(a), True)))))
        rules.append(WcpRule(choice(a)))
        rules.append(WcpRule(choice(prime_name(a))))
    return WcpProgram(tuple(rules), frozenset(sig) | {prime_name(a) for a in sig})


def head_atom(c: WeightConstraint) -> str:
    digest = hashlib.sha1(format_constraint(c).encode()).hexdigest()[:10]
    return "h__" + digest


def not_encode(p: WcpProgram, atoms: Iterable[str] = ()) -> WcpProgram:
    """Answer sets restricted to the language of ``p`` are exactly the sets falsifying ``p``."""
    _require_negation_free(p)
    sig = sorted(p.signature | set(atoms))
    rules: list[WcpRule] = []
    seen: set[WeightConstraint] = set()
    for r in p.rules:
        h = head_atom(r.head)
        if r.head not in seen:
            seen.add(r.head)
            rules.append(WcpRule(singleton(h), (r.head,)))
        rules.append(WcpRule(singleton(WITNESS), (singleton(RuleElement(Literal(h), True)), *r.body)))
    rules += [WcpRule(choice(a)) for a in sig]
    rules.append(WcpRule(BOTTOM, (singleton(RuleElement(Literal(WITNESS), True)),)))
    return WcpProgram(tuple(rules), frozenset(sig) | {WITNESS})


def selector_names(p: WcpProgram, q: WcpProgram) -> tuple[str, str]:
    """Fresh selector atoms, renamed with a numeric suffix if either is taken."""
    taken = p.signature | q.signature
    out = []
    for base in SELECTORS:
        name, k = base, 1
        while name in taken:
            name = f"{base}{k}"
            k += 1
        if name != base:
            log.warning("selector atom %s already in use; renamed to %s", base, name)
        out.append(name)
    return out[0], out[1]


def or_combine(p: WcpProgram, q: WcpProgram) -> WcpProgram:
    """Consistent iff at least one of ``p``, ``q`` is."""
    sp, sq = selector_names(p, q)
    rules = [WcpRule(r.head, (*r.body, singleton(sp))) for r in p.rules]
    rules += [WcpRule(r.head, (*r.body, singleton(sq))) for r in q.rules]
    rules.append(WcpRule(WeightConstraint(1, ((RuleElement(Literal(sp)), 1), (RuleElement(Literal(sq)), 1)), 1)))
    return WcpProgram(tuple(rules), p.signature | q.signature | {sp, sq})


def composed_program(
    p: WcpProgram, q: WcpProgram, *, atoms: Iterable[str] = (), variant: str = "exact"
) -> WcpProgram:
    """``or(not(wc(P)) + wc(Q), wc(P) + not(wc(Q)))``: inconsistent iff strongly equivalent."""
    _require_negation_free(p, q)
    sig = joint_signature(p, q, atoms=atoms)
    wp, wq = wc_encode(p, sig, variant=variant), wc_encode(q, sig, variant=variant)
    return or_combine(not_encode(wp).union(wq), wp.union(not_encode(wq)))


def strongly_equivalent_via_wc(
    p: WcpProgram,
    q: WcpProgram,
    *,
    atoms: Iterable[str] = (),
    minimal: bool = True,
    witness: bool = True,
    variant: str = "exact",
) -> Verdict:
    """Decide strong equivalence by searching for an answer set of the composed program.

    An answer set picks one branch: with the first selector true the pair is
    an SE-model of ``q`` but not of ``p``, and conversely.
    """
    _require_negation_free(p, q)
    sig = joint_signature(p, q, atoms=atoms)
    wp, wq = wc_encode(p, sig, variant=variant), wc_encode(q, sig, variant=variant)
    left, right = not_encode(wp).union(wq), wp.union(not_encode(wq))
    sp, _ = selector_names(left, right)
    composed = or_combine(left, right)
    found = wcp_answer_sets(composed, method="search", limit=None if minimal else 1)
    if not found:
        return Verdict(True, "wc")
    best = None
    for z in found:
        atoms_true = {l.atom for l in z}
        pair = decode_pair(atoms_true, sig)
        side = "second" if sp in atoms_true else "first"
        if best is None or pair.key() < best[0].key():
            best = (pair, side)
    return _verdict(p, q, sig, *best, method="wc", witness=witness)


def wc_models(p: WcpProgram, atoms: Iterable[str] = (), *, variant: str = "exact") -> list[SEModel]:
    """Decoded models of ``wc(p)``, checked by exhaustive enumeration."""
    from .literals import Universe

    enc = wc_encode(p, atoms, variant=variant)
    universe = Universe(enc.signature)
    sig = sorted(p.signature | set(atoms))
    out = []
    for mask in range(1 << universe.n):
        x = universe.from_mask(mask)
        if satisfies_wcp_program(x, enc):
            out.append(decode_pair({l.atom for l in x}, sig))
    return sorted(out, key=SEModel.key)


# -- nested programs as weight constraint programs -------------------------


def _wcp_body_item(f: Formula) -> WeightConstraint:
    if isinstance(f, Literal):
        return singleton(f)
    if isinstance(f, Bottom):
        return BOTTOM
    if isinstance(f, Not) and isinstance(f.arg, Literal):
        return singleton(RuleElement(f.arg, True))
    if isinstance(f, Not) and isinstance(f.arg, Not) and isinstance(f.arg.arg, Literal):
        # not not a: the weight of "not a" is at most 0, checked against Y only
        return WeightConstraint(NEG_INF, ((RuleElement(f.arg.arg, True), 1),), 0)
    raise ValueError(f"body item {f} has no weight constraint counterpart")


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    if isinstance(f, Top):
        return []
    return [f]


def nested_to_wcp(p: NestedProgram) -> WcpProgram:
    """Translate a nondisjunctive program with simple bodies into weight constraints.

    Heads may be a literal, ``bot`` or ``not l``; bodies conjunctions of
    literals, ``not l``, ``not not l``, ``top`` and ``bot``. The result is
    strongly equivalent to ``p`` over the same signature.
    """
    rules = []
    for r in p.rules:
        body = [_wcp_body_item(f) for f in _conjuncts(r.body)]
        head = r.head
        if isinstance(head, Literal):
            rules.append(WcpRule(singleton(head), tuple(body)))
        elif isinstance(head, Bottom):
            rules.append(WcpRule(BOTTOM, tuple(body)))
        elif isinstance(head, Top):
            continue
        elif isinstance(head, Not) and isinstance(head.arg, Literal):
            # not l <- G has the SE-models of bot <- not not l, G
            rules.append(WcpRule(BOTTOM, (_wcp_body_item(Not(head)), *body)))
        else:
            raise ValueError(f"rule head {head} has no weight constraint counterpart")
    return WcpProgram(tuple(rules), p.signature)


__all__ = [
    "WITNESS",
    "SELECTORS",
    "prime_name",
    "unprime_name",
    "decode_pair",
    "encode_pair",
    "pl_formula",
    "pl_rule",
    "prime",
    "pl_program",
    "augmented_atoms",
    "strongly_equivalent_via_pl",
    "prime_constraint",
    "choice",
    "wc_encode",
    "head_atom",
    "not_encode",
    "selector_names",
    "or_combine",
    "composed_program",
    "strongly_equivalent_via_wc",
    "wc_models",
    "nested_to_wcp",
]
