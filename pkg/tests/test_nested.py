import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
import strategies as S
from sequiv.errors import CapacityError
from sequiv.literals import Literal, lits
from sequiv.nested import (
    BOT,
    TOP,
    And,
    NestedProgram,
    Not,
    Or,
    Rule,
    answer_sets,
    conj,
    contains_not,
    disj,
    program,
    reduct_formula,
    reduct_program,
    satisfies_formula,
    satisfies_program,
    satisfies_rule,
)
from sequiv.parser import parse_nested

p, q, r = Literal("p"), Literal("q"), Literal("r")


def test_satisfies_formula_examples():
    assert satisfies_formula(lits("p"), Or(p, q))
    assert not satisfies_formula(lits("p"), Not(p))
    assert satisfies_formula(lits("-a"), Literal("a", True))


def test_satisfies_rule_examples():
    assert satisfies_rule(frozenset(), Rule(p, q))
    assert not satisfies_rule(lits("q"), Rule(p, q))
    assert not satisfies_rule(lits("p", "q"), Rule(BOT, And(p, q)))


def test_satisfies_program_examples():
    prog = parse_nested("p ; q. bot :- p, q.")
    assert satisfies_program(lits("p"), prog)
    assert not satisfies_program(lits("p", "q"), prog)
    assert satisfies_program(frozenset(), NestedProgram(()))


def test_reduct_formula_examples():
    assert reduct_formula(Not(p), lits("p")) == BOT
    assert reduct_formula(Not(Not(p)), frozenset()) == BOT
    assert reduct_formula(Not(Not(p)), lits("p")) == TOP
    assert reduct_formula(And(p, Not(q)), lits("p")) == And(p, TOP)


def test_reduct_program_examples():
    prog = program(Rule(p, Not(q)))
    assert reduct_program(prog, lits("p")).rules == (Rule(p, TOP),)
    assert reduct_program(prog, lits("p", "q")).rules == (Rule(p, BOT),)
    disjunction = program(Or(p, q))
    assert reduct_program(disjunction, lits("p", "q")).rules == (Rule(Or(p, q), TOP),)


def test_answer_set_examples():
    assert answer_sets(parse_nested("p ; q.")) == [lits("p"), lits("q")]
    assert answer_sets(parse_nested("p :- not q. q :- not p.")) == [lits("p"), lits("q")]
    assert answer_sets(NestedProgram(())) == [frozenset()]


def test_answer_sets_with_classical_negation():
    prog = parse_nested("-p :- not p. q :- -p.")
    assert answer_sets(prog) == [lits("-p", "q")]
    # inconsistent sets are never answer sets
    assert answer_sets(parse_nested("p. -p.")) == []


def test_answer_sets_nested_double_negation():
    # p :- not not p makes p optional
    assert answer_sets(parse_nested("p :- not not p.")) == [frozenset(), lits("p")]


def test_signature_closure_and_flags():
    prog = parse_nested("p ; q :- not -r.", atoms=["s"])
    assert prog.signature == {"p", "q", "r", "s"}
    assert not prog.is_negation_free
    assert not prog.is_nondisjunctive
    assert parse_nested("not p :- q. r.").is_nondisjunctive


def test_right_folding():
    assert conj(p, q, r) == And(p, And(q, r))
    assert disj(p, q, r) == Or(p, Or(q, r))
    assert conj() == TOP and disj() == BOT


def test_answer_set_cap():
    atoms = [f"a{i}" for i in range(13)]
    with pytest.raises(CapacityError):
        answer_sets(parse_nested("a0 :- not a0. -a1.", atoms=atoms))


def test_answer_set_cap_is_configurable():
    atoms = [f"a{i}" for i in range(5)]
    prog = parse_nested("a0 :- not a1.", atoms=atoms)
    with pytest.raises(CapacityError):
        answer_sets(prog, max_atoms=4)
    assert answer_sets(prog, max_atoms=5) == [lits("a0")]


@given(S.formulas(negation=True), st.sets(S.literals(negation=True)))
def test_reduct_has_no_not(f, x):
    assert not contains_not(reduct_formula(f, frozenset(x)))


@given(S.not_free_formulas(), st.sets(S.literals()), st.sets(S.literals()))
def test_not_free_satisfaction_is_monotone(f, x, extra):
    x = frozenset(x)
    y = x | frozenset(extra)
    if satisfies_formula(x, f):
        assert satisfies_formula(y, f)


@given(S.nested_programs(negation=True), st.data())
def test_fixpoint_coherence(prog, data):
    x = data.draw(st.sampled_from(oracles.consistent_sets(prog.signature)))
    assert satisfies_program(x, prog) == satisfies_program(x, reduct_program(prog, x))


@given(S.nested_programs(negation=True))
def test_answer_sets_satisfy_program(prog):
    for x in answer_sets(prog):
        assert satisfies_program(x, prog)


@given(S.nested_programs(negation=True))
def test_answer_sets_match_oracle(prog):
    assert set(answer_sets(prog)) == oracles.nested_answer_sets(prog)


@given(S.nested_programs(atoms=S.ATOMS[:2], negation=True, max_rules=3))
def test_answer_sets_are_sorted(prog):
    found = answer_sets(prog)
    assert found == sorted(found, key=lambda s: (len(s), sorted(s)))


def _nondisjunctive_not_free(atoms):
    head = S.elementary(atoms)
    return st.lists(st.builds(Rule, head, S.not_free_formulas(atoms, 4)), max_size=6).map(
        lambda rs: NestedProgram(tuple(rs), frozenset(atoms))
    )


@given(st.integers(1, 6).flatmap(lambda n: _nondisjunctive_not_free(tuple(f"a{i}" for i in range(n)))))
def test_models_closed_under_intersection(prog):
    models = [y for y in oracles.consistent_sets(prog.signature, positive_only=True) if satisfies_program(y, prog)]
    model_set = set(models)
    for a in models:
        for b in models:
            assert (a & b) in model_set
