import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sequiv.errors import CapacityError
from sequiv.propositional import (
    Conj,
    Disj,
    Equiv,
    Impl,
    Neg,
    PAtom,
    PBot,
    PTop,
    first_model,
    format_prop,
    iter_models,
    not_equivalent,
    prop_models,
    to_cnf,
)

p, q = PAtom("p"), PAtom("q")

PROP_ATOMS = ("a", "b", "c", "d")


def prop_formulas(atoms=PROP_ATOMS, max_leaves=8):
    leaves = st.one_of(st.sampled_from(atoms).map(PAtom), st.just(PTop()), st.just(PBot()))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(Neg, sub),
            *(st.builds(c, sub, sub) for c in (Conj, Disj, Impl, Equiv)),
        ),
        max_leaves=max_leaves,
    )


def test_prop_models_examples():
    assert prop_models(Conj(p, Neg(p))) == []
    primed = PAtom("p__prime")
    assert prop_models(Impl(primed, p)) == [frozenset(), frozenset({"p"}), frozenset({"p", "p__prime"})]
    assert prop_models(PTop()) == [frozenset()]


def test_extra_atoms_widen_the_model_space():
    assert prop_models(p, atoms=["q"]) == [frozenset({"p"}), frozenset({"p", "q"})]


def test_capacity():
    big = Conj(PAtom("x0"), PTop())
    with pytest.raises(CapacityError):
        prop_models(big, atoms=[f"x{i}" for i in range(25)])
    with pytest.raises(CapacityError):
        prop_models(big, atoms=["x1", "x2"], max_atoms=2)


def test_unknown_method():
    with pytest.raises(ValueError):
        prop_models(p, method="sat")


def test_format_prop():
    assert format_prop(Impl(Conj(p, Neg(q)), PBot())) == "((p & ~q) -> F)"
    assert format_prop(Equiv(PTop(), p)) == "(T <-> p)"


def test_first_and_iter_models():
    f = Disj(p, q)
    assert first_model(f) == frozenset({"p"})
    assert first_model(Conj(p, Neg(p))) is None
    assert list(iter_models(f)) == prop_models(f)


@given(prop_formulas())
def test_methods_agree_with_truth_table_oracle(f):
    names = PROP_ATOMS
    want = oracles.prop_truth_table(f, names)
    assert prop_models(f, names) == want
    assert prop_models(f, names, method="truth-table") == want


@given(prop_formulas(), prop_formulas())
def test_not_equivalent_is_exclusive_or(a, b):
    for bits in itertools.product((0, 1), repeat=len(PROP_ATOMS)):
        true = {x for x, v in zip(PROP_ATOMS, bits) if v}
        assert oracles.prop_eval(not_equivalent(a, b), true) == (oracles.prop_eval(a, true) != oracles.prop_eval(b, true))


def _cnf_models(cnf):
    """Projections onto the atom variables of every model of the clauses."""
    out = set()
    for mask in range(1 << cnf.num_vars):
        val = lambda v: bool(mask >> (abs(v) - 1) & 1) == (v > 0)
        if all(any(val(l) for l in c) for c in cnf.clauses):
            out.add(frozenset(a for a, v in cnf.atom_vars.items() if mask >> (v - 1) & 1))
    return out


@given(prop_formulas(atoms=PROP_ATOMS[:3], max_leaves=5))
def test_cnf_projection_preserves_models(f):
    cnf = to_cnf(f, PROP_ATOMS[:3])
    assert _cnf_models(cnf) == set(oracles.prop_truth_table(f, PROP_ATOMS[:3]))


@given(prop_formulas(atoms=PROP_ATOMS[:3], max_leaves=5))
def test_cnf_auxiliaries_are_functional(f):
    # each model of the atoms extends to exactly one model of the clauses
    cnf = to_cnf(f, PROP_ATOMS[:3])
    counts = {}
    for mask in range(1 << cnf.num_vars):
        val = lambda v: bool(mask >> (abs(v) - 1) & 1) == (v > 0)
        if all(any(val(l) for l in c) for c in cnf.clauses):
            key = mask & ((1 << len(cnf.atom_vars)) - 1)
            counts[key] = counts.get(key, 0) + 1
    assert all(n == 1 for n in counts.values())


def test_dimacs_layout():
    cnf = to_cnf(Disj(p, Neg(q)))
    text = cnf.dimacs()
    lines = text.splitlines()
    assert lines[:2] == ["c var 1 p", "c var 2 q"]
    assert lines[2] == f"p cnf {cnf.num_vars} {len(cnf.clauses)}"
    assert all(line.endswith(" 0") for line in lines[3:])
    assert len(lines) == 3 + len(cnf.clauses)
    side = cnf.sidecar().splitlines()
    assert side == ["3 ~q", "4 (p | ~q)"]


def test_shared_subformulas_get_one_variable():
    g = Conj(p, q)
    cnf = to_cnf(Disj(g, Neg(g)))
    assert [text for _, text in cnf.aux].count("(p & q)") == 1
