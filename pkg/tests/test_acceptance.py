"""Acceptance criteria, one test each, with their tolerances and time limits.

Every criterion also prints a single ``PASS``/``FAIL`` line. Run the module
directly (``python3 tests/test_acceptance.py``) for just those lines.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import programs as ex  # noqa: E402
from sequiv import kernels  # noqa: E402
from sequiv.encodings import (  # noqa: E402
    augmented_atoms,
    encode_pair,
    nested_to_wcp,
    not_encode,
    or_combine,
    pl_program,
    strongly_equivalent_via_pl,
    strongly_equivalent_via_wc,
    wc_encode,
)
from sequiv.equivalence import (  # noqa: E402
    CASE_SUBSET_BREAKS,
    SEModel,
    equivalent,
    is_se_model,
    positive_projection_agrees,
    program_answer_sets,
    se_models,
    strongly_equivalent_direct,
)
from sequiv.generate import (  # noqa: E402
    atom_names,
    random_nested_program,
    random_simple_program,
    random_wcp_program,
)
from sequiv.literals import Literal, lits  # noqa: E402
from sequiv.nested import NestedProgram, Not, Rule, TOP  # noqa: E402
from sequiv.propositional import prop_models  # noqa: E402
from sequiv.wcp import satisfies_wcp_program, wcp_answer_sets  # noqa: E402

SEED = 20240601
INSTANCES = 500
RESULTS: dict[str, tuple[bool, str]] = {}


def _record(name: str, ok: bool, detail: str) -> None:
    RESULTS[name] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}", flush=True)


def _pairs(models):
    return {(m.here, m.there) for m in models}


# -- criterion bodies --------------------------------------------------------


_WARMED = []


def _warm() -> str:
    """Compile the enumeration kernels once, outside every timed region."""
    if _WARMED:
        return ""
    _WARMED.append(kernels.warm_up())
    return f"; one-time kernel compilation {_WARMED[0]:.2f}s ({kernels.backend().NAME}) excluded"


def criterion_1():
    warm = _warm()
    t0 = time.perf_counter()
    p1, p2 = ex.nested(ex.DISJ_CONSTRAINT), ex.nested(ex.LOOP_CONSTRAINT)
    direct = strongly_equivalent_direct(p1, p2)
    pl = strongly_equivalent_via_pl(p1, p2)
    same = _pairs(se_models(p1)) == _pairs(se_models(p2))
    elapsed = time.perf_counter() - t0
    ok = direct.equivalent and pl.equivalent and same and elapsed < 1
    return ok, f"direct={direct.equivalent} pl={pl.equivalent} same SE-models={same} in {elapsed:.3f}s (< 1s){warm}"


def criterion_2():
    _warm()
    t0 = time.perf_counter()
    choice, loop = ex.wcp(ex.CHOICE), ex.wcp(ex.LOOP_CONSTRAINT)
    direct = strongly_equivalent_direct(choice, loop)
    wc = strongly_equivalent_via_wc(choice, loop)
    elapsed = time.perf_counter() - t0
    ok = direct.equivalent and wc.equivalent and elapsed < 5
    return ok, f"direct={direct.equivalent} wc={wc.equivalent} in {elapsed:.3f}s (< 5s)"


def criterion_3():
    _warm()
    t0 = time.perf_counter()
    p, q = ex.queens_pair(4)
    verdict = strongly_equivalent_direct(p, q, witness=False)
    columns = se_models(ex.wcp(ex.queens_q1(4)), positive_only=True)
    want = set()
    for rows in itertools.product(range(1, 5), repeat=4):
        x = lits(*(ex.q(i, j) for j, i in enumerate(rows, start=1)))
        want.add((x, x))
    shape = _pairs(columns) == want and len(columns) == 256
    elapsed = time.perf_counter() - t0
    ok = verdict.equivalent and shape and elapsed < 60
    return ok, f"strongly equivalent={verdict.equivalent}, q1 SE-models exactly 256 (X,X)={shape} in {elapsed:.2f}s (< 60s)"


def criterion_4():
    _warm()
    t0 = time.perf_counter()
    disj, loop = ex.nested(ex.DISJ), ex.nested(ex.EVEN_LOOP)
    eq = equivalent(disj, loop)
    both = program_answer_sets(disj) == program_answer_sets(loop) == [lits("p"), lits("q")]
    v = strongly_equivalent_direct(disj, loop)
    ctx = v.witness
    pq = lits("p", "q")
    sound = (
        ctx is not None
        and ctx.case == CASE_SUBSET_BREAKS
        and ctx.separating_set == pq
        and pq in program_answer_sets(disj.union(ctx.context_program))
        and pq not in program_answer_sets(loop.union(ctx.context_program))
    )
    mismatch = v.mismatch == SEModel(frozenset(), pq)
    elapsed = time.perf_counter() - t0
    ok = eq and both and not v.equivalent and mismatch and sound and elapsed < 1
    return ok, f"equiv={eq}, strong={v.equivalent}, mismatch (∅,{{p,q}})={mismatch}, witness verified={sound} in {elapsed:.3f}s (< 1s)"


def _sizes(rng, lo=1, hi=5):
    return atom_names(rng.randint(lo, hi))


def suite_a(rng):
    bad = 0
    for _ in range(INSTANCES):
        atoms = _sizes(rng)
        prog = random_nested_program(rng, atoms, 6)
        models = set(prop_models(pl_program(prog), augmented_atoms(atoms)))
        encoded = {encode_pair(m) for m in se_models(prog, positive_only=True)}
        bad += models != {frozenset(m) for m in encoded}
    return bad


def suite_b(rng):
    bad = 0
    for _ in range(INSTANCES):
        atoms = _sizes(rng)
        prog = random_wcp_program(rng, atoms, 6)
        enc = wc_encode(prog)
        answer = {frozenset(l.atom for l in z) for z in wcp_answer_sets(enc, method="search")}
        names = sorted(enc.signature)
        sat = set()
        for k in range(len(names) + 1):
            for combo in itertools.combinations(names, k):
                if satisfies_wcp_program(frozenset(Literal(a) for a in combo), enc):
                    sat.add(frozenset(combo))
        se = {encode_pair(m) for m in se_models(prog, positive_only=True)}
        bad += not (answer == sat == se)
    return bad


def suite_c(rng):
    bad = 0
    for _ in range(INSTANCES):
        atoms = _sizes(rng, 1, 4)
        prog = random_wcp_program(rng, atoms, 6)
        got = {frozenset(l for l in z if l.atom in atoms) for z in wcp_answer_sets(not_encode(prog), method="search")}
        want = set()
        for k in range(len(atoms) + 1):
            for combo in itertools.combinations(atoms, k):
                x = frozenset(Literal(a) for a in combo)
                if not satisfies_wcp_program(x, prog):
                    want.add(x)
        bad += got != want
    return bad


def suite_d(rng):
    bad = 0
    for _ in range(INSTANCES):
        atoms = _sizes(rng)
        p, q = random_wcp_program(rng, atoms, 6), random_wcp_program(rng, atoms, 6)
        combined = bool(wcp_answer_sets(or_combine(p, q), method="search", limit=1))
        bad += combined != (bool(wcp_answer_sets(p)) or bool(wcp_answer_sets(q)))
    return bad


def suite_e(rng):
    bad = 0
    for _ in range(INSTANCES):
        atoms = _sizes(rng)
        if rng.random() < 0.5:
            p, q = random_wcp_program(rng, atoms, 6), random_wcp_program(rng, atoms, 6)
            if rng.random() < 0.3:
                q = p.union(random_wcp_program(rng, atoms, 1))
            verdicts = [strongly_equivalent_direct(p, q, witness=False), strongly_equivalent_via_wc(p, q, witness=False)]
        else:
            p, q = random_simple_program(rng, atoms, 6), random_simple_program(rng, atoms, 6)
            if rng.random() < 0.3:
                q = NestedProgram(p.rules + random_simple_program(rng, atoms, 1).rules, p.signature)
            verdicts = [
                strongly_equivalent_direct(p, q, witness=False),
                strongly_equivalent_via_pl(p, q, witness=False),
                strongly_equivalent_via_wc(nested_to_wcp(p), nested_to_wcp(q), witness=False),
            ]
        bad += len({(v.equivalent, v.mismatch, v.mismatch_in) for v in verdicts}) != 1
    return bad


def criterion_5():
    t0 = time.perf_counter()
    counts = {}
    for name, suite in [("a", suite_a), ("b", suite_b), ("c", suite_c), ("d", suite_d), ("e", suite_e)]:
        start = time.perf_counter()
        counts[name] = (suite(random.Random(f"{SEED}-{name}")), time.perf_counter() - start)
    elapsed = time.perf_counter() - t0
    ok = all(v == 0 for v, _ in counts.values()) and elapsed < 300
    parts = ", ".join(f"({k}) {v} violations/{t:.0f}s" for k, (v, t) in counts.items())
    return ok, f"{INSTANCES} instances each: {parts}; total {elapsed:.0f}s (< 300s)"


def criterion_6():
    t0 = time.perf_counter()
    rng = random.Random(f"{SEED}-lemmas")
    violations = {"same SE-models": 0, "union": 0, "projection": 0, "unique (Y,Y)": 0}
    same_se = 0
    for _ in range(INSTANCES):
        atoms = _sizes(rng, 1, 4)
        p = random_nested_program(rng, atoms, 4, negation=True)
        r = random_nested_program(rng, atoms, 2, negation=True)
        q = p.union(r) if rng.random() < 0.5 else random_nested_program(rng, atoms, 4, negation=True)
        sp, sq, sr = _pairs(se_models(p)), _pairs(se_models(q)), _pairs(se_models(r))
        if sp == sq:
            same_se += 1
            violations["same SE-models"] += set(program_answer_sets(p)) != set(program_answer_sets(q))
        violations["union"] += _pairs(se_models(p.union(r))) != sp & sr
        totals = {}
        for x, y in sp:
            totals.setdefault(y, []).append(x)
        unique = {y for y, xs in totals.items() if xs == [y]}
        violations["unique (Y,Y)"] += unique != set(program_answer_sets(p))
        positive = random_nested_program(rng, atoms, 4)
        universe = [frozenset(c) for k in range(len(atoms) + 1) for c in itertools.combinations(atoms, k)]
        for there_atoms in universe:
            for neg in itertools.product((False, True), repeat=len(atoms)):
                y = frozenset(Literal(a) for a in there_atoms) | frozenset(
                    Literal(a, True) for a, n in zip(atoms, neg) if n and a not in there_atoms
                )
                here = [frozenset(c) for k in range(len(y) + 1) for c in itertools.combinations(sorted(y), k)]
                for x in here:
                    violations["projection"] += not positive_projection_agrees(positive, SEModel(x, y))
    elapsed = time.perf_counter() - t0
    ok = not any(violations.values())
    detail = ", ".join(f"{k} {v}" for k, v in violations.items())
    return ok, f"{INSTANCES} pairs over <= 4 atoms: {detail} violations ({same_se} pairs shared SE-models) in {elapsed:.0f}s"


def criterion_7():
    t0 = time.perf_counter()
    p, q = Literal("p"), Literal("q")
    heads = [p, q, Not(p), Not(q)]
    bodies = [p, q, Not(p), Not(q), TOP]
    pool = [Rule(h, b) for h in heads for b in bodies]
    target = ex.nested(ex.DISJ)
    checked = counterexamples = 0
    for k in range(4):
        for rules in itertools.combinations(pool, k):
            prog = NestedProgram(tuple(rules), frozenset({"p", "q"}))
            checked += 1
            counterexamples += strongly_equivalent_direct(prog, target, witness=False).equivalent
    elapsed = time.perf_counter() - t0
    ok = len(pool) == 20 and counterexamples == 0 and elapsed < 120
    return ok, f"{checked} programs from the 20-rule pool, {counterexamples} strongly equivalent to {{p ; q.}} in {elapsed:.1f}s (< 120s)"


def criterion_8():
    # not a measurement: the hardness results show up only as enumeration caps
    from sequiv.nested import DEFAULT_MAX_ATOMS, DEFAULT_MAX_ATOMS_POSITIVE
    from sequiv.propositional import DEFAULT_MAX_ATOMS as PROP_MAX

    ok = (DEFAULT_MAX_ATOMS, DEFAULT_MAX_ATOMS_POSITIVE) == (12, 16)
    return ok, (
        f"documentation only; brute-force caps are {DEFAULT_MAX_ATOMS} atoms general, "
        f"{DEFAULT_MAX_ATOMS_POSITIVE} atom-only, {PROP_MAX} propositional"
    )


CRITERIA = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4": criterion_4,
    "5": criterion_5,
    "6": criterion_6,
    "7": criterion_7,
    "8": criterion_8,
}


# -- pytest entry points ----------------------------------------------------


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is None:
        return
    reporter.write_line("")
    for name in CRITERIA:
        if name in RESULTS:
            ok, detail = RESULTS[name]
            reporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    ok, detail = CRITERIA[name]()
    _record(name, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for name, fn in CRITERIA.items():
        ok, detail = fn()
        _record(name, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
