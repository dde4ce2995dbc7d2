import json
import shutil
import subprocess
import sys

import pytest

import programs as ex
from sequiv.cli import main


@pytest.fixture
def files(tmp_path):
    texts = {
        "p1.lp": ex.DISJ_CONSTRAINT,
        "p2.lp": ex.LOOP_CONSTRAINT,
        "disj.lp": ex.DISJ,
        "evenloop.lp": ex.EVEN_LOOP,
        "p3.lp": ex.MUTUAL,
        "choice.wcp": ex.CHOICE,
        "evenloop.wcp": ex.LOOP_CONSTRAINT,
        "loop.wcp": ex.EVEN_LOOP,
        "neg.lp": "-p :- not p.",
        "bad.lp": "p :- q\n",
    }
    for name, text in texts.items():
        (tmp_path / name).write_text(text)
    return lambda name: str(tmp_path / name)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_strong_equiv_all_methods_on_p1_p2(capsys, files):
    code, out, _ = run(capsys, "strong-equiv", "--method", "all", files("p1.lp"), files("p2.lp"))
    assert code == 0
    assert "strongly equivalent: yes" in out
    # disjunctive heads have no weight constraint translation
    assert "methods: direct, pl" in out.splitlines()


def test_strong_equiv_choice_rule(capsys, files):
    code, out, _ = run(capsys, "strong-equiv", files("choice.wcp"), files("evenloop.wcp"))
    assert code == 0
    code, out, _ = run(capsys, "strong-equiv", "--method", "wc", files("choice.wcp"), files("evenloop.wcp"))
    assert code == 0


def test_strong_equiv_witness(capsys, files):
    code, out, _ = run(capsys, "strong-equiv", files("disj.lp"), files("evenloop.lp"), "--witness")
    assert code == 1
    assert "strongly equivalent: no" in out
    assert "mismatch: ({}, {p, q})" in out
    assert "separating set: {p, q}" in out
    lines = out.splitlines()
    ctx = lines[lines.index("context program:") + 1 :]
    assert sorted(l.strip() for l in ctx) == ["p :- q.", "q :- p."]


def test_witness_agrees_across_methods(capsys, files):
    for method in ("direct", "pl"):
        code, out, _ = run(capsys, "strong-equiv", "--method", method, "--witness", files("disj.lp"), files("evenloop.lp"))
        assert code == 1 and "separating set: {p, q}" in out
    assert run(capsys, "strong-equiv", "--method", "wc", files("disj.lp"), files("evenloop.lp"))[0] == 2
    for method in ("direct", "wc", "all"):
        code, out, _ = run(capsys, "strong-equiv", "--method", method, "--witness", files("choice.wcp"), files("loop.wcp"))
        assert code == 1 and "separating set: {p, q}" in out


def test_json_report(capsys, files):
    code, out, _ = run(capsys, "strong-equiv", "--json", "--witness", files("disj.lp"), files("evenloop.lp"))
    assert code == 1
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["strongly_equivalent"] is False
    assert report["mismatch"] == {"here": [], "there": ["p", "q"], "se_model_of": "second"}
    assert report["witness"]["separating_set"] == ["p", "q"]
    assert report["elapsed_seconds"] >= 0


def test_answer_sets_and_se_models(capsys, files):
    code, out, _ = run(capsys, "answer-sets", files("p2.lp"))
    assert code == 0
    assert out.splitlines() == ["{p}", "{q}", "% 2 answer set(s)"]
    code, out, _ = run(capsys, "se-models", "--positive", files("disj.lp"))
    assert code == 0 and out.splitlines()[-1] == "% 5 SE-model(s)"
    code, out, _ = run(capsys, "answer-sets", "--json", files("neg.lp"))
    assert json.loads(out)["answer_sets"] == [["-p"]]


def test_equiv(capsys, files):
    assert run(capsys, "equiv", files("disj.lp"), files("evenloop.lp"))[0] == 0
    assert run(capsys, "equiv", files("disj.lp"), files("p3.lp"))[0] == 1


def test_extra_atoms(capsys, files):
    code, out, _ = run(capsys, "answer-sets", "--atoms", "z", "--json", files("disj.lp"))
    assert code == 0 and json.loads(out)["answer_sets"] == [["p"], ["q"]]


def test_translate_targets(capsys, files, tmp_path):
    code, out, _ = run(capsys, "translate", "--to", "pl", files("disj.lp"))
    assert code == 0 and "p__prime" in out
    code, out, _ = run(capsys, "translate", "--to", "wc", files("choice.wcp"))
    assert code == 0 and "1 {p, q} 1." in out
    code, out, _ = run(capsys, "translate", "--to", "wc", "--variant", "literal", files("choice.wcp"))
    assert "1 {p__prime, q__prime} 1." in out
    code, out, _ = run(capsys, "translate", "--to", "not", files("choice.wcp"))
    assert code == 0 and "bot :- not __witness." in out
    sidecar = tmp_path / "aux.txt"
    code, out, _ = run(capsys, "translate", "--to", "dimacs", "--sidecar", sidecar, files("p1.lp"), files("p2.lp"))
    assert code == 0
    assert any(l.startswith("p cnf ") for l in out.splitlines())
    assert sidecar.read_text()
    code, out, _ = run(capsys, "translate", "--to", "wc", files("choice.wcp"), files("evenloop.wcp"))
    assert code == 0 and "__selp" in out


def test_formula_equiv(capsys, files):
    assert run(capsys, "formula-equiv", "--program", files("p3.lp"), "p", "q")[0] == 0
    assert run(capsys, "formula-equiv", "--program", files("disj.lp"), "p", "q")[0] == 1


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--count", "10", "--seed", "7", "--max-rules", "3", "--max-program-atoms", "3")
    assert code == 0
    assert out.strip() == "pairs: 10, seed: 7, disagreements: 0"


def test_parse_error_exit_code(capsys, files):
    code, _, err = run(capsys, "answer-sets", files("bad.lp"))
    assert code == 2
    assert "2:1" in err or "line 2" in err


def test_usage_errors(capsys, files):
    assert run(capsys, "strong-equiv", "--method", "pl", files("choice.wcp"), files("evenloop.wcp"))[0] == 2
    assert run(capsys, "strong-equiv", "--method", "pl", files("neg.lp"), files("disj.lp"))[0] == 2
    assert run(capsys, "strong-equiv", files("disj.lp"), files("choice.wcp"))[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "answer-sets", files("missing.lp"))[0] == 2


def test_capacity_exit_code(capsys, tmp_path):
    path = tmp_path / "wide.lp"
    path.write_text("".join(f"-a{i} :- not b{i}.\n" for i in range(7)))
    code, _, err = run(capsys, "answer-sets", path)
    assert code == 3 and "error" in err
    small = tmp_path / "small.lp"
    small.write_text("p :- not q. r.")
    assert run(capsys, "answer-sets", "--max-atoms", "2", small)[0] == 3
    assert run(capsys, "answer-sets", "--max-atoms", "3", small)[0] == 0


def test_negation_falls_back_to_direct(capsys, files):
    code, out, _ = run(capsys, "strong-equiv", "--method", "all", files("neg.lp"), files("neg.lp"))
    assert code == 0 and "methods: direct" in out


@pytest.mark.skipif(shutil.which("sequiv") is None, reason="console script not installed")
def test_console_script(files):
    done = subprocess.run(["sequiv", "strong-equiv", files("p1.lp"), files("p2.lp")], capture_output=True, text=True)
    assert done.returncode == 0


def test_module_entry_point(files):
    done = subprocess.run(
        [sys.executable, "-m", "sequiv.cli", "equiv", files("disj.lp"), files("evenloop.lp")], capture_output=True, text=True
    )
    assert done.returncode == 0
