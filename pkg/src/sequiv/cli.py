"""Command line interface: ``sequiv <command> ...``.

Exit codes: 0 success or equivalent, 1 not equivalent, 2 usage or parse
error, 3 capacity exceeded or disagreement between methods.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

from . import encodings as enc
from .equivalence import (
    SEModel,
    Verdict,
    equivalent,
    formula_equiv_relative,
    program_answer_sets,
    se_models,
    strongly_equivalent_direct,
)
from .errors import CapacityError, MethodDisagreement, ParseError, SequivError
from .generate import atom_names, random_simple_program, random_wcp_program
from .literals import format_set
from .nested import NestedProgram
from .parser import load_program, parse_formula
from .printer import format_program
from .propositional import format_prop, not_equivalent, to_cnf
from .wcp import WcpProgram

SCHEMA_VERSION = 1
EXIT_OK, EXIT_DIFFERENT, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
METHODS = ("direct", "pl", "wc")

log = logging.getLogger("sequiv")


class UsageError(SequivError):
    pass


def _set_json(s) -> list[str]:
    return [str(l) for l in sorted(s)]


def _pair_json(pair: SEModel) -> dict:
    return {"here": _set_json(pair.here), "there": _set_json(pair.there)}


def _atoms(args) -> list[str]:
    if not args.atoms:
        return []
    return [a.strip() for a in args.atoms.split(",") if a.strip()]


def _load(args, path: str):
    return load_program(path, args.lang, atoms=_atoms(args))


def _load_pair(args):
    p, q = _load(args, args.file1), _load(args, args.file2)
    if type(p) is not type(q):
        raise UsageError("both programs must be in the same language")
    return p, q


class Output:
    """Collects a report; prints either stable text lines or one JSON document."""

    def __init__(self, args, command: str):
        self.json = args.json
        self.report = {"schema_version": SCHEMA_VERSION, "command": command}
        self.lines: list[str] = []
        self.start = time.perf_counter()

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self) -> None:
        if self.json:
            self.report["elapsed_seconds"] = round(time.perf_counter() - self.start, 6)
            print(json.dumps(self.report, indent=2))
        else:
            for text in self.lines:
                print(text)


# -- commands --------------------------------------------------------------


def cmd_answer_sets(args) -> int:
    out = Output(args, "answer-sets")
    prog = _load(args, args.file)
    found = program_answer_sets(prog, atoms=_atoms(args), max_atoms=args.max_atoms)
    out.report["answer_sets"] = [_set_json(s) for s in found]
    for s in found:
        out.line(format_set(s))
    out.line(f"% {len(found)} answer set(s)")
    out.emit()
    return EXIT_OK


def cmd_se_models(args) -> int:
    out = Output(args, "se-models")
    prog = _load(args, args.file)
    models = se_models(prog, args.positive, atoms=_atoms(args), max_atoms=args.max_atoms)
    out.report["positive_only"] = args.positive
    out.report["se_models"] = [_pair_json(m) for m in models]
    for m in models:
        out.line(str(m))
    out.line(f"% {len(models)} SE-model(s)")
    out.emit()
    return EXIT_OK


def cmd_equiv(args) -> int:
    out = Output(args, "equiv")
    p, q = _load_pair(args)
    result = equivalent(p, q, atoms=_atoms(args), max_atoms=args.max_atoms)
    out.report["equivalent"] = result
    out.line(f"equivalent: {'yes' if result else 'no'}")
    out.emit()
    return EXIT_OK if result else EXIT_DIFFERENT


def applicable_methods(p, q) -> list[str]:
    methods = ["direct"]
    if not (p.is_negation_free and q.is_negation_free):
        return methods
    if isinstance(p, NestedProgram):
        methods.append("pl")
        try:
            enc.nested_to_wcp(p)
            enc.nested_to_wcp(q)
        except ValueError:
            return methods
    methods.append("wc")
    return methods


def run_method(method: str, p, q, *, atoms, max_atoms, witness: bool) -> Verdict:
    if method == "direct":
        return strongly_equivalent_direct(p, q, atoms=atoms, max_atoms=max_atoms, witness=witness)
    if method == "pl":
        if not isinstance(p, NestedProgram):
            raise UsageError("method pl applies to nested programs only")
        return enc.strongly_equivalent_via_pl(p, q, atoms=atoms, witness=witness)
    if method == "wc":
        if isinstance(p, NestedProgram):
            verdict = enc.strongly_equivalent_via_wc(
                enc.nested_to_wcp(p), enc.nested_to_wcp(q), atoms=atoms, witness=False
            )
            if verdict.equivalent or not witness:
                return verdict
            # rebuild the context in the input language
            from .equivalence import distinguishing_context, verify_context

            has, lacks = (p, q) if verdict.mismatch_in == "first" else (q, p)
            ctx = distinguishing_context(verdict.mismatch, has, lacks, first_has=verdict.mismatch_in == "first")
            verify_context(p, q, ctx, atoms=set(atoms) | p.signature | q.signature)
            return Verdict(False, "wc", verdict.mismatch, verdict.mismatch_in, ctx)
        return enc.strongly_equivalent_via_wc(p, q, atoms=atoms, witness=witness)
    raise UsageError(f"unknown method {method!r}")


def _check_agreement(verdicts: dict[str, Verdict]) -> None:
    values = {name: v.equivalent for name, v in verdicts.items()}
    if len(set(values.values())) > 1:
        raise MethodDisagreement(f"methods disagree: {values}")
    pairs = {name: v.mismatch for name, v in verdicts.items()}
    if len(set(pairs.values())) > 1:
        raise MethodDisagreement(f"methods report different mismatches: {pairs}")


def cmd_strong_equiv(args) -> int:
    out = Output(args, "strong-equiv")
    p, q = _load_pair(args)
    atoms = _atoms(args)
    if args.method == "all":
        methods = applicable_methods(p, q)
    else:
        methods = [args.method]
        if args.method in ("pl", "wc") and args.method not in applicable_methods(p, q):
            raise UsageError(f"method {args.method} does not apply to these programs")
    verdicts = {
        m: run_method(m, p, q, atoms=atoms, max_atoms=args.max_atoms, witness=args.witness) for m in methods
    }
    out.report["methods"] = methods
    _check_agreement(verdicts)
    verdict = verdicts[methods[0]]
    out.report["strongly_equivalent"] = verdict.equivalent
    out.line(f"strongly equivalent: {'yes' if verdict.equivalent else 'no'}")
    out.line(f"methods: {', '.join(methods)}")
    if not verdict.equivalent:
        owner = args.file1 if verdict.mismatch_in == "first" else args.file2
        out.report["mismatch"] = {**_pair_json(verdict.mismatch), "se_model_of": verdict.mismatch_in}
        out.line(f"mismatch: {verdict.mismatch} is an SE-model of {owner} only")
        ctx = verdict.witness
        if ctx is not None:
            winner = args.file1 if ctx.answer_set_of == "first" else args.file2
            out.report["witness"] = {
                "case": ctx.case,
                "separating_set": _set_json(ctx.separating_set),
                "answer_set_of": ctx.answer_set_of,
                "context_program": format_program(ctx.context_program),
            }
            out.line(f"case: {ctx.case}")
            out.line(f"separating set: {format_set(ctx.separating_set)} (answer set with {winner} only)")
            out.line("context program:")
            for text in format_program(ctx.context_program).splitlines():
                out.line("  " + text)
    out.emit()
    return EXIT_OK if verdict.equivalent else EXIT_DIFFERENT


def _as_wcp(prog) -> WcpProgram:
    return enc.nested_to_wcp(prog) if isinstance(prog, NestedProgram) else prog


def cmd_translate(args) -> int:
    p = _load(args, args.file)
    q = _load(args, args.file2) if args.file2 else None
    if q is not None and type(p) is not type(q):
        raise UsageError("both programs must be in the same language")
    atoms = set(_atoms(args)) | p.signature | (q.signature if q is not None else set())
    if args.to in ("pl", "dimacs"):
        if not isinstance(p, NestedProgram) or (q is not None and not isinstance(q, NestedProgram)):
            raise UsageError("pl and dimacs translations take nested programs")
        phi = enc.pl_program(p, atoms)
        if q is not None:
            phi = not_equivalent(phi, enc.pl_program(q, atoms))
        if args.to == "pl":
            text = format_prop(phi) + "\n"
        else:
            cnf = to_cnf(phi, enc.augmented_atoms(atoms))
            text = cnf.dimacs()
            if args.sidecar:
                Path(args.sidecar).write_text(cnf.sidecar())
    elif args.to == "wc":
        if q is None:
            text = format_program(enc.wc_encode(_as_wcp(p), atoms, variant=args.variant))
        else:
            text = format_program(enc.composed_program(_as_wcp(p), _as_wcp(q), atoms=atoms, variant=args.variant))
    elif args.to == "not":
        if q is not None:
            raise UsageError("translate --to not takes one program")
        text = format_program(enc.not_encode(_as_wcp(p), atoms))
    else:
        raise UsageError(f"unknown target {args.to!r}")
    if args.json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "command": "translate", "to": args.to, "text": text}, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_formula_equiv(args) -> int:
    out = Output(args, "formula-equiv")
    prog = _load(args, args.program)
    if not isinstance(prog, NestedProgram):
        raise UsageError("formula-equiv takes a nested program")
    f, g = parse_formula(args.f), parse_formula(args.g)
    result = formula_equiv_relative(prog, f, g, atoms=_atoms(args), max_atoms=args.max_atoms)
    out.report["equivalent_relative"] = result
    out.line(f"equivalent relative to {args.program}: {'yes' if result else 'no'}")
    out.emit()
    return EXIT_OK if result else EXIT_DIFFERENT


def cmd_crosscheck(args) -> int:
    """Run every applicable method on seeded random pairs and count disagreements."""
    out = Output(args, "crosscheck")
    rng = random.Random(args.seed)
    disagreements = []
    for i in range(args.count):
        atoms = atom_names(rng.randint(1, args.max_program_atoms))
        if rng.random() < 0.5:
            p, q = random_simple_program(rng, atoms, args.max_rules), random_simple_program(rng, atoms, args.max_rules)
        else:
            p, q = random_wcp_program(rng, atoms, args.max_rules), random_wcp_program(rng, atoms, args.max_rules)
        verdicts = {m: run_method(m, p, q, atoms=(), max_atoms=None, witness=False) for m in applicable_methods(p, q)}
        try:
            _check_agreement(verdicts)
        except MethodDisagreement as exc:
            disagreements.append(i)
            log.error("pair %d: %s\n%s---\n%s", i, exc, format_program(p), format_program(q))
    out.report.update({"seed": args.seed, "pairs": args.count, "disagreements": disagreements})
    out.line(f"pairs: {args.count}, seed: {args.seed}, disagreements: {len(disagreements)}")
    out.emit()
    return EXIT_OK if not disagreements else EXIT_CAPACITY


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--atoms", help="extra atoms for the signature, comma separated")
    common.add_argument("--json", action="store_true", help="print one JSON report")
    common.add_argument("--max-atoms", type=int, default=None, help="enumeration cap (default 12, or 16 positive)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized entry points")
    common.add_argument("--lang", choices=("nested", "wcp"), help="input language (default: by extension)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="sequiv", description="Answer sets and strong equivalence of logic programs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("answer-sets", parents=[common], help="list answer sets")
    p.add_argument("file")
    p.set_defaults(func=cmd_answer_sets)

    p = sub.add_parser("se-models", parents=[common], help="list SE-models")
    p.add_argument("--positive", action="store_true", help="atom-only pairs")
    p.add_argument("file")
    p.set_defaults(func=cmd_se_models)

    p = sub.add_parser("equiv", parents=[common], help="same answer sets")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("strong-equiv", parents=[common], help="same answer sets under every extension")
    p.add_argument("--method", choices=(*METHODS, "all"), default="direct")
    p.add_argument("--witness", action="store_true", help="print a distinguishing context")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_strong_equiv)

    p = sub.add_parser("translate", parents=[common], help="print an encoding")
    p.add_argument("--to", choices=("pl", "wc", "not", "dimacs"), required=True)
    p.add_argument("--variant", choices=("exact", "literal"), default="exact", help="wc construction")
    p.add_argument("--sidecar", help="dimacs: write auxiliary variable names here")
    p.add_argument("file")
    p.add_argument("file2", nargs="?", help="second program: encode the strong equivalence question")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("formula-equiv", parents=[common], help="formulas equivalent relative to a program")
    p.add_argument("--program", required=True)
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_formula_equiv)

    p = sub.add_parser("crosscheck", parents=[common], help="compare all methods on random pairs")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-rules", type=int, default=6)
    p.add_argument("--max-program-atoms", type=int, default=5)
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except MethodDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ParseError as exc:
        print(f"{getattr(args, 'file', '')}: {exc}".lstrip(": "), file=sys.stderr)
        return EXIT_USAGE
    except (SequivError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run_cli(argv: list[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
