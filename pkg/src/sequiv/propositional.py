"""Classical propositional formulas, model enumeration and DIMACS export."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

from . import kernels
from .errors import CapacityError
from .kernels.ir import AND, EQUIV, IMPL, NOT, OR, CodeBuilder

DEFAULT_MAX_ATOMS = 24


@dataclass(frozen=True)
class PAtom:
    name: str


@dataclass(frozen=True)
class PTop:
    pass


@dataclass(frozen=True)
class PBot:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "PropFormula"


@dataclass(frozen=True)
class Conj:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class Disj:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class Impl:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class Equiv:
    left: "PropFormula"
    right: "PropFormula"


PropFormula = Union[PAtom, PTop, PBot, Neg, Conj, Disj, Impl, Equiv]
_BINARY = {Conj: (AND, "&"), Disj: (OR, "|"), Impl: (IMPL, "->"), Equiv: (EQUIV, "<->")}


def conjunction(parts: Iterable[PropFormula]) -> PropFormula:
    parts = list(parts)
    if not parts:
        return PTop()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Conj(p, out)
    return out


def not_equivalent(a: PropFormula, b: PropFormula) -> PropFormula:
    """``a`` and ``b`` differ, spelled with conjunction, disjunction and negation only."""
    return Disj(Conj(a, Neg(b)), Conj(Neg(a), b))


def prop_atoms(f: PropFormula) -> set[str]:
    if isinstance(f, PAtom):
        return {f.name}
    if isinstance(f, Neg):
        return prop_atoms(f.arg)
    if type(f) in _BINARY:
        return prop_atoms(f.left) | prop_atoms(f.right)
    return set()


def format_prop(f: PropFormula) -> str:
    if isinstance(f, PAtom):
        return f.name
    if isinstance(f, PTop):
        return "T"
    if isinstance(f, PBot):
        return "F"
    if isinstance(f, Neg):
        return "~" + format_prop(f.arg)
    sym = _BINARY[type(f)][1]
    return f"({format_prop(f.left)} {sym} {format_prop(f.right)})"


def evaluate(f: PropFormula, true_atoms: frozenset[str] | set[str]) -> bool:
    if isinstance(f, PAtom):
        return f.name in true_atoms
    if isinstance(f, PTop):
        return True
    if isinstance(f, PBot):
        return False
    if isinstance(f, Neg):
        return not evaluate(f.arg, true_atoms)
    a, b = evaluate(f.left, true_atoms), evaluate(f.right, true_atoms)
    if isinstance(f, Conj):
        return a and b
    if isinstance(f, Disj):
        return a or b
    if isinstance(f, Impl):
        return not a or b
    return a == b


def ordered_atoms(f: PropFormula, atoms: Iterable[str] | None, max_atoms: int) -> tuple[str, ...]:
    names = tuple(sorted(prop_atoms(f) | set(atoms or ())))
    if len(names) > max_atoms:
        raise CapacityError("propositional model enumeration", len(names), max_atoms)
    return names


def _decode(mask: int, names: tuple[str, ...]) -> frozenset[str]:
    return frozenset(a for i, a in enumerate(names) if mask >> i & 1)


# -- truth table -----------------------------------------------------------


def compile_prop(f: PropFormula, names: tuple[str, ...]):
    index = {a: i for i, a in enumerate(names)}
    b = CodeBuilder()

    def emit(g):
        if isinstance(g, PAtom):
            b.lit(index[g.name])
        elif isinstance(g, PTop):
            b.const(True)
        elif isinstance(g, PBot):
            b.const(False)
        elif isinstance(g, Neg):
            emit(g.arg)
            b.unary(NOT)
        else:
            emit(g.left)
            emit(g.right)
            b.binary(_BINARY[type(g)][0])

    emit(f)
    return b.finish()


def truth_table_masks(f: PropFormula, names: tuple[str, ...]) -> np.ndarray:
    """Satisfying assignments as ascending integers (bit i = i-th name)."""
    code = compile_prop(f, names)
    rows = np.arange(1 << len(names), dtype=np.int64)
    return rows[kernels.eval_code(code, rows)]


# -- backtracking ----------------------------------------------------------


def _eval3(f: PropFormula, t: int, fmask: int, index: dict[str, int]):
    """Kleene evaluation under a partial assignment: True, False or None."""
    if isinstance(f, PAtom):
        bit = 1 << index[f.name]
        return True if t & bit else (False if fmask & bit else None)
    if isinstance(f, PTop):
        return True
    if isinstance(f, PBot):
        return False
    if isinstance(f, Neg):
        v = _eval3(f.arg, t, fmask, index)
        return None if v is None else not v
    a = _eval3(f.left, t, fmask, index)
    if isinstance(f, Conj):
        if a is False:
            return False
        b = _eval3(f.right, t, fmask, index)
        return False if b is False else (True if a and b else None)
    if isinstance(f, Disj):
        if a is True:
            return True
        b = _eval3(f.right, t, fmask, index)
        return True if b is True else (False if a is False and b is False else None)
    if isinstance(f, Impl):
        if a is False:
            return True
        b = _eval3(f.right, t, fmask, index)
        return True if b is True else (False if a is True and b is False else None)
    b = _eval3(f.right, t, fmask, index)
    return None if a is None or b is None else a == b


def backtrack_masks(f: PropFormula, names: tuple[str, ...]) -> Iterator[int]:
    """Satisfying assignments in ascending integer order.

    Atoms are decided from the most significant down, false first, and a
    branch is cut as soon as the formula is false under the partial
    assignment. Once it is true, the free low bits are enumerated directly.
    """
    index = {a: i for i, a in enumerate(names)}
    k = len(names)

    def walk(level: int, t: int, fm: int):
        v = _eval3(f, t, fm, index)
        if v is False:
            return
        if v is True:
            for low in range(1 << level):
                yield t | low
            return
        bit = 1 << (level - 1)
        yield from walk(level - 1, t, fm | bit)
        yield from walk(level - 1, t | bit, fm)

    yield from walk(k, 0, 0)


def prop_models(
    f: PropFormula,
    atoms: Iterable[str] | None = None,
    *,
    method: str = "backtrack",
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> list[frozenset[str]]:
    names = ordered_atoms(f, atoms, max_atoms)
    if method == "backtrack":
        masks = list(backtrack_masks(f, names))
    elif method == "truth-table":
        masks = truth_table_masks(f, names).tolist()
    else:
        raise ValueError(f"unknown method {method!r}")
    return [_decode(m, names) for m in masks]


def first_model(
    f: PropFormula, atoms: Iterable[str] | None = None, *, max_atoms: int = DEFAULT_MAX_ATOMS
) -> frozenset[str] | None:
    names = ordered_atoms(f, atoms, max_atoms)
    for m in backtrack_masks(f, names):
        return _decode(m, names)
    return None


def iter_models(f: PropFormula, atoms: Iterable[str] | None = None, *, max_atoms: int = DEFAULT_MAX_ATOMS):
    names = ordered_atoms(f, atoms, max_atoms)
    for m in backtrack_masks(f, names):
        yield _decode(m, names)


# -- DIMACS ----------------------------------------------------------------


@dataclass
class Cnf:
    num_vars: int
    clauses: list[list[int]]
    atom_vars: dict[str, int]
    aux: list[tuple[int, str]]  # (variable, subformula it names)

    def dimacs(self) -> str:
        lines = [f"c var {v} {a}" for a, v in sorted(self.atom_vars.items(), key=lambda kv: kv[1])]
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        lines.extend(" ".join(map(str, c)) + " 0" for c in self.clauses)
        return "\n".join(lines) + "\n"

    def sidecar(self) -> str:
        return "".join(f"{v} {text}\n" for v, text in self.aux)


def to_cnf(f: PropFormula, atoms: Iterable[str] | None = None) -> Cnf:
    """Definitional (Tseitin) clausal form; satisfiable iff ``f`` is.

    Each compound subformula gets an auxiliary variable constrained to be
    equivalent to it, so models projected onto the atom variables are
    exactly the models of ``f``.
    """
    names = tuple(sorted(prop_atoms(f) | set(atoms or ())))
    atom_vars = {a: i + 1 for i, a in enumerate(names)}
    clauses: list[list[int]] = []
    aux: list[tuple[int, str]] = []
    memo: dict[PropFormula, int] = {}
    counter = [len(names)]

    def fresh(g) -> int:
        counter[0] += 1
        aux.append((counter[0], format_prop(g)))
        return counter[0]

    def var(g) -> int:
        if isinstance(g, PAtom):
            return atom_vars[g.name]
        if g in memo:
            return memo[g]
        if isinstance(g, (PTop, PBot)):
            v = fresh(g)
            clauses.append([v] if isinstance(g, PTop) else [-v])
        elif isinstance(g, Neg):
            a = var(g.arg)
            v = fresh(g)
            clauses.extend([[-v, -a], [v, a]])
        else:
            a, b = var(g.left), var(g.right)
            v = fresh(g)
            if isinstance(g, Conj):
                clauses.extend([[-v, a], [-v, b], [v, -a, -b]])
            elif isinstance(g, Disj):
                clauses.extend([[-v, a, b], [v, -a], [v, -b]])
            elif isinstance(g, Impl):
                clauses.extend([[-v, -a, b], [v, a], [v, -b]])
            else:
                clauses.extend([[-v, -a, b], [-v, a, -b], [v, a, b], [v, -a, -b]])
        memo[g] = v
        return v

    root = var(f)
    clauses.append([root])
    return Cnf(counter[0], clauses, atom_vars, aux)
