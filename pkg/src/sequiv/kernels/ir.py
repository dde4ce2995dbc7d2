"""Flat postfix code that the evaluation kernels interpret.

A program is compiled once per universe into integer arrays. Every kernel
evaluates the code against a pair of masks ``(x, y)``: ``LX`` reads a literal
bit from ``x`` (the here-set), ``LY`` from ``y`` (the there-set). Evaluating
with ``x == y`` gives classical satisfaction; evaluating reduct-compiled code
with ``x`` a subset of ``y`` decides ``x |= P^y``.

Weight constraints become ``WC`` instructions over a constraint table whose
weights are rationals scaled to a common integer denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import CapacityError
from ..literals import Literal, Universe
from ..nested import And, Bottom, Formula, NestedProgram, Not, Or, Top
from ..wcp import POS_INF, WcpProgram, WeightConstraint

TOP, BOT, LX, LY, NOT, AND, OR, IMPL, EQUIV, WC, SUBSET = range(11)

OPNAMES = ("TOP", "BOT", "LX", "LY", "NOT", "AND", "OR", "IMPL", "EQUIV", "WC", "SUBSET")

# Element source within a WC instruction.
SRC_X, SRC_Y = 0, 1

_LIMIT = 1 << 62


@dataclass(frozen=True)
class Code:
    ops: np.ndarray  # int64 opcodes
    args: np.ndarray  # int64 operand per opcode (bit, constraint or mask index)
    cons: np.ndarray  # int64 (k, 6): start, end, lo, hi, has_lo, has_hi
    elems: np.ndarray  # int64 (m, 4): bit, negative, source, scaled weight
    masks: np.ndarray  # int64 masks referenced by SUBSET
    depth: int

    def __len__(self) -> int:
        return len(self.ops)

    def disassemble(self) -> list[str]:
        return [f"{OPNAMES[o]} {a}" if o in (LX, LY, WC, SUBSET) else OPNAMES[o]
                for o, a in zip(self.ops.tolist(), self.args.tolist())]


@dataclass(frozen=True)
class Compiled:
    """Reduct-mode code (``here``) and classical code (``there``) for one program."""

    here: Code
    there: Code


class CodeBuilder:
    def __init__(self):
        self.ops: list[int] = []
        self.args: list[int] = []
        self.cons: list[tuple] = []
        self.elems: list[tuple] = []
        self.masks: list[int] = []
        self._sp = 0
        self._max = 0

    def _push(self, op: int, arg: int = 0, pops: int = 0):
        self.ops.append(op)
        self.args.append(arg)
        self._sp += 1 - pops
        self._max = max(self._max, self._sp)

    def const(self, value: bool):
        self._push(TOP if value else BOT)

    def lit(self, bit: int, there: bool = False):
        self._push(LY if there else LX, bit)

    def unary(self, op: int):
        self._push(op, 0, 1)

    def binary(self, op: int):
        self._push(op, 0, 2)

    def subset(self, mask: int):
        """Push ``(y & mask)`` is a subset of ``x``."""
        self.masks.append(mask)
        self._push(SUBSET, len(self.masks) - 1)

    def wc(self, lower, upper, elements):
        """``elements`` are (bit, negative, source, Fraction weight)."""
        start = len(self.elems)
        self.elems.extend(elements)
        self.cons.append((start, len(self.elems), lower, upper))
        self._push(WC, len(self.cons) - 1)

    def all_of(self, emitters):
        """Emit a conjunction of the given emitter callables (``top`` if empty)."""
        first = True
        for emit in emitters:
            emit()
            if not first:
                self.binary(AND)
            first = False
        if first:
            self.const(True)

    def finish(self) -> Code:
        if not self.ops:
            self.const(True)
        fractions = [w for *_, w in self.elems]
        for lo, hi in ((c[2], c[3]) for c in self.cons):
            fractions.extend(b for b in (lo, hi) if not _infinite(b))
        scale = 1
        for f in fractions:
            scale = math.lcm(scale, Fraction(f).denominator)
        total = sum(abs(Fraction(f)) for f in fractions) * scale
        if total >= _LIMIT:
            raise CapacityError("scaled weight total", int(total).bit_length(), 62)

        def scaled(f) -> int:
            return int(Fraction(f) * scale)

        cons = np.array(
            [
                (s, e, 0 if _infinite(lo) else scaled(lo), 0 if _infinite(hi) else scaled(hi),
                 int(not _infinite(lo)), int(not _infinite(hi)))
                for s, e, lo, hi in self.cons
            ],
            dtype=np.int64,
        ).reshape(-1, 6)
        elems = np.array(
            [(b, int(n), src, scaled(w)) for b, n, src, w in self.elems], dtype=np.int64
        ).reshape(-1, 4)
        return Code(
            np.array(self.ops, dtype=np.int64),
            np.array(self.args, dtype=np.int64),
            cons,
            elems,
            np.array(self.masks or [0], dtype=np.int64),
            max(self._max, 1),
        )


def _infinite(b) -> bool:
    return isinstance(b, float) and math.isinf(b)


# -- nested programs -------------------------------------------------------


def _check_width(universe: Universe) -> None:
    if not universe.fits_int64:
        raise CapacityError("bitmask kernel", universe.n, 31)


def emit_formula(b: CodeBuilder, f: Formula, universe: Universe, under_not: bool = False):
    """Literals inside a ``not`` read the there-set; that is exactly the reduct."""
    if isinstance(f, Literal):
        b.lit(universe.bit(f), there=under_not)
    elif isinstance(f, Top):
        b.const(True)
    elif isinstance(f, Bottom):
        b.const(False)
    elif isinstance(f, Not):
        emit_formula(b, f.arg, universe, True)
        b.unary(NOT)
    elif isinstance(f, (And, Or)):
        emit_formula(b, f.left, universe, under_not)
        emit_formula(b, f.right, universe, under_not)
        b.binary(AND if isinstance(f, And) else OR)
    else:
        raise TypeError(f"not a formula: {f!r}")


def compile_formula(f: Formula, universe: Universe) -> Code:
    _check_width(universe)
    b = CodeBuilder()
    emit_formula(b, f, universe)
    return b.finish()


def compile_nested(prog: NestedProgram, universe: Universe) -> Compiled:
    _check_width(universe)
    b = CodeBuilder()

    def rule_emitter(rule):
        def emit():
            emit_formula(b, rule.body, universe)
            emit_formula(b, rule.head, universe)
            b.binary(IMPL)

        return emit

    b.all_of(rule_emitter(r) for r in prog.rules)
    code = b.finish()
    # With x == y the reduct code is classical satisfaction.
    return Compiled(code, code)


# -- weight constraint programs -------------------------------------------


def _elements(c: WeightConstraint, universe: Universe, source, positive_only=False, negative_only=False):
    out = []
    for e, w in c.elements:
        if positive_only and e.negative or negative_only and not e.negative:
            continue
        src = source(e) if callable(source) else source
        out.append((universe.bit(e.literal), e.negative, src, w))
    return out


def compile_wcp(prog: WcpProgram, universe: Universe) -> Compiled:
    _check_width(universe)
    here = CodeBuilder()
    there = CodeBuilder()

    def here_rule(rule):
        # x |= rule^y  iff  some body constraint fails its upper half at y or its
        # mixed lower half (positive elements at x, negative at y), or every
        # head literal that is in y is also in x.
        def emit():
            checks = []
            for c in rule.body:
                if c.upper != POS_INF:
                    checks.append(lambda c=c: here.wc(-math.inf, c.upper, _elements(c, universe, SRC_Y)))
                if not _infinite(c.lower):
                    checks.append(
                        lambda c=c: here.wc(
                            c.lower, math.inf,
                            _elements(c, universe, lambda e: SRC_Y if e.negative else SRC_X),
                        )
                    )
            here.all_of(checks)
            here.subset(universe.to_mask(rule.head.literals))
            here.binary(IMPL)

        return emit

    def there_rule(rule):
        def emit():
            there.all_of(
                [lambda c=c: there.wc(c.lower, c.upper, _elements(c, universe, SRC_Y)) for c in rule.body]
            )
            h = rule.head
            there.wc(h.lower, h.upper, _elements(h, universe, SRC_Y))
            there.binary(IMPL)

        return emit

    here.all_of(here_rule(r) for r in prog.rules)
    there.all_of(there_rule(r) for r in prog.rules)
    return Compiled(here.finish(), there.finish())
