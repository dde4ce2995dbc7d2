"""Complete backtracking search for answer sets of weight constraint programs.

Used where the candidate space is too large for exhaustive enumeration (the
encoded strong-equivalence programs). Partial assignments are pairs of
bitmasks ``(true, false)`` over literal bits. Pruning is sound:

* a rule whose body is certainly satisfied and whose head certainly fails
  is a conflict, and a certainly-satisfied body forces the head's elements
  where the bounds leave no slack;
* every answer set ``X`` equals the least model of ``P^X`` (bodies of the
  reduct are monotone), so literals outside an over-approximation of that
  least model are set false.

At a total assignment both checks are exact, so a leaf that survives
propagation is an answer set.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .literals import Literal, Universe, set_key
from .wcp import WcpProgram, WeightConstraint

UNKNOWN, TRUE, FALSE = 0, 1, 2


class _Constraint:
    __slots__ = ("lo", "hi", "pos", "neg", "pos_mask", "neg_mask", "unit", "head_mask")

    def __init__(self, c: WeightConstraint, universe: Universe, scale: int):
        self.lo = None if math.isinf(c.lower) else int(c.lower * scale)
        self.hi = None if math.isinf(c.upper) else int(c.upper * scale)
        self.pos = [(1 << universe.bit(e.literal), int(w * scale)) for e, w in c.elements if not e.negative]
        self.neg = [(1 << universe.bit(e.literal), int(w * scale)) for e, w in c.elements if e.negative]
        self.pos_mask = sum(b for b, _ in self.pos)
        self.neg_mask = sum(b for b, _ in self.neg)
        weights = {w for _, w in self.pos + self.neg}
        self.unit = weights.pop() if len(weights) == 1 else (1 if not weights else None)
        self.head_mask = self.pos_mask

    def pos_sum(self, z: int) -> int:
        """Weight of the positive elements whose literal is in ``z``."""
        if self.unit is not None:
            return (z & self.pos_mask).bit_count() * self.unit
        return sum(w for b, w in self.pos if b & z)

    def neg_open(self, t: int) -> int:
        """Greatest weight the negative elements can still contribute."""
        if self.unit is not None:
            return (self.neg_mask & ~t).bit_count() * self.unit
        return sum(w for b, w in self.neg if not b & t)

    def bounds(self, t: int, f: int) -> tuple[int, int]:
        """Least and greatest weight sum over completions of ``(t, f)``."""
        unit = self.unit
        if unit is not None:
            vmin = (t & self.pos_mask).bit_count() + (f & self.neg_mask).bit_count()
            vmax = (self.pos_mask & ~f).bit_count() + (self.neg_mask & ~t).bit_count()
            return vmin * unit, vmax * unit
        vmin = vmax = 0
        for b, w in self.pos:
            if b & t:
                vmin += w
            if not b & f:
                vmax += w
        for b, w in self.neg:
            if b & f:
                vmin += w
            if not b & t:
                vmax += w
        return vmin, vmax

    def status(self, t: int, f: int) -> int:
        vmin, vmax = self.bounds(t, f)
        lo, hi = self.lo, self.hi
        if (lo is not None and vmax < lo) or (hi is not None and vmin > hi):
            return FALSE
        if (lo is None or vmin >= lo) and (hi is None or vmax <= hi):
            return TRUE
        return UNKNOWN

    def force(self, t: int, f: int) -> tuple[int, int]:
        """Strengthen ``(t, f)`` given that this constraint must hold."""
        vmin, vmax = self.bounds(t, f)
        unknown = ~(t | f)
        for b, w in self.pos:
            if b & unknown:
                if self.lo is not None and vmax - w < self.lo:
                    t |= b
                elif self.hi is not None and vmin + w > self.hi:
                    f |= b
        for b, w in self.neg:
            if b & unknown and not b & (t | f):
                if self.lo is not None and vmax - w < self.lo:
                    f |= b
                elif self.hi is not None and vmin + w > self.hi:
                    t |= b
        return t, f


class _Rule:
    __slots__ = ("head", "body")

    def __init__(self, head: _Constraint, body: list[_Constraint]):
        self.head = head
        self.body = body


def _scale(prog: WcpProgram) -> int:
    scale = 1
    for r in prog.rules:
        for c in (r.head, *r.body):
            for _, w in c.elements:
                scale = math.lcm(scale, w.denominator)
            for b in (c.lower, c.upper):
                if not math.isinf(b):
                    scale = math.lcm(scale, Fraction(b).denominator)
    return scale


class Solver:
    def __init__(self, prog: WcpProgram):
        self.universe = Universe(prog.signature)
        n = self.universe.n
        scale = _scale(prog)
        self.rules = [
            _Rule(_Constraint(r.head, self.universe, scale), [_Constraint(c, self.universe, scale) for c in r.body])
            for r in prog.rules
        ]
        self.all_bits = (1 << (2 * n)) - 1
        self.n = n
        occurrences = [0] * (2 * n)
        for r in self.rules:
            for c in r.body:
                for b, _ in c.pos + c.neg:
                    occurrences[b.bit_length() - 1] += 1
        self.order = sorted(range(2 * n), key=lambda i: (-occurrences[i], i))

    def _consistency(self, t: int, f: int):
        n = self.n
        low = (1 << n) - 1
        pos_t, neg_t = t & low, t >> n
        if pos_t & neg_t:
            return None
        f |= (neg_t) | (pos_t << n)
        return t, f

    def _support(self, t: int, f: int) -> int:
        """Over-approximation of the least model of ``P^X`` for completions X."""
        z = 0
        live = []
        for r in self.rules:
            heads = r.head.head_mask & ~f
            if not heads:
                continue
            ok = True
            lowers = []
            for c in r.body:
                if c.hi is not None and c.bounds(t, f)[0] > c.hi:
                    ok = False
                    break
                if c.lo is not None:
                    need = c.lo - c.neg_open(t)
                    if need > 0:
                        lowers.append((c, need))
            if ok:
                live.append((heads, lowers))
        changed = True
        while changed:
            changed = False
            rest = []
            for heads, lowers in live:
                if all(c.pos_sum(z) >= need for c, need in lowers):
                    if heads & ~z:
                        z |= heads
                        changed = True
                else:
                    rest.append((heads, lowers))
            live = rest
        return z

    def propagate(self, t: int, f: int):
        while True:
            state = self._consistency(t, f)
            if state is None:
                return None
            t, f = state
            before = (t, f)
            for r in self.rules:
                body_true = True
                for c in r.body:
                    s = c.status(t, f)
                    if s == FALSE:
                        body_true = False
                        break
                    if s == UNKNOWN:
                        body_true = False
                if not body_true:
                    continue
                s = r.head.status(t, f)
                if s == FALSE:
                    return None
                if s == UNKNOWN:
                    t, f = r.head.force(t, f)
                    if t & f:
                        return None
            support = self._support(t, f)
            if t & ~support:
                return None
            f |= self.all_bits & ~support & ~t
            if (t, f) == before:
                return t, f

    def solve(self, limit: int | None = None):
        """Yield answer sets as bitmasks, depth first."""
        start = self.propagate(0, 0)
        if start is None:
            return
        found = 0
        stack = [start]
        while stack:
            t, f = stack.pop()
            var = next((i for i in self.order if not (t | f) >> i & 1), None)
            if var is None:
                yield t
                found += 1
                if limit is not None and found >= limit:
                    return
                continue
            bit = 1 << var
            for choice in ((t | bit, f), (t, f | bit)):  # false branch popped first
                state = self.propagate(*choice)
                if state is not None:
                    stack.append(state)


def search_answer_sets(prog: WcpProgram, limit: int | None = None) -> list[frozenset[Literal]]:
    solver = Solver(prog)
    found = [solver.universe.from_mask(m) for m in solver.solve(limit)]
    return sorted(found, key=set_key)
