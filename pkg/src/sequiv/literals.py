"""Literals, literal sets and the bitmask universe used by the enumerators.

A literal set over ``n`` atoms is packed into an integer: bit ``i`` holds the
positive literal of the i-th atom (atoms sorted by name) and bit ``n + i``
holds its classical negation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import ReservedNameError

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*(\([A-Za-z0-9_,]+\))?\Z")

# Internal encodings create atoms using these markers.
PRIME_SUFFIX = "__prime"
RESERVED_MARKER = "__"


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    negated: bool = False

    def complement(self) -> Literal:
        return Literal(self.atom, not self.negated)

    def __str__(self) -> str:
        return f"-{self.atom}" if self.negated else self.atom


LiteralSet = frozenset  # frozenset[Literal], always consistent


def lits(*names: str) -> frozenset[Literal]:
    """Build a literal set from surface names, ``"-a"`` meaning classical negation."""
    out = set()
    for name in names:
        if name.startswith("-"):
            out.add(Literal(name[1:], True))
        else:
            out.add(Literal(name))
    return frozenset(out)


def is_consistent(literals: Iterable[Literal]) -> bool:
    seen = set(literals)
    return not any(lit.complement() in seen for lit in seen)


def positive_part(literals: Iterable[Literal]) -> frozenset[Literal]:
    return frozenset(lit for lit in literals if not lit.negated)


def set_key(literals: Iterable[Literal]) -> tuple:
    """Deterministic order: size, then atom name, then sign (positive first)."""
    items = sorted(literals)
    return (len(items), items)


def format_set(literals: Iterable[Literal]) -> str:
    return "{" + ", ".join(str(lit) for lit in sorted(literals)) + "}"


def check_user_atom(name: str) -> None:
    if RESERVED_MARKER in name or name.endswith("'"):
        raise ReservedNameError(f"atom name {name!r} is reserved for internal encodings")


def popcount(masks: np.ndarray) -> np.ndarray:
    masks = masks.astype(np.uint64)
    count = np.zeros(masks.shape, dtype=np.int64)
    while np.any(masks):
        count += (masks & np.uint64(1)).astype(np.int64)
        masks = masks >> np.uint64(1)
    return count


class Universe:
    """Fixed atom order plus conversions between literal sets and bitmasks."""

    def __init__(self, atoms: Iterable[str]):
        self.atoms: tuple[str, ...] = tuple(sorted(set(atoms)))
        self.n = len(self.atoms)
        self.index = {a: i for i, a in enumerate(self.atoms)}

    @property
    def fits_int64(self) -> bool:
        return 2 * self.n <= 62

    def bit(self, lit: Literal) -> int:
        i = self.index[lit.atom]
        return i + self.n if lit.negated else i

    def literal(self, bit: int) -> Literal:
        if bit >= self.n:
            return Literal(self.atoms[bit - self.n], True)
        return Literal(self.atoms[bit])

    def to_mask(self, literals: Iterable[Literal]) -> int:
        mask = 0
        for lit in literals:
            mask |= 1 << self.bit(lit)
        return mask

    def from_mask(self, mask: int) -> frozenset[Literal]:
        mask = int(mask)
        out = []
        bit = 0
        while mask:
            if mask & 1:
                out.append(self.literal(bit))
            mask >>= 1
            bit += 1
        return frozenset(out)

    def consistent_masks(self, positive_only: bool = False) -> np.ndarray:
        """Every consistent literal set as a mask (atom-only sets if ``positive_only``)."""
        n = self.n
        if positive_only:
            return np.arange(1 << n, dtype=np.int64)
        codes = np.arange(3**n, dtype=np.int64)
        masks = np.zeros_like(codes)
        for i in range(n):
            digit = codes % 3
            codes //= 3
            masks |= (digit == 1).astype(np.int64) << i
            masks |= (digit == 2).astype(np.int64) << (n + i)
        return masks

    def order_keys(self, masks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized form of :func:`set_key`, as (size, rank) with smaller rank first.

        Two same-size sets compare by their smallest differing literal: the set
        holding it comes first. Interleaving positive/negative bits and
        reversing significance turns that into a descending integer order.
        """
        masks = np.asarray(masks, dtype=np.int64)
        width = 2 * self.n
        rev = np.zeros(masks.shape, dtype=np.int64)
        for i in range(self.n):
            for bit, pos in ((i, 2 * i), (self.n + i, 2 * i + 1)):
                rev |= ((masks >> bit) & 1) << (width - 1 - pos)
        return popcount(masks), -rev

    def sort_masks(self, masks: np.ndarray) -> np.ndarray:
        size, rank = self.order_keys(masks)
        return np.asarray(masks)[np.lexsort((rank, size))]

    def sort_pairs(self, xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Order pairs by there-set first, then here-set."""
        ysize, yrank = self.order_keys(ys)
        xsize, xrank = self.order_keys(xs)
        order = np.lexsort((xrank, xsize, yrank, ysize))
        return np.asarray(xs)[order], np.asarray(ys)[order]

    def iter_sets(self, masks: np.ndarray) -> Iterator[frozenset[Literal]]:
        for m in masks:
            yield self.from_mask(int(m))
