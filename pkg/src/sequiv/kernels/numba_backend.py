"""Numba kernels: a per-pair interpreter loop with early exit on minimality checks."""

from __future__ import annotations

import numpy as np
from numba import njit

from ..literals import popcount
from .ir import AND, BOT, EQUIV, IMPL, LX, LY, NOT, OR, SRC_X, SUBSET, TOP, WC, Code

NAME = "numba"
PREALLOCATE = 1 << 23


@njit(cache=True)
def _eval_one(ops, args, cons, elems, masks, stack, x, y):
    sp = 0
    for pc in range(ops.shape[0]):
        op = ops[pc]
        if op == TOP:
            stack[sp] = True
            sp += 1
        elif op == BOT:
            stack[sp] = False
            sp += 1
        elif op == LX:
            stack[sp] = ((x >> args[pc]) & 1) == 1
            sp += 1
        elif op == LY:
            stack[sp] = ((y >> args[pc]) & 1) == 1
            sp += 1
        elif op == NOT:
            stack[sp - 1] = not stack[sp - 1]
        elif op == WC:
            k = args[pc]
            total = 0
            for j in range(cons[k, 0], cons[k, 1]):
                src = x if elems[j, 2] == SRC_X else y
                on = ((src >> elems[j, 0]) & 1) == 1
                if on != (elems[j, 1] == 1):
                    total += elems[j, 3]
            ok = True
            if cons[k, 4] == 1 and total < cons[k, 2]:
                ok = False
            if cons[k, 5] == 1 and total > cons[k, 3]:
                ok = False
            stack[sp] = ok
            sp += 1
        elif op == SUBSET:
            stack[sp] = (y & masks[args[pc]] & ~x) == 0
            sp += 1
        else:
            b = stack[sp - 1]
            a = stack[sp - 2]
            sp -= 1
            if op == AND:
                stack[sp - 1] = a and b
            elif op == OR:
                stack[sp - 1] = a or b
            elif op == IMPL:
                stack[sp - 1] = (not a) or b
            elif op == EQUIV:
                stack[sp - 1] = a == b
    return stack[0]


@njit(cache=True)
def _eval_many(ops, args, cons, elems, masks, depth, xs, ys):
    out = np.empty(xs.shape[0], dtype=np.bool_)
    stack = np.empty(depth + 1, dtype=np.bool_)
    for i in range(xs.shape[0]):
        out[i] = _eval_one(ops, args, cons, elems, masks, stack, xs[i], ys[i])
    return out


@njit(cache=True)
def _se_pairs(ops, args, cons, elems, masks, depth, ys, size):
    stack = np.empty(depth + 1, dtype=np.bool_)
    out_x = np.empty(size, dtype=np.int64)
    out_y = np.empty(size, dtype=np.int64)
    n = 0
    for i in range(ys.shape[0]):
        y = ys[i]
        sub = y
        while True:
            if _eval_one(ops, args, cons, elems, masks, stack, sub, y):
                if n == size:
                    size *= 2
                    grown_x = np.empty(size, dtype=np.int64)
                    grown_y = np.empty(size, dtype=np.int64)
                    grown_x[:n] = out_x[:n]
                    grown_y[:n] = out_y[:n]
                    out_x, out_y = grown_x, grown_y
                out_x[n] = sub
                out_y[n] = y
                n += 1
            if sub == 0:
                break
            sub = (sub - 1) & y
    return out_x[:n], out_y[:n]


@njit(cache=True)
def _has_proper_model(ops, args, cons, elems, masks, depth, ys):
    stack = np.empty(depth + 1, dtype=np.bool_)
    out = np.zeros(ys.shape[0], dtype=np.bool_)
    for i in range(ys.shape[0]):
        y = ys[i]
        if y == 0:
            continue
        sub = (y - 1) & y
        while True:
            if _eval_one(ops, args, cons, elems, masks, stack, sub, y):
                out[i] = True
                break
            if sub == 0:
                break
            sub = (sub - 1) & y
    return out


def _unpack(code: Code):
    return code.ops, code.args, code.cons, code.elems, code.masks, code.depth


def eval_code(code: Code, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    ys = np.ascontiguousarray(ys, dtype=np.int64)
    return _eval_many(*_unpack(code), xs, ys)


def se_pairs(code: Code, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ys = np.ascontiguousarray(ys, dtype=np.int64)
    # every submask is a candidate; allocate that bound outright unless it is large
    bound = int(np.sum(np.left_shift(1, popcount(ys)))) if len(ys) else 0
    size = max(16, bound if bound <= PREALLOCATE else len(ys))
    return _se_pairs(*_unpack(code), ys, size)


def has_proper_model(code: Code, ys: np.ndarray) -> np.ndarray:
    return _has_proper_model(*_unpack(code), np.ascontiguousarray(ys, dtype=np.int64))
