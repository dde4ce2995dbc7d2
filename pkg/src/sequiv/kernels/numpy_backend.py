"""Pure-numpy kernels: vectorized over candidate pairs, chunked to bound memory."""

from __future__ import annotations

import numpy as np

from ..literals import popcount
from .ir import AND, BOT, EQUIV, IMPL, LX, LY, NOT, OR, SRC_X, SUBSET, TOP, WC, Code

NAME = "numpy"
CHUNK = 1 << 18


def eval_code(code: Code, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    if len(xs) > CHUNK:
        return np.concatenate(
            [eval_code(code, xs[i : i + CHUNK], ys[i : i + CHUNK]) for i in range(0, len(xs), CHUNK)]
        )
    n = len(xs)
    stack: list[np.ndarray] = []
    for op, arg in zip(code.ops.tolist(), code.args.tolist()):
        if op == TOP:
            stack.append(np.ones(n, dtype=bool))
        elif op == BOT:
            stack.append(np.zeros(n, dtype=bool))
        elif op == LX:
            stack.append(((xs >> arg) & 1).astype(bool))
        elif op == LY:
            stack.append(((ys >> arg) & 1).astype(bool))
        elif op == NOT:
            stack.append(~stack.pop())
        elif op == WC:
            stack.append(_weight_check(code, arg, xs, ys))
        elif op == SUBSET:
            m = code.masks[arg]
            stack.append((ys & m & ~xs) == 0)
        else:
            b = stack.pop()
            a = stack.pop()
            if op == AND:
                stack.append(a & b)
            elif op == OR:
                stack.append(a | b)
            elif op == IMPL:
                stack.append(~a | b)
            elif op == EQUIV:
                stack.append(a == b)
            else:
                raise ValueError(f"bad opcode {op}")
    return stack.pop()


def _weight_check(code: Code, k: int, xs, ys) -> np.ndarray:
    start, end, lo, hi, has_lo, has_hi = code.cons[k].tolist()
    total = np.zeros(len(xs), dtype=np.int64)
    for bit, neg, src, w in code.elems[start:end].tolist():
        bits = ((xs if src == SRC_X else ys) >> bit) & 1
        sat = bits == 0 if neg else bits == 1
        total += sat.astype(np.int64) * w
    ok = np.ones(len(xs), dtype=bool)
    if has_lo:
        ok &= total >= lo
    if has_hi:
        ok &= total <= hi
    return ok


def _set_bits(ys: np.ndarray, k: int) -> np.ndarray:
    """The k set bits of each row's mask, lowest first, as a (rows, k) array."""
    rem = ys.copy()
    bits = np.zeros((len(ys), k), dtype=np.int64)
    for j in range(k):
        low = rem & -rem
        bits[:, j] = low
        rem ^= low
    return bits


def _subsets(ys: np.ndarray, k: int) -> np.ndarray:
    """All 2**k submasks of each mask with popcount k, shape (rows, 2**k)."""
    bits = _set_bits(ys, k)
    select = (np.arange(1 << k)[:, None] >> np.arange(k)[None, :]) & 1
    return bits @ select.T


def _by_popcount(ys: np.ndarray):
    counts = popcount(ys)
    for k in np.unique(counts).tolist():
        group = ys[counts == k]
        rows = max(1, CHUNK >> k)
        for i in range(0, len(group), rows):
            yield k, group[i : i + rows]


def se_pairs(code: Code, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ys = np.asarray(ys, dtype=np.int64)
    out_x, out_y = [np.zeros(0, dtype=np.int64)], [np.zeros(0, dtype=np.int64)]
    for k, group in _by_popcount(ys):
        subs = _subsets(group, k)
        rep = np.repeat(group[:, None], subs.shape[1], axis=1)
        ok = eval_code(code, subs.ravel(), rep.ravel())
        out_x.append(subs.ravel()[ok])
        out_y.append(rep.ravel()[ok])
    return np.concatenate(out_x), np.concatenate(out_y)


def has_proper_model(code: Code, ys: np.ndarray) -> np.ndarray:
    ys = np.asarray(ys, dtype=np.int64)
    result = np.zeros(len(ys), dtype=bool)
    index = np.arange(len(ys))
    counts = popcount(ys)
    for k in np.unique(counts).tolist():
        if k == 0:
            continue
        sel = index[counts == k]
        rows = max(1, CHUNK >> k)
        for i in range(0, len(sel), rows):
            part = sel[i : i + rows]
            subs = _subsets(ys[part], k)[:, :-1]  # drop the full set
            rep = np.repeat(ys[part][:, None], subs.shape[1], axis=1)
            ok = eval_code(code, subs.ravel(), rep.ravel()).reshape(subs.shape)
            result[part] = ok.any(axis=1)
    return result
