"""Time the numba kernels against the numpy fallback on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Workloads: satisfying-set filtering, SE-pair enumeration and the minimality
check used for answer sets, on the 4-queens programs (16 atoms, atom-only)
and a random program with classical negation (10 atoms, 3^10 sets).
Each kernel is timed on its own (best of ``--repeat``) and the two backends'
results are checked for equality.
"""

import argparse
import random
import time

import numpy as np

from sequiv import kernels
from sequiv.generate import atom_names, random_nested_program
from sequiv.literals import Universe
from sequiv.parser import parse_wcp


def queens_text(n):
    q = lambda i, j: f"q({i},{j})"
    cols = "".join("1 {" + ", ".join(q(i, j) for i in range(1, n + 1)) + "} 1.\n" for j in range(1, n + 1))
    rows = "".join(
        f"bot :- {q(i, j)}, {q(i, k)}.\n" for i in range(1, n + 1) for j in range(1, n + 1) for k in range(j + 1, n + 1)
    )
    return cols + rows


def workloads():
    prog = parse_wcp(queens_text(4))
    u = Universe(prog.signature)
    yield "queens n=4 (wcp, 16 atoms)", kernels.compile_wcp(prog, u), u.consistent_masks(True)
    rng = random.Random(1)
    prog = random_nested_program(rng, atom_names(10), 8, negation=True)
    u = Universe(prog.signature)
    yield "random nested (10 atoms, 3^10)", kernels.compile_nested(prog, u), u.consistent_masks(False)


KERNELS = {
    "satisfying": lambda b, c, ys, sat: b.eval_code(c.there, ys, ys),
    "se_pairs": lambda b, c, ys, sat: b.se_pairs(c.here, sat),
    "minimality": lambda b, c, ys, sat: b.has_proper_model(c.here, sat),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        # pair order may differ between backends
        oa, ob = np.lexsort(a), np.lexsort(b)
        return all(np.array_equal(x[oa], y[ob]) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = {"numpy": kernels.get_backend("numpy"), "numba": kernels.get_backend("numba")}
    print(f"{'workload':32s} {'kernel':11s} {'numpy s':>9s} {'numba s':>9s} {'speedup':>8s}")
    for name, compiled, ys in workloads():
        sat = ys[backends["numpy"].eval_code(compiled.there, ys, ys)]
        for kname, kernel in KERNELS.items():
            # first numba call may compile; keep it out of the timings
            kernel(backends["numba"], compiled, ys[:4], sat[:4])
            t_np, out_np = best_of(lambda: kernel(backends["numpy"], compiled, ys, sat), args.repeat)
            t_nb, out_nb = best_of(lambda: kernel(backends["numba"], compiled, ys, sat), args.repeat)
            assert same(out_np, out_nb), f"backends disagree on {kname}"
            print(f"{name:32s} {kname:11s} {t_np:9.4f} {t_nb:9.4f} {t_np / t_nb:7.2f}x")


if __name__ == "__main__":
    main()
