"""Enumeration kernels with a numba backend and a pure-numpy fallback.

The numba backend is used when numba imports cleanly, unless the
environment variable ``SEQUIV_NO_NUMBA`` is set to a non-empty value other
than ``0``. Both backends expose ``eval_code``, ``se_pairs`` and
``has_proper_model`` with identical results.
"""

from __future__ import annotations

import importlib
import os
import time
from types import ModuleType

import numpy as np

from ..errors import CapacityError
from ..nested import DEFAULT_MAX_ATOMS, DEFAULT_MAX_ATOMS_POSITIVE
from . import numpy_backend
from .ir import Code, CodeBuilder, Compiled, compile_formula, compile_nested, compile_wcp

__all__ = [
    "Code",
    "CodeBuilder",
    "Compiled",
    "answer_set_masks",
    "backend",
    "check_cap",
    "compile_formula",
    "compile_nested",
    "compile_wcp",
    "eval_code",
    "get_backend",
    "se_pair_masks",
    "warm_up",
]

_cache: dict[str, ModuleType] = {"numpy": numpy_backend}


def numba_disabled() -> bool:
    flag = os.environ.get("SEQUIV_NO_NUMBA", "")
    return flag not in ("", "0")


def get_backend(name: str) -> ModuleType:
    if name not in _cache:
        if name != "numba":
            raise ValueError(f"unknown kernel backend {name!r}")
        _cache[name] = importlib.import_module(".numba_backend", __name__)
    return _cache[name]


def numba_available() -> bool:
    try:
        get_backend("numba")
    except ImportError:
        return False
    return True


def backend() -> ModuleType:
    if numba_disabled() or not numba_available():
        return numpy_backend
    return get_backend("numba")


def check_cap(what: str, n: int, positive: bool, max_atoms: int | None) -> None:
    cap = max_atoms
    if cap is None:
        cap = DEFAULT_MAX_ATOMS_POSITIVE if positive else DEFAULT_MAX_ATOMS
    if n > cap:
        raise CapacityError(what, n, cap)


def eval_code(code: Code, xs, ys=None) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64)
    return backend().eval_code(code, xs, xs if ys is None else np.asarray(ys, dtype=np.int64))


def satisfying(compiled: Compiled, candidates: np.ndarray) -> np.ndarray:
    """Candidates that classically satisfy the program."""
    candidates = np.asarray(candidates, dtype=np.int64)
    return candidates[backend().eval_code(compiled.there, candidates, candidates)]


def answer_set_masks(compiled: Compiled, candidates: np.ndarray) -> np.ndarray:
    """Candidates ``y`` with ``y |= P`` and no proper subset satisfying ``P^y``."""
    ys = satisfying(compiled, candidates)
    return ys[~backend().has_proper_model(compiled.here, ys)]


def se_pair_masks(compiled: Compiled, candidates: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All ``(x, y)`` with ``y`` a satisfying candidate and ``x`` a subset with ``x |= P^y``."""
    return backend().se_pairs(compiled.here, satisfying(compiled, candidates))


def warm_up() -> float:
    """Compile (or load from cache) the active backend's kernels; returns seconds spent."""
    from ..literals import Literal, Universe
    from ..nested import NestedProgram, Not, Or, Rule

    t0 = time.perf_counter()
    a, b = Literal("a"), Literal("b")
    u = Universe(["a", "b"])
    compiled = compile_nested(NestedProgram((Rule(Or(a, b), Not(Literal("b", True))),)), u)
    masks = u.consistent_masks(False)
    answer_set_masks(compiled, masks)
    se_pair_masks(compiled, masks)
    return time.perf_counter() - t0
