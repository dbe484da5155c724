"""Kernel dispatch layer.

Hot loops (exact clique search, brute-force subset scans, the Ramsey
sweep, the filter-property scan) run on one of two interchangeable
backends: a numba-compiled one and a pure-Python one. Set GSREC_NO_NUMBA=1
to force the fallback. The backends implement identical algorithms with
identical node counts, so every result, witness, and report is the same
either way; only speed differs.

All masks at this layer are plain ints over vertex ids 0..n-1.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence

from .errors import SizeLimitError

_flag = os.environ.get("GSREC_NO_NUMBA", "")
if _flag not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_numba as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BRUTE_MAX_N = 20
RAMSEY_MAX_N = 64
PROP1_MAX_POINTS = 22
PROP1_MAX_GROUP = 64


def backend_name() -> str:
    return _impl.BACKEND


def complement_rows(rows: Sequence[int], n: int) -> list[int]:
    """Adjacency of the complement graph, no self loops."""
    full = (1 << n) - 1
    return [full & ~rows[v] & ~(1 << v) for v in range(n)]


def clique_size(rows: Sequence[int], n: int, cand: Optional[int] = None) -> tuple[int, int]:
    """Max clique size within candidate set; returns (size, nodes)."""
    c0 = (1 << n) - 1 if cand is None else cand
    return _impl.clique_number(rows, n, c0)


def clique_exists(rows: Sequence[int], n: int, cand: int, target: int) -> tuple[bool, int]:
    """Whether a clique of the target size exists within cand; (found, nodes)."""
    if target <= 0:
        return True, 0
    return _impl.clique_feasible(rows, n, cand, target)


def max_clique_set(rows: Sequence[int], n: int,
                   cand: Optional[int] = None) -> tuple[int, int, int]:
    """Max clique with lex-least witness; returns (size, witness_bits, nodes).

    The witness is the maximum clique whose sorted element tuple is
    lexicographically least, built by a greedy completion loop over
    feasibility queries. Node count includes those queries.
    """
    c0 = (1 << n) - 1 if cand is None else cand
    size, nodes = _impl.clique_number(rows, n, c0)
    witness = 0
    cur = c0
    for step in range(size):
        need = size - step - 1
        rem = cur
        placed = False
        while rem:
            vbit = rem & -rem
            rem ^= vbit
            nc = cur & rows[vbit.bit_length() - 1] & ~((vbit << 1) - 1)
            if need == 0:
                ok = True
            else:
                ok, fn = _impl.clique_feasible(rows, n, nc, need)
                nodes += fn
            if ok:
                witness |= vbit
                cur = nc
                placed = True
                break
        if not placed:
            raise RuntimeError("clique witness completion failed")
    return size, witness, nodes


def max_independent_set(rows: Sequence[int], n: int,
                        cand: Optional[int] = None) -> tuple[int, int, int]:
    """Max independent set with lex-least witness via the complement graph."""
    return max_clique_set(complement_rows(rows, n), n, cand)


def brute_independent(rows: Sequence[int], n: int) -> tuple[int, int, int]:
    """Independent-set oracle scanning all 2^n subsets; n <= 20."""
    if n > BRUTE_MAX_N:
        raise SizeLimitError(f"brute-force scan needs at most {BRUTE_MAX_N} vertices, got {n}")
    return _impl.brute_best(rows, n, False)


def brute_clique(rows: Sequence[int], n: int) -> tuple[int, int, int]:
    """Max-clique oracle scanning all 2^n subsets; n <= 20."""
    if n > BRUTE_MAX_N:
        raise SizeLimitError(f"brute-force scan needs at most {BRUTE_MAX_N} vertices, got {n}")
    return _impl.brute_best(rows, n, True)


def ramsey6_scan(rows: Sequence[int], n: int) -> tuple[int, int]:
    """Check every 6-subset carries a monochromatic triangle.

    Returns (bits of first failing 6-subset or 0, subsets scanned).
    """
    if n > RAMSEY_MAX_N:
        raise SizeLimitError(f"Ramsey sweep needs at most {RAMSEY_MAX_N} vertices, got {n}")
    if n < 6:
        return 0, 0
    return _impl.ramsey6(rows, n)


def prop1_scan(minimals: Sequence[int], trans: Sequence[Sequence[int]],
               delta_min: Sequence[int], mul, m: int, n: int) -> tuple[int, int, int, int, int]:
    """Exhaustive filter-property scan; see the backend docstring."""
    if m > PROP1_MAX_POINTS:
        raise SizeLimitError(
            f"exhaustive member scan needs at most {PROP1_MAX_POINTS} points, got {m}"
        )
    if n > PROP1_MAX_GROUP:
        raise SizeLimitError(
            f"exhaustive member scan needs group order at most {PROP1_MAX_GROUP}, got {n}"
        )
    return _impl.prop1_scan(minimals, trans, delta_min, mul, m, n)
