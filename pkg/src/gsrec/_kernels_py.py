"""Pure-Python kernel backend.

Masks are plain ints. Every function mirrors the numba backend exactly:
same branch order, same tie rules, same node-count semantics, so reports
are byte-identical whichever backend runs.
"""

from __future__ import annotations

import itertools
from typing import Sequence

BACKEND = "python"

_TRIPLES = tuple(itertools.combinations(range(6), 3))


def _colorize(bits: int, adj: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedy color classes; vertices listed class by class, ascending ids."""
    order: list[int] = []
    colors: list[int] = []
    tmp = bits
    color = 0
    while tmp:
        color += 1
        q = tmp
        while q:
            vbit = q & -q
            v = vbit.bit_length() - 1
            order.append(v)
            colors.append(color)
            tmp ^= vbit
            q = (q ^ vbit) & ~adj[v]
    return order, colors


def _clique_core(adj: Sequence[int], cand: int, target: int) -> tuple[int, int]:
    """Branch and bound max clique on candidate set `cand`.

    target <= 0: full search, returns (max clique size, nodes).
    target > 0: existence query, returns (1 if a clique of that size
    exists else 0, nodes). Nodes count the root plus every child
    subproblem created.
    """
    nodes = 1
    best = 0
    order0, colors0 = _colorize(cand, adj)
    p_stack = [cand]
    orders = [order0]
    colors = [colors0]
    idx = [len(order0) - 1]
    d = 0
    while d >= 0:
        if idx[d] < 0:
            d -= 1
            continue
        i = idx[d]
        v = orders[d][i]
        c = colors[d][i]
        idx[d] -= 1
        limit = target - 1 if target > 0 else best
        if d + c <= limit:
            idx[d] = -1
            continue
        vbit = 1 << v
        child = p_stack[d] & adj[v]
        p_stack[d] &= ~vbit
        nodes += 1
        rchild = d + 1
        if target > 0:
            if rchild >= target:
                return 1, nodes
        elif rchild > best:
            best = rchild
        if child:
            d += 1
            o, cl = _colorize(child, adj)
            if d == len(p_stack):
                p_stack.append(child)
                orders.append(o)
                colors.append(cl)
                idx.append(len(o) - 1)
            else:
                p_stack[d] = child
                orders[d] = o
                colors[d] = cl
                idx[d] = len(o) - 1
    if target > 0:
        return 0, nodes
    return best, nodes


def clique_number(rows: Sequence[int], n: int, cand: int) -> tuple[int, int]:
    return _clique_core(rows, cand, 0)


def clique_feasible(rows: Sequence[int], n: int, cand: int, target: int) -> tuple[bool, int]:
    found, nodes = _clique_core(rows, cand, target)
    return bool(found), nodes


def _lex_less(a: int, b: int) -> bool:
    """Sorted-element-tuple order for equal-popcount masks."""
    diff = a ^ b
    low = diff & -diff
    return a & low != 0


def brute_best(rows: Sequence[int], n: int, want_clique: bool) -> tuple[int, int, int]:
    """Scan all 2^n subsets; returns (best size, lex-least witness, 2^n)."""
    best_pc = 0
    best = 0
    for s in range(1, 1 << n):
        ok = True
        rem = s
        while rem:
            vbit = rem & -rem
            v = vbit.bit_length() - 1
            rem ^= vbit
            if want_clique:
                if s & ~rows[v] != vbit:
                    ok = False
                    break
            else:
                if rows[v] & s:
                    ok = False
                    break
        if not ok:
            continue
        pc = s.bit_count()
        if pc > best_pc or (pc == best_pc and _lex_less(s, best)):
            best_pc = pc
            best = s
    return best_pc, best, 1 << n


def ramsey6(rows: Sequence[int], n: int) -> tuple[int, int]:
    """Scan all 6-subsets for a monochromatic triangle in either color.

    Returns (bits of the first 6-subset with no such triangle, count of
    6-subsets scanned); first slot is 0 when every 6-subset has one.
    """
    scanned = 0
    for combo in itertools.combinations(range(n), 6):
        scanned += 1
        pb = 0
        for ii in range(6):
            for jj in range(ii + 1, 6):
                if rows[combo[ii]] >> combo[jj] & 1:
                    pb |= 1 << (ii * 6 + jj)
        mono = False
        for ti, tj, tk in _TRIPLES:
            b = (pb >> (ti * 6 + tj) & 1) + (pb >> (ti * 6 + tk) & 1) + (pb >> (tj * 6 + tk) & 1)
            if b == 0 or b == 3:
                mono = True
                break
        if not mono:
            bits = 0
            for x in combo:
                bits |= 1 << x
            return bits, scanned
    return 0, scanned


def prop1_scan(minimals: Sequence[int], trans: Sequence[Sequence[int]],
               delta_min: Sequence[int], mul, m: int, n: int) -> tuple[int, int, int, int, int]:
    """Exhaustive filter-property scan over all members of an upward family.

    minimals: antichain of minimal member masks over m points.
    trans[g][i]: mask of g applied pointwise to minimals[i].
    delta_min[i]: difference-set mask (over the n group elements) of minimals[i].
    Checks, for every member A and every g in the difference set of A with
    canonical witness B: g * diffset(B) lies inside diffset(A); on failure of
    the canonical witness every alternative witness is tried.

    Returns (ok, failing A bits, failing g, members scanned, (A, g) pairs checked).
    """
    k = len(minimals)
    wit = [-1] * n
    members = 0
    pairs = 0
    for a in range(1, 1 << m):
        mem = False
        for i in range(k):
            if minimals[i] & ~a == 0:
                mem = True
                break
        if not mem:
            continue
        members += 1
        delta_a = 0
        for g in range(n):
            wit[g] = -1
            for i in range(k):
                if minimals[i] & ~a == 0 and trans[g][i] & ~a == 0:
                    wit[g] = i
                    delta_a |= 1 << g
                    break
        for g in range(n):
            i0 = wit[g]
            if i0 < 0:
                continue
            pairs += 1
            if _shift_inside(g, delta_min[i0], delta_a, mul):
                continue
            ok = False
            for i in range(k):
                if minimals[i] & ~a == 0 and trans[g][i] & ~a == 0:
                    if _shift_inside(g, delta_min[i], delta_a, mul):
                        ok = True
                        break
            if not ok:
                return 0, a, g, members, pairs
    return 1, 0, -1, members, pairs


def _shift_inside(g: int, dm: int, delta_a: int, mul) -> bool:
    while dm:
        hbit = dm & -dm
        h = hbit.bit_length() - 1
        dm ^= hbit
        if delta_a >> int(mul[g, h]) & 1 == 0:
            return False
    return True
