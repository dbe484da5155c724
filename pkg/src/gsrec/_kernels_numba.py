"""Numba kernel backend.

Same algorithms, branch order, tie rules, and node-count semantics as
the pure-Python backend; masks are packed into uint64 words at the
boundary. Importing this module requires numba.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np
from numba import njit

BACKEND = "numba"

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_M64 = 0xFFFFFFFFFFFFFFFF

_TRIPLES = np.array(list(itertools.combinations(range(6), 3)), dtype=np.int64)


@njit(cache=True, nogil=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True, nogil=True, inline="always")
def _tz(lsb):
    return int(_popcount(lsb - _U1))


@njit(cache=True, nogil=True)
def _colorize_words(adj, w_count, p_stack, d, order_buf, color_buf, off, tmp, q):
    pos = off[d]
    base = pos
    nonzero = False
    for w in range(w_count):
        tmp[w] = p_stack[d, w]
        if tmp[w] != _U0:
            nonzero = True
    color = 0
    while nonzero:
        color += 1
        for w in range(w_count):
            q[w] = tmp[w]
        w = 0
        while w < w_count:
            if q[w] == _U0:
                w += 1
                continue
            word = q[w]
            lsb = word & (_U0 - word)
            v = (w << 6) + _tz(lsb)
            order_buf[pos] = v
            color_buf[pos] = color
            pos += 1
            tmp[w] &= ~lsb
            q[w] &= ~lsb
            for w2 in range(w_count):
                q[w2] &= ~adj[v, w2]
        nonzero = False
        for w in range(w_count):
            if tmp[w] != _U0:
                nonzero = True
                break
    off[d + 1] = pos
    return pos - base


@njit(cache=True, nogil=True)
def _clique_core_words(adj, n, w_count, cand, target):
    maxd = n + 2
    p_stack = np.zeros((maxd, w_count), np.uint64)
    total = n * (n + 1) // 2 + 1
    order_buf = np.zeros(total, np.int32)
    color_buf = np.zeros(total, np.int32)
    off = np.zeros(maxd + 1, np.int64)
    idx = np.zeros(maxd, np.int64)
    tmp = np.zeros(w_count, np.uint64)
    q = np.zeros(w_count, np.uint64)
    for w in range(w_count):
        p_stack[0, w] = cand[w]
    nodes = 1
    best = 0
    idx[0] = _colorize_words(adj, w_count, p_stack, 0, order_buf, color_buf, off, tmp, q) - 1
    d = 0
    while d >= 0:
        if idx[d] < 0:
            d -= 1
            continue
        i = off[d] + idx[d]
        v = order_buf[i]
        c = color_buf[i]
        idx[d] -= 1
        if target > 0:
            limit = target - 1
        else:
            limit = best
        if d + c <= limit:
            idx[d] = -1
            continue
        vw = v >> 6
        vb = _U1 << np.uint64(v & 63)
        empty = True
        for w in range(w_count):
            cw = p_stack[d, w] & adj[v, w]
            p_stack[d + 1, w] = cw
            if cw != _U0:
                empty = False
        p_stack[d, vw] &= ~vb
        nodes += 1
        rchild = d + 1
        if target > 0:
            if rchild >= target:
                return 1, nodes
        elif rchild > best:
            best = rchild
        if not empty:
            d += 1
            idx[d] = _colorize_words(adj, w_count, p_stack, d, order_buf, color_buf, off, tmp, q) - 1
    if target > 0:
        return 0, nodes
    return best, nodes


@njit(cache=True, nogil=True, inline="always")
def _lex_less_u64(a, b):
    diff = a ^ b
    low = diff & (_U0 - diff)
    return a & low != _U0


@njit(cache=True, nogil=True)
def _brute_words(adj, n, want_clique):
    best_pc = _U0
    best = _U0
    total = np.int64(1) << np.int64(n)
    for s_i in range(1, total):
        s = np.uint64(s_i)
        ok = True
        rem = s
        while rem != _U0:
            vbit = rem & (_U0 - rem)
            v = _tz(vbit)
            rem ^= vbit
            if want_clique:
                if s & ~adj[v] != vbit:
                    ok = False
                    break
            else:
                if adj[v] & s != _U0:
                    ok = False
                    break
        if not ok:
            continue
        pc = _popcount(s)
        if pc > best_pc or (pc == best_pc and _lex_less_u64(s, best)):
            best_pc = pc
            best = s
    return int(best_pc), best, total


@njit(cache=True, nogil=True)
def _ramsey6_words(adj, n, triples):
    scanned = 0
    y = np.empty(6, np.int64)
    for i1 in range(n - 5):
        y[0] = i1
        for i2 in range(i1 + 1, n - 4):
            y[1] = i2
            for i3 in range(i2 + 1, n - 3):
                y[2] = i3
                for i4 in range(i3 + 1, n - 2):
                    y[3] = i4
                    for i5 in range(i4 + 1, n - 1):
                        y[4] = i5
                        for i6 in range(i5 + 1, n):
                            y[5] = i6
                            scanned += 1
                            pb = 0
                            for ii in range(6):
                                ri = adj[y[ii]]
                                for jj in range(ii + 1, 6):
                                    if ri >> np.uint64(y[jj]) & _U1 != _U0:
                                        pb |= 1 << (ii * 6 + jj)
                            mono = False
                            for t in range(triples.shape[0]):
                                ti = triples[t, 0]
                                tj = triples[t, 1]
                                tk = triples[t, 2]
                                b = (pb >> (ti * 6 + tj) & 1) + (pb >> (ti * 6 + tk) & 1) \
                                    + (pb >> (tj * 6 + tk) & 1)
                                if b == 0 or b == 3:
                                    mono = True
                                    break
                            if not mono:
                                bits = _U0
                                for ii in range(6):
                                    bits |= _U1 << np.uint64(y[ii])
                                return bits, scanned
    return _U0, scanned


@njit(cache=True, nogil=True, inline="always")
def _shift_inside(g, dm, delta_a, mul):
    while dm != _U0:
        hbit = dm & (_U0 - dm)
        h = _tz(hbit)
        dm ^= hbit
        if delta_a >> np.uint64(mul[g, h]) & _U1 == _U0:
            return False
    return True


@njit(cache=True, nogil=True)
def _prop1_words(minimals, trans, delta_min, mul, m, n):
    k = minimals.shape[0]
    wit = np.empty(n, np.int64)
    members = 0
    pairs = 0
    total = np.int64(1) << np.int64(m)
    for a_i in range(1, total):
        a = np.uint64(a_i)
        na = ~a
        mem = False
        for i in range(k):
            if minimals[i] & na == _U0:
                mem = True
                break
        if not mem:
            continue
        members += 1
        delta_a = _U0
        for g in range(n):
            wit[g] = -1
            for i in range(k):
                if minimals[i] & na == _U0 and trans[g, i] & na == _U0:
                    wit[g] = i
                    delta_a |= _U1 << np.uint64(g)
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
                if minimals[i] & na == _U0 and trans[g, i] & na == _U0:
                    if _shift_inside(g, delta_min[i], delta_a, mul):
                        ok = True
                        break
            if not ok:
                return 0, a, g, members, pairs
    return 1, _U0, -1, members, pairs


def _rows_to_words(rows: Sequence[int], n: int) -> tuple[np.ndarray, int]:
    w_count = max(1, (n + 63) >> 6)
    arr = np.zeros((len(rows), w_count), np.uint64)
    for i, r in enumerate(rows):
        for w in range(w_count):
            arr[i, w] = (r >> (64 * w)) & _M64
    return arr, w_count


def _bits_to_vec(bits: int, w_count: int) -> np.ndarray:
    vec = np.zeros(w_count, np.uint64)
    for w in range(w_count):
        vec[w] = (bits >> (64 * w)) & _M64
    return vec


def clique_number(rows: Sequence[int], n: int, cand: int) -> tuple[int, int]:
    adj, w_count = _rows_to_words(rows, n)
    res, nodes = _clique_core_words(adj, n, w_count, _bits_to_vec(cand, w_count), 0)
    return int(res), int(nodes)


def clique_feasible(rows: Sequence[int], n: int, cand: int, target: int) -> tuple[bool, int]:
    adj, w_count = _rows_to_words(rows, n)
    res, nodes = _clique_core_words(adj, n, w_count, _bits_to_vec(cand, w_count), target)
    return bool(res), int(nodes)


def brute_best(rows: Sequence[int], n: int, want_clique: bool) -> tuple[int, int, int]:
    adj = np.array([r & _M64 for r in rows], dtype=np.uint64)
    pc, best, nodes = _brute_words(adj, n, want_clique)
    return int(pc), int(best), int(nodes)


def ramsey6(rows: Sequence[int], n: int) -> tuple[int, int]:
    adj = np.array([r & _M64 for r in rows], dtype=np.uint64)
    bits, scanned = _ramsey6_words(adj, n, _TRIPLES)
    return int(bits), int(scanned)


def prop1_scan(minimals: Sequence[int], trans: Sequence[Sequence[int]],
               delta_min: Sequence[int], mul, m: int, n: int) -> tuple[int, int, int, int, int]:
    k = len(minimals)
    min_arr = np.array([v & _M64 for v in minimals], dtype=np.uint64)
    trans_arr = np.zeros((n, k), np.uint64)
    for g in range(n):
        row = trans[g]
        for i in range(k):
            trans_arr[g, i] = row[i] & _M64
    dmin_arr = np.array([v & _M64 for v in delta_min], dtype=np.uint64)
    mul_arr = np.ascontiguousarray(mul, dtype=np.int32)
    ok, a, g, members, pairs = _prop1_words(min_arr, trans_arr, dmin_arr, mul_arr, m, n)
    return int(ok), int(a), int(g), int(members), int(pairs)
