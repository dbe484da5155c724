"""Benchmark the numba kernel backend against the pure-Python fallback.

Both backends implement identical algorithms with identical node counts,
so every workload also asserts result equality before reporting timings.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from gsrec import _kernels_py
from gsrec.algebra import (
    SubsetMask,
    cyclic_group,
    left_regular_action,
    symmetric_group,
    symmetrize,
    translate,
)
from gsrec.deltagraph import cayley_graph
from gsrec.families import min_size_family, minimal_members
from gsrec.kernels import complement_rows
from gsrec.recurrence import delta

try:
    from gsrec import _kernels_numba
except ImportError:
    _kernels_numba = None


def _circulant_rows(n: int, offsets) -> list[int]:
    group = cyclic_group(n)
    conn = symmetrize(
        SubsetMask.from_elements(group.universe, [0, *offsets]), group
    )
    return list(cayley_graph(group, conn).rows)


def _s4_rows() -> list[int]:
    group = symmetric_group(4)
    conn = symmetrize(SubsetMask.from_elements(group.universe, [0, 1, 6, 9]), group)
    return list(cayley_graph(group, conn).rows)


def _random_rows(n: int, p: float, seed: int) -> list[int]:
    rng = random.Random(seed)
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return rows


def _prop1_inputs(n: int, k: int):
    group = cyclic_group(n)
    action = left_regular_action(group)
    fam = min_size_family(action, k)
    mins = list(minimal_members(fam))
    min_bits = [mm.bits for mm in mins]
    trans = [[translate(g, mm, action).bits for mm in mins] for g in range(n)]
    dmin = [delta(action, fam, mm).set.bits for mm in mins]
    return min_bits, trans, dmin, group.mul, n, n


def _workloads():
    circ = _circulant_rows(63, [1, 5, 8, 12])
    s4 = _s4_rows()
    rand90 = _random_rows(90, 0.8, 17)
    brute = _random_rows(18, 0.5, 19)
    ramsey = _random_rows(22, 0.5, 29)
    p1 = _prop1_inputs(12, 2)
    full = lambda n: (1 << n) - 1
    return [
        ("clique circulant n=63",
         lambda impl: impl.clique_number(circ, 63, full(63))),
        ("alpha S4 Cayley n=24",
         lambda impl: impl.clique_number(complement_rows(s4, 24), 24, full(24))),
        ("clique random n=90 p=.8",
         lambda impl: impl.clique_number(rand90, 90, full(90))),
        ("feasible random n=90 k=20",
         lambda impl: impl.clique_feasible(rand90, 90, full(90), 20)),
        ("brute subsets n=18",
         lambda impl: impl.brute_best(brute, 18, True)),
        ("ramsey sweep n=22",
         lambda impl: impl.ramsey6(ramsey, 22)),
        ("filter scan Z12 min2",
         lambda impl: impl.prop1_scan(*p1)),
    ]


def _best_of(fn, impl, repeat: int) -> tuple[float, object]:
    result = fn(impl)  # warm-up (and the value we compare)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(impl)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timed repetitions per workload (best is kept)")
    args = parser.parse_args()

    if _kernels_numba is None:
        print("numba backend unavailable; nothing to compare")
        return 0

    rows = []
    for name, fn in _workloads():
        t_py, r_py = _best_of(fn, _kernels_py, args.repeat)
        t_nb, r_nb = _best_of(fn, _kernels_numba, args.repeat)
        assert r_py == r_nb, f"{name}: backends disagree: {r_py} vs {r_nb}"
        rows.append((name, t_py, t_nb, t_py / t_nb))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'python':>10}  {'numba':>10}  {'speedup':>8}")
    for name, t_py, t_nb, ratio in rows:
        print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms  "
              f"{ratio:>7.1f}x")
    print(f"\nall {len(rows)} workloads returned identical results on both backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
