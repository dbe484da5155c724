"""Independent brute-force oracles for cross-checking the package.

Everything here is deliberately written against plain Python data
structures (adjacency sets, element tuples, itertools enumeration) and
shares no code with gsrec's solvers or kernels.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence


def cayley_adjacency(group, connection_elements) -> list[set[int]]:
    """Adjacency sets of the graph x ~ y iff inv(x)*y in the connection set."""
    n = group.order
    conn = set(connection_elements)
    adj: list[set[int]] = [set() for _ in range(n)]
    for x in range(n):
        ix = int(group.inv[x])
        for y in range(n):
            if y != x and int(group.mul[ix, y]) in conn:
                adj[x].add(y)
    return adj


def alpha_brute(adj: Sequence[set[int]],
                vertices: Optional[Sequence[int]] = None) -> tuple[int, tuple[int, ...]]:
    """Maximum independent set by descending-size combination scan.

    Returns the lexicographically least maximum witness (the first one
    combinations() emits at the winning size).
    """
    verts = sorted(vertices) if vertices is not None else list(range(len(adj)))
    for size in range(len(verts), 0, -1):
        for combo in itertools.combinations(verts, size):
            if all(v not in adj[u] for u, v in itertools.combinations(combo, 2)):
                return size, combo
    return 0, ()


def clique_brute(adj: Sequence[set[int]],
                 vertices: Optional[Sequence[int]] = None) -> tuple[int, tuple[int, ...]]:
    verts = sorted(vertices) if vertices is not None else list(range(len(adj)))
    for size in range(len(verts), 0, -1):
        for combo in itertools.combinations(verts, size):
            if all(v in adj[u] for u, v in itertools.combinations(combo, 2)):
                return size, combo
    return 0, ()


def min_cover_brute_elements(group, a_elements) -> tuple[int, tuple[int, ...]]:
    """Smallest F with F*a = G by ascending-size enumeration over all
    translators (no deduplication; first hit is the lex-least cover)."""
    n = group.order
    translates = []
    for t in range(n):
        translates.append(frozenset(int(group.mul[t, s]) for s in a_elements))
    everything = frozenset(range(n))
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            union = set()
            for t in combo:
                union |= translates[t]
            if union == everything:
                return size, combo
    raise AssertionError("nonempty sets always admit a cover")


def delta_brute(group, member_predicate, a_elements) -> set[int]:
    """Difference set straight from the definition: g such that some member
    B inside A has g*B inside A.  Enumerates all subsets of A."""
    a = sorted(a_elements)
    a_set = set(a)
    out = set()
    for size in range(1, len(a) + 1):
        for combo in itertools.combinations(a, size):
            if not member_predicate(combo):
                continue
            for g in range(group.order):
                if g in out:
                    continue
                if all(int(group.mul[g, x]) in a_set for x in combo):
                    out.add(g)
    return out


def delta_system_brute(group, a_elements, k: int) -> Optional[tuple[int, ...]]:
    """First ordered (k+1)-tuple of distinct elements with
    inv(x_i)*x_j in a for every i < j, scanning permutations lexicographically."""
    a = set(a_elements)
    n = group.order
    for tup in itertools.permutations(range(n), k + 1):
        ok = True
        for i in range(k + 1):
            inv_i = int(group.inv[tup[i]])
            for j in range(i + 1, k + 1):
                if int(group.mul[inv_i, tup[j]]) not in a:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tup
    return None


def ramsey_floor_brute(adj: Sequence[set[int]]) -> Optional[tuple[int, ...]]:
    """A 6-subset with no monochromatic triangle, or None if the floor holds."""
    n = len(adj)
    for combo in itertools.combinations(range(n), 6):
        found = False
        for tri in itertools.combinations(combo, 3):
            x, y, z = tri
            edges = (y in adj[x]) + (z in adj[x]) + (z in adj[y])
            if edges == 0 or edges == 3:
                found = True
                break
        if not found:
            return combo
    return None
