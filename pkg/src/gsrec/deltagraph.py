"""Cayley graphs, exact independence and clique solvers, finite
difference-set parameters, Ramsey extraction, and the bounded-alpha scanner."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .algebra import GroupTable, SubsetMask, inverse_set
from .errors import SizeLimitError, ValidationError

SOLVER_MAX_N = 4096
ORACLE_MAX_N = 20
ATOM_ENUM_MAX = 22


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    """Graph on the group with x ~ y iff inv(x)*y lies in the connection set."""

    group: GroupTable
    connection: SubsetMask
    rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.group.order


@dataclass(frozen=True)
class AlphaResult:
    alpha: int
    witness: SubsetMask
    node_count: int


@dataclass(frozen=True)
class RamseyReport:
    side: str
    z: SubsetMask
    clique_size: int
    independent_size: int
    node_count: int


@dataclass(frozen=True)
class ScanHit:
    connection: SubsetMask
    alpha: int


def cayley_graph(group: GroupTable, a: SubsetMask) -> CayleyGraph:
    """Build the graph; requires the identity in a and a symmetric.

    The identity is stripped from the stored connection set (it would
    only create loops). Asymmetric sets are rejected, never fixed up;
    call symmetrize() explicitly if the union with inverses is meant.
    """
    if a.universe != group.universe:
        raise ValidationError("connection set must be a subset of the group")
    if group.identity not in a:
        raise ValidationError("connection set must contain the identity")
    if inverse_set(a, group).bits != a.bits:
        raise ValidationError(
            "connection set is not symmetric; apply symmetrize() first if "
            "the two-sided closure is intended"
        )
    s_bits = a.bits & ~(1 << group.identity)
    n = group.order
    adj = np.zeros((n, n), dtype=bool)
    rng_idx = np.arange(n)
    rem = s_bits
    while rem:
        low = rem & -rem
        s = low.bit_length() - 1
        rem ^= low
        adj[rng_idx, group.mul[:, s]] = True
    rows = tuple(
        int.from_bytes(np.packbits(adj[x], bitorder="little").tobytes(), "little")
        for x in range(n)
    )
    return CayleyGraph(group=group, connection=SubsetMask(group.universe, s_bits), rows=rows)


def _check_induced(gr: CayleyGraph, induced_on: Optional[SubsetMask]) -> Optional[int]:
    if induced_on is None:
        return None
    if induced_on.universe != gr.group.universe:
        raise ValidationError("induced vertex set must be a subset of the group")
    return induced_on.bits


def _remap_induced(gr: CayleyGraph, cand: int) -> tuple[list[int], list[int]]:
    """Compact relabeling of the induced subgraph, ascending vertex order."""
    verts = []
    rem = cand
    while rem:
        low = rem & -rem
        verts.append(low.bit_length() - 1)
        rem ^= low
    pos = {v: i for i, v in enumerate(verts)}
    small_rows = []
    for v in verts:
        bits = 0
        adj = gr.rows[v] & cand
        while adj:
            low = adj & -adj
            bits |= 1 << pos[low.bit_length() - 1]
            adj ^= low
        small_rows.append(bits)
    return verts, small_rows


def _solve(gr: CayleyGraph, induced_on: Optional[SubsetMask], method: str,
           want_clique: bool) -> AlphaResult:
    cand = _check_induced(gr, induced_on)
    n = gr.n
    if method == "solver":
        if n > SOLVER_MAX_N:
            raise SizeLimitError(f"solver handles at most {SOLVER_MAX_N} vertices, got {n}")
        if want_clique:
            size, wit, nodes = kernels.max_clique_set(gr.rows, n, cand)
        else:
            size, wit, nodes = kernels.max_independent_set(gr.rows, n, cand)
        return AlphaResult(alpha=size, witness=SubsetMask(gr.group.universe, wit),
                           node_count=nodes)
    if method == "oracle":
        c0 = (1 << n) - 1 if cand is None else cand
        count = c0.bit_count()
        if count > ORACLE_MAX_N:
            raise SizeLimitError(
                f"oracle mode handles at most {ORACLE_MAX_N} vertices, got {count}"
            )
        verts, small_rows = _remap_induced(gr, c0)
        if want_clique:
            size, wit_small, nodes = kernels.brute_clique(small_rows, count)
        else:
            size, wit_small, nodes = kernels.brute_independent(small_rows, count)
        wit = 0
        rem = wit_small
        while rem:
            low = rem & -rem
            wit |= 1 << verts[low.bit_length() - 1]
            rem ^= low
        return AlphaResult(alpha=size, witness=SubsetMask(gr.group.universe, wit),
                           node_count=nodes)
    raise ValidationError(f"unknown method {method!r}; use 'solver' or 'oracle'")


def independence_number(gr: CayleyGraph, induced_on: Optional[SubsetMask] = None,
                        *, method: str = "solver") -> AlphaResult:
    """Exact maximum independent set with lex-least maximum witness."""
    return _solve(gr, induced_on, method, want_clique=False)


def max_clique(gr: CayleyGraph, induced_on: Optional[SubsetMask] = None,
               *, method: str = "solver") -> AlphaResult:
    """Exact maximum clique; equals the complement's independence number."""
    return _solve(gr, induced_on, method, want_clique=True)


def delta_parameter(group: GroupTable, a: SubsetMask) -> int:
    """Least t such that every t-subset of G contains an adjacent pair
    of the Cayley graph of a: independence number plus one."""
    gr = cayley_graph(group, a)
    return independence_number(gr).alpha + 1


def is_delta_n_set(group: GroupTable, a: SubsetMask, n: int) -> bool:
    return delta_parameter(group, a) <= n


def find_delta_system(group: GroupTable, a: SubsetMask,
                      k: int) -> Optional[tuple[int, ...]]:
    """Ordered tuple (x_0..x_k) with inv(x_i)*x_j in a for all i < j.

    a may be asymmetric: the condition is one-directional. Returns the
    lexicographically least tuple or None. For symmetric a this is a
    (k+1)-clique of the Cayley graph.
    """
    if a.universe != group.universe:
        raise ValidationError("difference set must be a subset of the group")
    if k < 1:
        raise ValidationError(f"tuple length parameter must be at least 1, got {k}")
    n = group.order
    out_rows = []
    for u in range(n):
        bits = 0
        rem = a.bits
        row = group.mul[u]
        while rem:
            low = rem & -rem
            s = low.bit_length() - 1
            rem ^= low
            bits |= 1 << int(row[s])
        out_rows.append(bits)
    full = (1 << n) - 1
    prefix: list[int] = []
    cands: list[int] = [full]

    def dfs() -> Optional[tuple[int, ...]]:
        if len(prefix) == k + 1:
            return tuple(prefix)
        chosen = 0
        for x in prefix:
            chosen |= 1 << x
        rem = cands[-1] & ~chosen
        while rem:
            low = rem & -rem
            v = low.bit_length() - 1
            rem ^= low
            prefix.append(v)
            cands.append(cands[-1] & out_rows[v])
            got = dfs()
            if got is not None:
                return got
            cands.pop()
            prefix.pop()
        return None

    return dfs()


def ramsey_extract(group: GroupTable, a: SubsetMask, y: SubsetMask) -> RamseyReport:
    """Largest monochromatic side within y: the bigger of the maximum
    clique and maximum independent set of the Cayley graph induced on y,
    ties toward the clique."""
    gr = cayley_graph(group, a)
    if y.universe != group.universe:
        raise ValidationError("sample set must be a subset of the group")
    cl = max_clique(gr, induced_on=y)
    ind = independence_number(gr, induced_on=y)
    if cl.alpha >= ind.alpha:
        side, z = "in-A", cl.witness
    else:
        side, z = "off-A", ind.witness
    return RamseyReport(
        side=side, z=z, clique_size=cl.alpha, independent_size=ind.alpha,
        node_count=cl.node_count + ind.node_count,
    )


def symmetric_connection_sets(group: GroupTable) -> list[SubsetMask]:
    """All symmetric identity-containing subsets of the group, ordered by
    (popcount, element order). Built from inverse-pair atoms."""
    n = group.order
    e = group.identity
    atoms = []
    seen = set()
    for x in range(n):
        if x == e or x in seen:
            continue
        ix = group.inverse(x)
        seen.add(x)
        seen.add(ix)
        atoms.append((1 << x) | (1 << ix))
    if len(atoms) > ATOM_ENUM_MAX:
        raise SizeLimitError(
            f"{len(atoms)} inverse-pair atoms exceed the enumeration bound "
            f"{ATOM_ENUM_MAX}"
        )
    ebit = 1 << e
    out = []
    for pick in range(1 << len(atoms)):
        bits = ebit
        rem = pick
        while rem:
            low = rem & -rem
            bits |= atoms[low.bit_length() - 1]
            rem ^= low
        out.append(SubsetMask(group.universe, bits))
    out.sort(key=SubsetMask.sort_key)
    return out


def scan_bounded_alpha(group: GroupTable, alpha_bound: int,
                       budget: int) -> Iterator[ScanHit]:
    """Emit every symmetric identity-containing connection set, within the
    first `budget` sets in canonical order, whose graph has alpha
    strictly below the bound."""
    if alpha_bound < 1:
        raise ValidationError(f"alpha bound must be at least 1, got {alpha_bound}")
    n = group.order
    sets = symmetric_connection_sets(group)
    for a in sets[:budget]:
        gr = cayley_graph(group, a)
        comp = kernels.complement_rows(gr.rows, n)
        alpha, _nodes = kernels.clique_size(comp, n)
        if alpha < alpha_bound:
            yield ScanHit(connection=a, alpha=alpha)


def product_bound_findings(group: GroupTable) -> tuple[int, list[tuple[SubsetMask, SubsetMask, int, int, int]]]:
    """Scan all pairs (a, b) of symmetric connection sets for violations of
    alpha(a intersect b) <= alpha(a) * alpha(b).

    The bound is not a theorem; violations are returned as findings
    (a, b, alpha_ab, alpha_a, alpha_b), never silently accepted.
    """
    sets = symmetric_connection_sets(group)
    n = group.order
    alpha_of: dict[int, int] = {}
    for a in sets:
        gr = cayley_graph(group, a)
        comp = kernels.complement_rows(gr.rows, n)
        alpha_of[a.bits], _ = kernels.clique_size(comp, n)
    findings = []
    checked = 0
    for i, a in enumerate(sets):
        for b in sets[i:]:
            checked += 1
            ab = a.bits & b.bits
            alpha_ab = alpha_of[ab]
            if alpha_ab > alpha_of[a.bits] * alpha_of[b.bits]:
                findings.append((a, b, alpha_ab, alpha_of[a.bits], alpha_of[b.bits]))
    return checked, findings


def edge_list(gr: CayleyGraph) -> str:
    """Text export: one 'u v' line per edge, ascending."""
    lines = []
    for u in range(gr.n):
        adj = gr.rows[u] >> (u + 1) << (u + 1)
        while adj:
            low = adj & -adj
            v = low.bit_length() - 1
            adj ^= low
            lines.append(f"{u} {v}")
    return "\n".join(lines) + ("\n" if lines else "")
