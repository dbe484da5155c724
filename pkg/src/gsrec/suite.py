"""Catalogue-wide verification suite.

Runs, for every group in a catalogue, a battery of cells: difference-set
identities, filter-kernel and witness-shadow checks, the packing
comparison, cover bounds, the two-coloring floor, product-bound findings,
and a solver-versus-oracle agreement corpus.  The resulting payload is
deterministic (fixed seed, work counters instead of clocks) and merged in
catalogue order regardless of worker count.
"""

from __future__ import annotations

import random
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .algebra import (
    ActionTable,
    GroupTable,
    SubsetMask,
    inverse_set,
    left_regular_action,
    product_set,
)
from .catalogue import standard_families
from .covering import min_cover, min_cover_brute, point_greedy_cover, prop2_check
from .deltagraph import (
    cayley_graph,
    independence_number,
    max_clique,
    product_bound_findings,
    ramsey_extract,
    symmetric_connection_sets,
)
from .errors import GsrecError
from .families import minimal_members
from .recurrence import (
    delta,
    delta_simple,
    is_left_topological,
    prop1_witness_check,
    recurrence_filter_base,
)
from .report import set_payload

MAX_FAILURES_RECORDED = 8


@dataclass(frozen=True)
class SuiteOptions:
    max_order: Optional[int] = None
    jobs: int = 1
    seed: int = 7
    agreement_per_group: int = 320
    ramsey_samples: int = 4
    covering_max_order: int = 16
    covering_exhaustive_order: int = 10
    covering_sampled: int = 1000
    ramsey_min_order: int = 6
    ramsey_max_order: int = 13
    product_bound_max_order: int = 12


def _group_rng(options: SuiteOptions, group: GroupTable, tag: str) -> random.Random:
    mix = zlib.crc32(f"{group.name}:{tag}".encode())
    return random.Random((options.seed << 32) ^ mix)


class _Cell:
    """Accumulates counts and the first few failures for one cell."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.counts: dict[str, int] = {}
        self.failures: list[dict] = []
        self.extra: dict = {}

    def bump(self, key: str, by: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + by

    def fail(self, **payload) -> None:
        self.bump("failures")
        if len(self.failures) < MAX_FAILURES_RECORDED:
            self.failures.append(payload)

    def done(self, status: Optional[str] = None) -> dict:
        if status is None:
            status = "fail" if self.counts.get("failures") else "ok"
        out = {"cell": self.name, "status": status, "counts": self.counts}
        if self.failures:
            out["failures"] = self.failures
        out.update(self.extra)
        return out


def _skip(name: str, reason: str) -> dict:
    return {"cell": name, "status": "skip", "counts": {}, "reason": reason}


def _cell_delta_identities(group: GroupTable, action: ActionTable,
                           families) -> dict:
    cell = _Cell("delta_identities")
    e = group.identity
    for fam in families:
        cell.bump("families")
        for a in minimal_members(fam):
            cell.bump("minimal_sets")
            dr = delta(action, fam, a)
            ds = dr.set
            aa = product_set(a, inverse_set(a, group), group)
            simple = delta_simple(action, fam, a)
            bad = []
            if e not in ds:
                bad.append("identity-missing")
            if inverse_set(ds, group).bits != ds.bits:
                bad.append("not-symmetric")
            if ds.bits & ~aa.bits:
                bad.append("outside-difference-set")
            if simple.bits != ds.bits:
                bad.append("simple-form-disagrees")
            if bad:
                cell.fail(family=fam.name, a=set_payload(a, group),
                          delta=set_payload(ds, group), violated=bad)
            else:
                cell.bump("checks", 4)
    return cell.done()


def _cell_filter(group: GroupTable, action: ActionTable, families) -> dict:
    cell = _Cell("filter")
    modes = set()
    for fam in families:
        cell.bump("families")
        fb = recurrence_filter_base(action, fam)
        lt = is_left_topological(fb, group)
        if not lt.left_topological:
            cell.fail(family=fam.name, check="kernel-product",
                      witness=list(lt.witness))
        p1 = prop1_witness_check(action, fam)
        modes.add(p1.mode)
        cell.bump("prop1_members", p1.members_checked)
        cell.bump("prop1_pairs", p1.pairs_checked)
        if not p1.holds:
            a, g = p1.failing
            cell.fail(family=fam.name, check="witness-shadow",
                      a=set_payload(a, group), g=g)
    cell.extra["prop1_modes"] = sorted(modes)
    return cell.done()


def _cell_prop2(group: GroupTable, action: ActionTable, families) -> dict:
    cell = _Cell("prop2")
    for fam in families:
        cell.bump("families")
        for a in minimal_members(fam):
            rep = prop2_check(action, fam, a)
            cell.bump("sets")
            if not rep.equal:
                cell.fail(family=fam.name, a=set_payload(a, group),
                          packing=rep.packing,
                          alpha_of_delta_graph=rep.alpha_of_delta_graph)
    return cell.done()


def _choose_connection_sets(group: GroupTable,
                            options: SuiteOptions) -> list[SubsetMask]:
    sets = symmetric_connection_sets(group)
    if (group.order > options.covering_exhaustive_order
            and len(sets) > options.covering_sampled):
        rng = _group_rng(options, group, "covering-sample")
        idx = sorted(rng.sample(range(len(sets)), options.covering_sampled))
        sets = [sets[i] for i in idx]
    return sets


def _compare_alpha_routes(cell: _Cell, group: GroupTable, gr,
                          induced_on: Optional[SubsetMask], label: str) -> None:
    """Solver route vs exhaustive oracle route, value and witness."""
    for fn, what in ((independence_number, "alpha"), (max_clique, "clique")):
        solved = fn(gr, induced_on=induced_on)
        oracle = fn(gr, induced_on=induced_on, method="oracle")
        cell.bump("oracle_checked")
        cell.bump("solver_nodes", solved.node_count)
        if (solved.alpha != oracle.alpha
                or solved.witness.bits != oracle.witness.bits):
            cell.bump("oracle_disagreements")
            cell.fail(instance=label, quantity=what,
                      solver=[solved.alpha, set_payload(solved.witness, group)],
                      oracle=[oracle.alpha, set_payload(oracle.witness, group)])


def _cell_covering(group: GroupTable, options: SuiteOptions) -> dict:
    if group.order > options.covering_max_order:
        return _skip("covering", f"group order {group.order} above "
                                 f"{options.covering_max_order}")
    cell = _Cell("covering")
    for a in _choose_connection_sets(group, options):
        cell.bump("connection_sets")
        gr = cayley_graph(group, a)
        alpha = independence_number(gr)
        greedy = point_greedy_cover(group, a)
        exact = min_cover(group, a)
        cell.bump("solver_nodes", alpha.node_count + exact.node_count)
        if not (exact.size <= greedy.size <= alpha.alpha):
            cell.fail(connection=set_payload(a, group), check="cover-bounds",
                      min_cover=exact.size, point_greedy=greedy.size,
                      alpha=alpha.alpha)
        if not exact.optimal:
            cell.fail(connection=set_payload(a, group), check="cover-certified")
        label = f"cover[{','.join(map(str, a.elements()))}]"
        _compare_alpha_routes(cell, group, gr, None, label)
        brute = min_cover_brute(group, a)
        cell.bump("oracle_checked")
        if brute.size != exact.size or brute.cover.bits != exact.cover.bits:
            cell.bump("oracle_disagreements")
            cell.fail(instance=label, quantity="min-cover",
                      solver=[exact.size, set_payload(exact.cover, group)],
                      oracle=[brute.size, set_payload(brute.cover, group)])
    return cell.done()


def _cell_ramsey(group: GroupTable, options: SuiteOptions) -> dict:
    n = group.order
    if not options.ramsey_min_order <= n <= options.ramsey_max_order:
        return _skip("ramsey", f"group order {n} outside "
                               f"[{options.ramsey_min_order}, "
                               f"{options.ramsey_max_order}]")
    cell = _Cell("ramsey")
    rng = _group_rng(options, group, "ramsey-extract")
    for a in symmetric_connection_sets(group):
        cell.bump("connection_sets")
        gr = cayley_graph(group, a)
        fail_bits, scanned = kernels.ramsey6_scan(gr.rows, n)
        cell.bump("six_subsets", scanned)
        if fail_bits:
            cell.fail(connection=set_payload(a, group), check="floor",
                      y=set_payload(SubsetMask(group.universe, fail_bits), group))
            continue
        for _ in range(options.ramsey_samples):
            y = SubsetMask.from_elements(group.universe, rng.sample(range(n), 6))
            rep = ramsey_extract(group, a, y)
            cell.bump("extracts")
            zb = rep.z.bits
            ok = (zb & ~y.bits == 0 and len(rep.z) >= 3
                  and len(rep.z) == max(rep.clique_size, rep.independent_size))
            want_adjacent = rep.side == "in-A"
            for v in rep.z.elements():
                got = gr.rows[v] & zb
                if got != ((zb ^ (1 << v)) if want_adjacent else 0):
                    ok = False
                    break
            if not ok:
                cell.fail(connection=set_payload(a, group), check="extract",
                          y=set_payload(y, group), side=rep.side,
                          z=set_payload(rep.z, group))
            induced = f"ramsey[{','.join(map(str, a.elements()))}]"
            _compare_alpha_routes(cell, group, gr, y, induced)
    return cell.done()


def _cell_product_bound(group: GroupTable, options: SuiteOptions) -> dict:
    if group.order > options.product_bound_max_order:
        return _skip("product_bound", f"group order {group.order} above "
                                      f"{options.product_bound_max_order}")
    cell = _Cell("product_bound")
    checked, findings = product_bound_findings(group)
    cell.bump("pairs", checked)
    cell.extra["findings"] = [
        {
            "a": set_payload(a, group),
            "b": set_payload(b, group),
            "alpha_intersection": al_ab,
            "alpha_a": al_a,
            "alpha_b": al_b,
        }
        for a, b, al_ab, al_a, al_b in findings
    ]
    return cell.done(status="ok")


def _random_connection(group: GroupTable, rng: random.Random) -> SubsetMask:
    e = group.identity
    bits = 1 << e
    seen = 1 << e
    for x in range(group.order):
        if seen >> x & 1:
            continue
        ix = int(group.inv[x])
        seen |= (1 << x) | (1 << ix)
        if rng.getrandbits(1):
            bits |= (1 << x) | (1 << ix)
    return SubsetMask(group.universe, bits)


def _cell_agreement(group: GroupTable, options: SuiteOptions) -> dict:
    """Seeded random corpus comparing the solver against the oracle."""
    cell = _Cell("agreement")
    rng = _group_rng(options, group, "agreement")
    n = group.order
    for i in range(options.agreement_per_group):
        a = _random_connection(group, rng)
        gr = cayley_graph(group, a)
        label = f"random[{i}]"
        if n <= 16 and rng.getrandbits(1):
            cell.bump("full_graphs")
            _compare_alpha_routes(cell, group, gr, None, label)
        else:
            size = rng.randint(min(4, n), min(16, n))
            pts = rng.sample(range(n), size)
            induced = SubsetMask.from_elements(group.universe, pts)
            cell.bump("induced_graphs")
            _compare_alpha_routes(cell, group, gr, induced, label)
    if n >= 17:
        for size in range(17, min(20, n) + 1):
            a = _random_connection(group, rng)
            gr = cayley_graph(group, a)
            induced = SubsetMask.from_elements(
                group.universe, rng.sample(range(n), size))
            cell.bump("induced_graphs")
            _compare_alpha_routes(cell, group, gr, induced, f"wide[{size}]")
    return cell.done()


def _group_entry(group: GroupTable, options: SuiteOptions) -> dict:
    action = left_regular_action(group)
    families = standard_families(action)
    cells = [
        _cell_delta_identities(group, action, families),
        _cell_filter(group, action, families),
        _cell_prop2(group, action, families),
        _cell_covering(group, options),
        _cell_ramsey(group, options),
        _cell_product_bound(group, options),
        _cell_agreement(group, options),
    ]
    return {
        "group": group.name,
        "kind": group.kind,
        "order": group.order,
        "status": "ok" if all(c["status"] != "fail" for c in cells) else "fail",
        "cells": cells,
    }


def run_suite(groups: list[GroupTable], options: SuiteOptions) -> dict:
    """Run every cell on every group; entries stay in catalogue order.

    A group whose cells raise a tool error contributes an error entry and
    the remaining groups still run.
    """
    if options.max_order is not None:
        groups = [g for g in groups if g.order <= options.max_order]

    def one(group: GroupTable) -> dict:
        try:
            return _group_entry(group, options)
        except GsrecError as exc:
            return {"group": group.name, "kind": group.kind,
                    "order": group.order, "status": "error",
                    "error": str(exc), "error_exit_code": exc.exit_code}

    if options.jobs > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as pool:
            entries = list(pool.map(one, groups))
    else:
        entries = [one(g) for g in groups]

    counts: dict[str, int] = {}
    failed_cells = 0
    errors = 0
    for entry in entries:
        if entry["status"] == "error":
            errors += 1
            continue
        for cellrep in entry["cells"]:
            if cellrep["status"] == "fail":
                failed_cells += 1
            for key, val in cellrep["counts"].items():
                counts[key] = counts.get(key, 0) + val
    return {
        "entries": entries,
        "summary": {
            "groups": len(entries),
            "errors": errors,
            "failed_cells": failed_cells,
            "totals": counts,
        },
        "ok": failed_cells == 0 and errors == 0,
    }
