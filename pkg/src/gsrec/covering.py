"""Syndetic covers G = FA, greedy point covers, packing by disjoint
translates, and the packing-versus-difference-graph comparison."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .algebra import ActionTable, GroupTable, SubsetMask, translate
from .deltagraph import cayley_graph, independence_number
from .errors import SizeLimitError, ValidationError
from .families import SetFamily
from .recurrence import _flags_verified, delta

COVER_CERTIFY_MAX_N = 64
COVER_DEFAULT_BUDGET = 1 << 20
BRUTE_COVER_MAX_N = 16


@dataclass(frozen=True)
class CoverResult:
    cover: SubsetMask
    size: int
    method: str
    optimal: bool
    node_count: int


@dataclass(frozen=True)
class PackingResult:
    family_size: int
    representatives: tuple[int, ...]
    conflict_graph_alpha: int
    node_count: int


@dataclass(frozen=True)
class Prop2Report:
    equal: bool
    packing: int
    alpha_of_delta_graph: int


def _translate_masks(group: GroupTable, a: SubsetMask) -> list[int]:
    """bits of t*a for every t, via the left-regular action."""
    out = []
    elems = a.elements()
    for t in range(group.order):
        row = group.mul[t]
        bits = 0
        for s in elems:
            bits |= 1 << int(row[s])
        out.append(bits)
    return out


def _check_group_subset(a: SubsetMask, group: GroupTable) -> None:
    if a.universe != group.universe:
        raise ValidationError("set must be a subset of the group")


class _CoverSearch:
    """Exact set-cover branch and bound over translate masks."""

    def __init__(self, masks: list[int], trans_ids: list[int], full: int,
                 budget: Optional[int]):
        self.masks = masks
        self.trans_ids = trans_ids
        self.full = full
        self.budget = budget
        self.nodes = 0
        self.exhausted = True
        self.max_cover = max((m.bit_count() for m in masks), default=1)
        self.coverers: dict[int, list[int]] = {}
        for i, m in enumerate(masks):
            rem = m
            while rem:
                low = rem & -rem
                self.coverers.setdefault(low.bit_length() - 1, []).append(i)
                rem ^= low
        self.best_size = 0
        self.best_pick: list[int] = []

    def _spend(self) -> bool:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            self.exhausted = False
            return False
        return True

    def greedy(self) -> list[int]:
        uncovered = self.full
        pick = []
        while uncovered:
            best_i = -1
            best_gain = 0
            for i, m in enumerate(self.masks):
                gain = (m & uncovered).bit_count()
                if gain > best_gain:
                    best_gain = gain
                    best_i = i
            pick.append(best_i)
            uncovered &= ~self.masks[best_i]
        return pick

    def solve(self) -> tuple[int, list[int]]:
        pick = self.greedy()
        self.best_size = len(pick)
        self.best_pick = pick
        self._descend(self.full, [])
        return self.best_size, self.best_pick

    def _descend(self, uncovered: int, chosen: list[int]) -> None:
        if uncovered == 0:
            if len(chosen) < self.best_size:
                self.best_size = len(chosen)
                self.best_pick = list(chosen)
            return
        lb = len(chosen) + -(-uncovered.bit_count() // self.max_cover)
        if lb >= self.best_size:
            return
        x = (uncovered & -uncovered).bit_length() - 1
        for i in self.coverers[x]:
            if not self._spend():
                return
            chosen.append(i)
            self._descend(uncovered & ~self.masks[i], chosen)
            chosen.pop()

    def feasible(self, uncovered: int, remaining: int, min_index: int) -> bool:
        """Can `remaining` sets, all with index >= min_index, cover?

        Branching picks coverers of the lowest uncovered point, which
        visits members in no particular index order, so the floor stays
        fixed down the recursion rather than ratcheting upward.
        """
        if uncovered == 0:
            return True
        if remaining <= 0:
            return False
        if -(-uncovered.bit_count() // self.max_cover) > remaining:
            return False
        x = (uncovered & -uncovered).bit_length() - 1
        for i in self.coverers[x]:
            if i < min_index:
                continue
            if not self._spend():
                return False
            if self.feasible(uncovered & ~self.masks[i], remaining - 1, min_index):
                return True
        return False


def min_cover(group: GroupTable, a: SubsetMask, *,
              budget: Optional[int] = None) -> CoverResult:
    """Minimum-size F with F*a = G, lexicographically least among minimum
    covers when certified.

    Certified exact up to 64 elements (full tree); beyond that a node
    budget applies and the result carries optimal=False when it runs out.
    """
    _check_group_subset(a, group)
    if a.bits == 0:
        raise ValidationError("cannot cover the group with translates of the empty set")
    n = group.order
    if budget is None and n > COVER_CERTIFY_MAX_N:
        budget = COVER_DEFAULT_BUDGET
    all_masks = _translate_masks(group, a)
    masks = []
    trans_ids = []
    seen = set()
    for t, m in enumerate(all_masks):
        if m not in seen:
            seen.add(m)
            masks.append(m)
            trans_ids.append(t)
    full = group.universe.full_bits
    search = _CoverSearch(masks, trans_ids, full, budget)
    size, pick = search.solve()
    if search.exhausted:
        chosen: list[int] = []
        covered = 0
        min_index = 0
        for _ in range(size):
            placed = False
            for i in range(min_index, len(masks)):
                if not search.feasible(full & ~(covered | masks[i]), size - len(chosen) - 1, i + 1):
                    continue
                chosen.append(i)
                covered |= masks[i]
                min_index = i + 1
                placed = True
                break
            if not placed or not search.exhausted:
                break
        if search.exhausted and len(chosen) == size:
            pick = chosen
    bits = 0
    for i in pick:
        bits |= 1 << trans_ids[i]
    return CoverResult(
        cover=SubsetMask(group.universe, bits),
        size=size,
        method="exact",
        optimal=search.exhausted,
        node_count=search.nodes,
    )


def min_cover_brute(group: GroupTable, a: SubsetMask) -> CoverResult:
    """Minimum cover by plain enumeration of translator combinations in
    increasing size, lexicographic within each size.

    Independent of the branch-and-bound route; intended as an oracle for
    cross-checking on small groups.
    """
    from itertools import combinations

    _check_group_subset(a, group)
    if a.bits == 0:
        raise ValidationError("cannot cover the group with translates of the empty set")
    if group.order > BRUTE_COVER_MAX_N:
        raise SizeLimitError(
            f"brute cover enumeration is limited to groups of order "
            f"{BRUTE_COVER_MAX_N}, got {group.order}"
        )
    all_masks = _translate_masks(group, a)
    masks = []
    trans_ids = []
    seen = set()
    for t, m in enumerate(all_masks):
        if m not in seen:
            seen.add(m)
            masks.append(m)
            trans_ids.append(t)
    full = group.universe.full_bits
    checked = 0
    for size in range(1, len(masks) + 1):
        for combo in combinations(range(len(masks)), size):
            checked += 1
            covered = 0
            for i in combo:
                covered |= masks[i]
            if covered == full:
                bits = 0
                for i in combo:
                    bits |= 1 << trans_ids[i]
                return CoverResult(
                    cover=SubsetMask(group.universe, bits),
                    size=size,
                    method="brute",
                    optimal=True,
                    node_count=checked,
                )
    raise ValidationError("translates of the set never cover the group")


def point_greedy_cover(group: GroupTable, a: SubsetMask) -> CoverResult:
    """Cover built by repeatedly adding the least uncovered element.

    When the chosen element's translate adds no new coverage (possible
    only without the identity in a), the least translator covering that
    element is taken instead, so the loop always terminates. For
    symmetric a containing the identity, the chosen points are pairwise
    non-adjacent in the Cayley graph of a, which bounds the cover size
    by its independence number.
    """
    _check_group_subset(a, group)
    if a.bits == 0:
        raise ValidationError("cannot cover the group with translates of the empty set")
    masks = _translate_masks(group, a)
    full = group.universe.full_bits
    uncovered = full
    bits = 0
    steps = 0
    while uncovered:
        x = (uncovered & -uncovered).bit_length() - 1
        t = x
        if masks[x] & uncovered == 0:
            for cand in range(group.order):
                if masks[cand] >> x & 1 and not bits >> cand & 1:
                    t = cand
                    break
        bits |= 1 << t
        uncovered &= ~masks[t]
        steps += 1
    return CoverResult(
        cover=SubsetMask(group.universe, bits),
        size=bits.bit_count(),
        method="point-greedy",
        optimal=False,
        node_count=steps,
    )


def max_disjoint_translates(action: ActionTable, f: SetFamily,
                            a: SubsetMask) -> PackingResult:
    """Largest family of pairwise distinct translates of a whose pairwise
    intersections avoid the family.

    Distinct translate sets are the vertices (the stabilizer is
    quotiented out); edges join pairs whose intersection is a member;
    the answer is a maximum independent set of that conflict graph.
    """
    if a.universe != action.points:
        raise ValidationError("set must live on the action's points")
    if not f.contains(a):
        raise ValidationError("packing base set must be a family member")
    n = action.group.order
    class_rep: dict[int, int] = {}
    for g in range(n):
        m = translate(g, a, action).bits
        if m not in class_rep:
            class_rep[m] = g
    reps = sorted(class_rep.items(), key=lambda kv: kv[1])
    t = len(reps)
    rows = [0] * t
    for i in range(t):
        for j in range(i + 1, t):
            inter = SubsetMask(f.universe, reps[i][0] & reps[j][0])
            if f.contains(inter):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    size, wit, nodes = kernels.max_independent_set(rows, t)
    chosen = []
    rem = wit
    while rem:
        low = rem & -rem
        chosen.append(reps[low.bit_length() - 1][1])
        rem ^= low
    return PackingResult(
        family_size=size,
        representatives=tuple(sorted(chosen)),
        conflict_graph_alpha=size,
        node_count=nodes,
    )


def prop2_check(action: ActionTable, f: SetFamily, a: SubsetMask) -> Prop2Report:
    """Compare the packing number of a with the independence number of the
    Cayley graph of Delta_F(a); they must be equal.

    The two sides are computed by independent constructions: direct
    pairwise-intersection tests on translates versus the difference-set
    graph. Requires the left-regular action and an invariant
    upward-closed family.
    """
    group = action.group
    if action.points != group.universe or not np.array_equal(action.act, group.mul):
        raise ValidationError("the packing comparison needs the left-regular action")
    if not _flags_verified(f):
        raise ValidationError("the packing comparison needs an invariant upward-closed family")
    packing = max_disjoint_translates(action, f, a)
    d = delta(action, f, a).set
    gr = cayley_graph(group, d)
    alpha = independence_number(gr).alpha
    return Prop2Report(
        equal=packing.family_size == alpha,
        packing=packing.family_size,
        alpha_of_delta_graph=alpha,
    )
