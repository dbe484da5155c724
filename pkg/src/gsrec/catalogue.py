"""The default group catalogue and the standard family suite."""

from __future__ import annotations

from typing import Optional

from .algebra import (
    ActionTable,
    GroupTable,
    SubsetMask,
    cyclic_group,
    dihedral_group,
    product_group,
    symmetric_group,
)
from .families import SetFamily, all_nonempty_family, explicit_family, min_size_family

TRANSVERSAL_MAX_SIZE = 3


def default_catalogue() -> list[GroupTable]:
    """Z2..Z12, D3..D6, S3, S4, and Z2 x Z4."""
    groups: list[GroupTable] = [cyclic_group(n) for n in range(2, 13)]
    groups.extend(dihedral_group(n) for n in range(3, 7))
    groups.append(symmetric_group(3))
    groups.append(symmetric_group(4))
    groups.append(product_group(cyclic_group(2), cyclic_group(4)))
    return groups


def filter_by_order(groups: list[GroupTable], max_order: Optional[int]) -> list[GroupTable]:
    if max_order is None:
        return groups
    return [g for g in groups if g.order <= max_order]


def transversal_subsets(group: GroupTable,
                        max_size: int = TRANSVERSAL_MAX_SIZE) -> list[SubsetMask]:
    """One representative per left-translation class of nonempty subsets
    of size up to max_size; the representative is the least translate."""
    from itertools import combinations

    action_row = group.mul
    n = group.order
    reps: list[SubsetMask] = []
    for size in range(1, min(max_size, n) + 1):
        for combo in combinations(range(n), size):
            bits = 0
            for x in combo:
                bits |= 1 << x
            least = bits
            for g in range(n):
                row = action_row[g]
                tb = 0
                for x in combo:
                    tb |= 1 << int(row[x])
                if _lex_less_bits(tb, least):
                    least = tb
            if least == bits:
                reps.append(SubsetMask(group.universe, bits))
    return reps


def _lex_less_bits(a: int, b: int) -> bool:
    if a == b:
        return False
    diff = a ^ b
    low = diff & -diff
    return a & low != 0


def standard_families(action: ActionTable) -> list[SetFamily]:
    """all-nonempty, min_size 2, min_size 3, and the invariant upward
    closure of each transversal subset of size up to 3."""
    families = [
        all_nonempty_family(action),
        min_size_family(action, 2),
        min_size_family(action, 3),
    ]
    group = action.group
    for rep in transversal_subsets(group):
        pts = SubsetMask(action.points, rep.bits)
        label = "closure[" + ",".join(map(str, pts.elements())) + "]"
        families.append(
            explicit_family(action, [pts], upward=True, invariant=True, name=label)
        )
    return families
