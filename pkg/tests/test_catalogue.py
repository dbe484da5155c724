"""Default catalogue and the per-group standard family list."""

from gsrec.algebra import cyclic_group, left_regular_action, translate
from gsrec.catalogue import (
    default_catalogue,
    filter_by_order,
    standard_families,
    transversal_subsets,
)


def test_default_catalogue_contents():
    groups = default_catalogue()
    names = [g.name for g in groups]
    assert names == (
        [f"Z{n}" for n in range(2, 13)]
        + [f"D{n}" for n in range(3, 7)]
        + ["S3", "S4", "Z2xZ4"]
    )
    assert len(groups) == 18
    assert max(g.order for g in groups) == 24
    # distinct names; orders within the documented window
    assert len(set(names)) == len(names)


def test_filter_by_order():
    groups = default_catalogue()
    small = filter_by_order(groups, 6)
    assert all(g.order <= 6 for g in small)
    assert {g.name for g in small} == {"Z2", "Z3", "Z4", "Z5", "Z6", "D3", "S3"}


def test_transversal_subsets_are_translate_class_representatives():
    group = cyclic_group(6)
    reps = transversal_subsets(group)
    act = left_regular_action(group)
    seen_classes = set()
    for rep in reps:
        assert 1 <= len(rep) <= 3
        cls = frozenset(translate(g, rep, act).bits for g in range(group.order))
        # the representative is the lex-least translate of its class
        least = min(cls, key=lambda b: tuple(
            i for i in range(6) if b >> i & 1))
        assert rep.bits == least
        assert cls not in seen_classes
        seen_classes.add(cls)
    # class counts: sizes 1,2,3 -> C(6,1)+C(6,2)+C(6,3) subsets in classes of
    # size 6 except the coset class {0,3} (class size 3) and {0,2,4} (size 2)
    sizes = {}
    for rep in reps:
        sizes[len(rep)] = sizes.get(len(rep), 0) + 1
    assert sizes == {1: 1, 2: 3, 3: 4}


def test_standard_families_layout():
    group = cyclic_group(5)
    act = left_regular_action(group)
    fams = standard_families(act)
    names = [f.name for f in fams]
    assert names[0] == "all_nonempty"
    assert names[1] == "min_size_2"
    assert names[2] == "min_size_3"
    assert all(n.startswith("closure[") for n in names[3:])
    # one closure family per transversal representative
    assert len(names) == 3 + len(transversal_subsets(group))
    for fam in fams[3:]:
        assert fam.invariant and fam.upward_behavior and fam.invariant_behavior
    # family list is usable across groups of every catalogued kind
    for g in filter_by_order(default_catalogue(), 8):
        fams = standard_families(left_regular_action(g))
        assert len(fams) >= 4
