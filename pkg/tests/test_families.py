"""Set families: membership, minimal antichains, flags, measures."""

import itertools
from fractions import Fraction

import pytest

from gsrec.algebra import SubsetMask, cyclic_group, dihedral_group, left_regular_action
from gsrec.errors import SizeLimitError, ValidationError
from gsrec.families import (
    all_nonempty_family,
    check_flags,
    explicit_family,
    family_contains,
    family_members,
    make_measure,
    min_size_family,
    minimal_members,
    orbits,
    positive_family,
    uniform_measure,
)


def _mask(action, elems):
    return SubsetMask.from_elements(action.points, elems)


def test_min_size_membership_and_minimals():
    act = left_regular_action(cyclic_group(5))
    fam = min_size_family(act, 2)
    assert not family_contains(fam, _mask(act, []))
    assert not family_contains(fam, _mask(act, [3]))
    assert family_contains(fam, _mask(act, [1, 4]))
    mins = minimal_members(fam)
    assert len(mins) == 10
    assert all(len(m) == 2 for m in mins)
    assert mins[0].elements() == (0, 1)

    fam1 = all_nonempty_family(act)
    assert fam1.k == 1
    assert len(minimal_members(fam1)) == 5


def test_min_size_rejects_bad_threshold():
    act = left_regular_action(cyclic_group(4))
    with pytest.raises(ValidationError):
        min_size_family(act, 0)
    assert minimal_members(min_size_family(act, 5)) == ()


def test_explicit_plain_family_is_exactly_the_generators():
    act = left_regular_action(cyclic_group(6))
    gens = [_mask(act, [0, 2]), _mask(act, [1, 3, 5])]
    fam = explicit_family(act, gens)
    assert family_contains(fam, gens[0])
    assert family_contains(fam, gens[1])
    assert not family_contains(fam, _mask(act, [0, 2, 4]))  # superset, not a member
    assert list(family_members(fam)) == [gens[0], gens[1]]


def test_explicit_upward_family_is_supersets_of_generators():
    act = left_regular_action(cyclic_group(5))
    fam = explicit_family(act, [_mask(act, [0, 2])], upward=True)
    assert family_contains(fam, _mask(act, [0, 2]))
    assert family_contains(fam, _mask(act, [0, 2, 3]))
    assert not family_contains(fam, _mask(act, [1, 3]))  # translate, not invariant
    assert minimal_members(fam) == (_mask(act, [0, 2]),)


def test_explicit_invariant_family_contains_all_translates():
    group = cyclic_group(6)
    act = left_regular_action(group)
    fam = explicit_family(act, [_mask(act, [0, 3])], invariant=True)
    # members = supersets of some translate of {0,3}
    for g in range(6):
        t = {int(group.mul[g, x]) for x in (0, 3)}
        assert family_contains(fam, _mask(act, t))
    assert family_contains(fam, _mask(act, [1, 2, 4]))  # contains {1,4}
    assert not family_contains(fam, _mask(act, [0, 1, 2]))  # no translate inside
    mins = minimal_members(fam)
    assert {m.elements() for m in mins} == {(0, 3), (1, 4), (2, 5)}


def test_explicit_minimal_antichain_prunes_dominated_generators():
    act = left_regular_action(cyclic_group(5))
    fam = explicit_family(
        act, [_mask(act, [0, 1, 2]), _mask(act, [0, 1])], upward=True
    )
    assert minimal_members(fam) == (_mask(act, [0, 1]),)


def test_explicit_rejects_empty_generator():
    act = left_regular_action(cyclic_group(4))
    with pytest.raises(ValidationError):
        explicit_family(act, [_mask(act, [])])
    fam = explicit_family(act, [_mask(act, [])], excludes_empty=False)
    assert family_contains(fam, _mask(act, []))


def test_family_members_enumeration_order():
    act = left_regular_action(cyclic_group(4))
    fam = min_size_family(act, 3)
    members = list(family_members(fam))
    assert [m.elements() for m in members] == [
        (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 1, 2, 3),
    ]
    assert list(family_members(fam, minimal_only=True)) == members[:4]


def test_check_flags_reports_all_four_combinations():
    group = cyclic_group(6)
    act = left_regular_action(group)
    base = _mask(act, [0, 2])

    rep = check_flags(explicit_family(act, [base], invariant=True))
    assert rep.mode == "exhaustive"
    assert rep.upward_closed and rep.invariant

    rep = check_flags(explicit_family(act, [base], upward=True))
    assert rep.upward_closed and not rep.invariant
    member, g, moved = rep.invariant_witness
    assert family_contains(explicit_family(act, [base], upward=True), member)
    assert not family_contains(explicit_family(act, [base], upward=True), moved)

    rep = check_flags(explicit_family(act, [base]))
    assert not rep.upward_closed and not rep.invariant
    small, big = rep.upward_witness
    assert small.issubset(big)

    rep = check_flags(min_size_family(act, 2))
    assert rep.upward_closed and rep.invariant


def test_check_flags_sampled_mode():
    group = dihedral_group(6)
    act = left_regular_action(group)
    fam = min_size_family(act, 2)
    rep = check_flags(fam, exhaustive_ops=16)
    assert rep.mode == "sampled"
    assert rep.upward_closed and rep.invariant


def test_orbits_left_regular_is_transitive():
    act = left_regular_action(dihedral_group(4))
    assert orbits(act) == [tuple(range(8))]


def test_measures():
    act = left_regular_action(cyclic_group(4))
    mu = uniform_measure(act)
    assert sum(mu.weights) == 1
    assert mu.mass(_mask(act, [0, 2])) == Fraction(1, 2)
    with pytest.raises(ValidationError):
        make_measure(act, [Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0)])
    # wrong count, negative weight, bad total
    with pytest.raises(ValidationError):
        make_measure(act, [Fraction(1)])
    with pytest.raises(ValidationError):
        make_measure(act, [Fraction(-1, 4), Fraction(1, 2), Fraction(1, 4), Fraction(1, 2)])
    with pytest.raises(ValidationError):
        make_measure(act, [Fraction(1, 4)] * 3 + [Fraction(1, 2)])


def test_positive_family():
    act = left_regular_action(cyclic_group(4))
    fam = positive_family(uniform_measure(act))
    assert fam.upward_behavior and fam.invariant_behavior
    assert family_contains(fam, _mask(act, [3]))
    assert not family_contains(fam, _mask(act, []))
    assert len(minimal_members(fam)) == 4


def test_member_within_picks_least_member():
    act = left_regular_action(cyclic_group(6))
    fam2 = min_size_family(act, 2)
    d = _mask(act, [1, 3, 4])
    assert fam2.member_within(d).elements() == (1, 3)
    assert fam2.member_within(_mask(act, [5])) is None

    inv = explicit_family(act, [_mask(act, [0, 3])], invariant=True)
    assert inv.member_within(_mask(act, [1, 2, 4])).elements() == (1, 4)
    assert inv.member_within(_mask(act, [0, 1, 2])) is None


def test_full_enumeration_size_limit():
    from gsrec.algebra import symmetric_group

    act = left_regular_action(symmetric_group(4))  # 24 points
    fam = min_size_family(act, 2)
    with pytest.raises(SizeLimitError):
        list(family_members(fam))
    # minimal_only sidesteps the full 2^24 enumeration
    assert sum(1 for _ in family_members(fam, minimal_only=True)) == 276
