"""Group tables, actions, and subset masks."""

import itertools

import pytest

from gsrec.algebra import (
    SubsetMask,
    cycle_notation,
    cyclic_group,
    dihedral_group,
    explicit_group,
    inverse_set,
    left_regular_action,
    make_action,
    permutation_of_index,
    product_group,
    product_set,
    symmetric_group,
    symmetrize,
    translate,
)
from gsrec.errors import SizeLimitError, ValidationError


def _check_axioms(group):
    n = group.order
    e = group.identity
    for g in range(n):
        assert int(group.mul[e, g]) == g
        assert int(group.mul[g, e]) == g
        assert int(group.mul[g, group.inverse(g)]) == e
    for g, h, k in itertools.product(range(n), repeat=3):
        assert int(group.mul[group.mul[g, h], k]) == int(group.mul[g, group.mul[h, k]])


def test_cyclic_group_tables():
    g = cyclic_group(6)
    assert g.order == 6
    assert g.identity == 0
    assert int(g.mul[2, 5]) == 1
    assert g.inverse(2) == 4
    _check_axioms(g)


def test_dihedral_group_tables():
    g = dihedral_group(4)
    assert g.order == 8
    _check_axioms(g)
    # some reflection must be its own inverse and not commute with a rotation
    refl = [x for x in range(8) if x != g.identity and g.inverse(x) == x]
    assert refl
    noncomm = [
        (a, b)
        for a in range(8)
        for b in range(8)
        if int(g.mul[a, b]) != int(g.mul[b, a])
    ]
    assert noncomm


def test_symmetric_group_tables():
    g = symmetric_group(3)
    assert g.order == 6
    _check_axioms(g)
    # composition of tables matches composition of the unranked permutations
    for i in range(6):
        for j in range(6):
            pi = permutation_of_index(g, i)
            pj = permutation_of_index(g, j)
            composed = tuple(pi[pj[x]] for x in range(3))
            assert permutation_of_index(g, int(g.mul[i, j])) == composed


def test_symmetric_group_size_limit():
    with pytest.raises(SizeLimitError):
        symmetric_group(8)


def test_product_group():
    g = product_group(cyclic_group(2), cyclic_group(4))
    assert g.order == 8
    _check_axioms(g)
    # exponent 4: every element to the 4th power is the identity
    for x in range(8):
        acc = g.identity
        for _ in range(4):
            acc = int(g.mul[acc, x])
        assert acc == g.identity


def test_explicit_group_accepts_klein_four():
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    g = explicit_group(table, name="V4")
    assert g.name == "V4"
    _check_axioms(g)


def test_explicit_group_rejects_broken_tables():
    with pytest.raises(ValidationError):
        explicit_group([[0, 1], [1, 1]])  # 1 has no inverse
    with pytest.raises(ValidationError):
        explicit_group([[0, 1], [0, 1]])  # no identity row/column pair
    with pytest.raises(ValidationError):
        explicit_group([[0, 1, 2], [1, 2, 0]])  # not square
    # associativity violation on a magma with identity and "inverses"
    with pytest.raises(ValidationError):
        explicit_group([
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ])


def test_mask_universe_tagging():
    g = cyclic_group(5)
    h = cyclic_group(6)
    a = SubsetMask.from_elements(g.universe, [0, 2])
    b = SubsetMask.from_elements(h.universe, [0, 2])
    with pytest.raises(ValidationError):
        _ = a | b
    with pytest.raises(ValidationError):
        SubsetMask.from_elements(g.universe, [5])
    assert (a | SubsetMask.from_elements(g.universe, [1])).elements() == (0, 1, 2)
    assert len(a) == 2
    assert 2 in a and 3 not in a


def test_translate_and_compatibility():
    g = cyclic_group(7)
    act = left_regular_action(g)
    a = SubsetMask.from_elements(g.universe, [0, 1, 3])
    assert translate(2, a, act).elements() == (2, 3, 5)
    for x in range(7):
        for y in range(7):
            lhs = translate(x, translate(y, a, act), act)
            rhs = translate(int(g.mul[x, y]), a, act)
            assert lhs.bits == rhs.bits


def test_product_and_inverse_sets():
    g = dihedral_group(3)
    a = SubsetMask.from_elements(g.universe, [1, 3])
    b = SubsetMask.from_elements(g.universe, [2, 4])
    prod = {int(g.mul[x, y]) for x in a.elements() for y in b.elements()}
    assert set(product_set(a, b, g).elements()) == prod
    inv = {g.inverse(x) for x in a.elements()}
    assert set(inverse_set(a, g).elements()) == inv
    sym = symmetrize(a, g)
    assert inverse_set(sym, g).bits == sym.bits
    assert a.issubset(sym)


def test_make_action_rejects_non_actions():
    g = cyclic_group(3)
    with pytest.raises(ValidationError):
        make_action(g, [[1, 2, 0], [2, 0, 1], [0, 1, 2]])  # identity acts nontrivially
    with pytest.raises(ValidationError):
        make_action(g, [[0, 1, 2], [1, 2, 0], [1, 2, 0]])  # incompatible with mul
    act = make_action(g, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert act.size == 3


def test_permutation_unranking_matches_itertools():
    g = symmetric_group(4)
    for idx, perm in enumerate(itertools.permutations(range(4))):
        assert permutation_of_index(g, idx) == perm
    with pytest.raises(ValidationError):
        permutation_of_index(g, 24)
    with pytest.raises(ValidationError):
        permutation_of_index(cyclic_group(4), 0)


def test_cycle_notation():
    assert cycle_notation((0, 1, 2)) == "()"
    assert cycle_notation((1, 0, 2)) == "(0 1)"
    assert cycle_notation((1, 2, 0, 4, 3)) == "(0 1 2)(3 4)"
