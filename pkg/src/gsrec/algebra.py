"""Finite groups, group actions, and universe-tagged subset masks.

Element ids are dense 0-based ints indexing rows of the multiplication
table.  Subsets are immutable bitmasks tagged with the universe they live
in, so a subset of a group and a subset of an acted-on point set cannot be
mixed by accident.
"""

from __future__ import annotations

import itertools
import random
import zlib
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import SizeLimitError, ValidationError

MAX_ORDER = 4096
SYMMETRIC_MAX_N = 7
ASSOC_EXHAUSTIVE_LIMIT = 512
COMPAT_EXHAUSTIVE_OPS = 1 << 24
RANDOM_TRIPLES_PER_ELEMENT = 10


@dataclass(frozen=True)
class Universe:
    """Identity tag for the ground set a mask lives in."""

    kind: str
    size: int
    name: str

    @property
    def full_bits(self) -> int:
        return (1 << self.size) - 1


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class SubsetMask:
    """Immutable subset of a tagged universe, stored as an int bitmask."""

    universe: Universe
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits > self.universe.full_bits:
            raise ValidationError(
                f"mask 0x{self.bits:x} out of range for universe "
                f"{self.universe.name!r} of size {self.universe.size}"
            )

    @classmethod
    def from_elements(cls, universe: Universe, elements: Iterable[int]) -> "SubsetMask":
        bits = 0
        for x in elements:
            if not 0 <= x < universe.size:
                raise ValidationError(
                    f"element {x} out of range for universe {universe.name!r} "
                    f"of size {universe.size}"
                )
            bits |= 1 << x
        return cls(universe, bits)

    @classmethod
    def empty(cls, universe: Universe) -> "SubsetMask":
        return cls(universe, 0)

    @classmethod
    def full(cls, universe: Universe) -> "SubsetMask":
        return cls(universe, universe.full_bits)

    def _check(self, other: "SubsetMask") -> None:
        if self.universe != other.universe:
            raise ValidationError(
                f"universe mismatch: {self.universe.name!r} vs {other.universe.name!r}"
            )

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.universe.size and (self.bits >> x) & 1 == 1

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.universe, self.bits | other.bits)

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.universe, self.bits & other.bits)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.universe, self.bits & ~other.bits)

    def complement(self) -> "SubsetMask":
        return SubsetMask(self.universe, self.universe.full_bits & ~self.bits)

    def issubset(self, other: "SubsetMask") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def elements(self) -> tuple[int, ...]:
        return tuple(_iter_bits(self.bits))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Order masks by (popcount, lexicographic on sorted elements)."""
        return (len(self), self.elements())

    def __repr__(self) -> str:
        return f"SubsetMask({self.universe.name!r}, {{{', '.join(map(str, self.elements()))}}})"


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by full multiplication and inverse tables."""

    name: str
    order: int
    kind: str
    mul: np.ndarray
    inv: np.ndarray
    identity: int
    element_names: tuple[str, ...]
    universe: Universe

    def subset(self, elements: Iterable[int]) -> SubsetMask:
        return SubsetMask.from_elements(self.universe, elements)

    def op(self, g: int, h: int) -> int:
        return int(self.mul[g, h])

    def inverse(self, g: int) -> int:
        return int(self.inv[g])


def _find_identity(mul: np.ndarray) -> int:
    n = mul.shape[0]
    idx = np.arange(n, dtype=mul.dtype)
    for e in range(n):
        if np.array_equal(mul[e], idx) and np.array_equal(mul[:, e], idx):
            return e
    raise ValidationError("no two-sided identity element in multiplication table")


def _find_inverses(mul: np.ndarray, identity: int) -> np.ndarray:
    n = mul.shape[0]
    inv = np.empty(n, dtype=np.int32)
    for x in range(n):
        hits = np.flatnonzero(mul[x] == identity)
        if hits.size == 0:
            raise ValidationError(f"no inverse for element {x}")
        y = int(hits[0])
        if mul[y, x] != identity:
            raise ValidationError(f"element {x} has no two-sided inverse")
        inv[x] = y
    return inv


def _check_associativity(mul: np.ndarray, rng_seed: int = 0) -> None:
    n = mul.shape[0]
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        for g in range(n):
            left = mul[mul[g], :]
            right = mul[g, mul]
            if not np.array_equal(left, right):
                h, k = np.argwhere(left != right)[0]
                raise ValidationError(
                    f"associativity fails at triple ({g}, {int(h)}, {int(k)})"
                )
        return
    rng = random.Random(rng_seed)
    for _ in range(RANDOM_TRIPLES_PER_ELEMENT * n):
        g, h, k = (rng.randrange(n) for _ in range(3))
        if mul[mul[g, h], k] != mul[g, mul[h, k]]:
            raise ValidationError(f"associativity fails at triple ({g}, {h}, {k})")


def _validate_table(mul: np.ndarray) -> tuple[int, np.ndarray]:
    n = mul.shape[0]
    if mul.shape != (n, n):
        raise ValidationError(f"multiplication table must be square, got {mul.shape}")
    if n == 0:
        raise ValidationError("group order must be at least 1")
    if n > MAX_ORDER:
        raise SizeLimitError(f"group order {n} exceeds limit {MAX_ORDER}")
    if mul.min() < 0 or mul.max() >= n:
        bad = np.argwhere((mul < 0) | (mul >= n))[0]
        raise ValidationError(
            f"table entry at ({int(bad[0])}, {int(bad[1])}) is not an element id"
        )
    identity = _find_identity(mul)
    inv = _find_inverses(mul, identity)
    _check_associativity(mul)
    return identity, inv


def _finish(name: str, kind: str, mul: np.ndarray, element_names: Sequence[str]) -> GroupTable:
    mul = np.ascontiguousarray(mul, dtype=np.int32)
    identity, inv = _validate_table(mul)
    n = mul.shape[0]
    universe = Universe("group", n, name)
    return GroupTable(
        name=name,
        order=n,
        kind=kind,
        mul=mul,
        inv=inv,
        identity=identity,
        element_names=tuple(element_names),
        universe=universe,
    )


def cyclic_group(n: int) -> GroupTable:
    """Integers mod n under addition; element id is the residue."""
    if n < 1:
        raise ValidationError(f"cyclic group order must be positive, got {n}")
    if n > MAX_ORDER:
        raise SizeLimitError(f"group order {n} exceeds limit {MAX_ORDER}")
    idx = np.arange(n, dtype=np.int32)
    mul = (idx[:, None] + idx[None, :]) % n
    return _finish(f"Z{n}", "cyclic", mul, [str(i) for i in range(n)])


def dihedral_group(n: int) -> GroupTable:
    """Symmetries of the regular n-gon, order 2n.

    Element (f, k) acts on residues as x -> (-1)^f x + k and gets id
    f*n + k, so ids 0..n-1 are the rotations and n..2n-1 the reflections.
    """
    if n < 1:
        raise ValidationError(f"dihedral parameter must be positive, got {n}")
    if 2 * n > MAX_ORDER:
        raise SizeLimitError(f"group order {2 * n} exceeds limit {MAX_ORDER}")
    mul = np.empty((2 * n, 2 * n), dtype=np.int32)
    for f1 in (0, 1):
        for k1 in range(n):
            for f2 in (0, 1):
                for k2 in range(n):
                    f = f1 ^ f2
                    k = (k1 - k2 if f1 else k1 + k2) % n
                    mul[f1 * n + k1, f2 * n + k2] = f * n + k
    names = [f"r{k}" for k in range(n)] + [f"s{k}" for k in range(n)]
    return _finish(f"D{n}", "dihedral", mul, names)


def symmetric_group(n: int) -> GroupTable:
    """All permutations of {0..n-1} in lexicographic one-line order.

    Composition is (p*q)(x) = p(q(x)), so p*q means "apply q, then p".
    """
    if n < 1:
        raise ValidationError(f"symmetric group degree must be positive, got {n}")
    if n > SYMMETRIC_MAX_N:
        raise SizeLimitError(f"symmetric group degree {n} exceeds limit {SYMMETRIC_MAX_N}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    order = len(perms)
    mul = np.empty((order, order), dtype=np.int32)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            mul[i, j] = index[tuple(p[q[x]] for x in range(n))]
    names = ["".join(map(str, p)) for p in perms]
    return _finish(f"S{n}", "symmetric", mul, names)


def product_group(a: GroupTable, b: GroupTable) -> GroupTable:
    """Direct product; id of (x, y) is x * b.order + y."""
    order = a.order * b.order
    if order > MAX_ORDER:
        raise SizeLimitError(f"group order {order} exceeds limit {MAX_ORDER}")
    nb = b.order
    ia, ib = np.divmod(np.arange(order, dtype=np.int32), nb)
    mul = a.mul[np.ix_(ia, ia)] * nb + b.mul[np.ix_(ib, ib)]
    names = [
        f"({a.element_names[x]},{b.element_names[y]})"
        for x in range(a.order)
        for y in range(b.order)
    ]
    return _finish(f"{a.name}x{b.name}", "product", mul.astype(np.int32), names)


def explicit_group(table: Sequence[Sequence[int]], name: Optional[str] = None) -> GroupTable:
    """Group from a raw multiplication table, fully validated."""
    mul = np.asarray(table, dtype=np.int32)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
        raise ValidationError(f"multiplication table must be square, got shape {mul.shape}")
    if name is None:
        digest = zlib.crc32(mul.tobytes()) & 0xFFFFFFFF
        name = f"G{mul.shape[0]}#{digest:08x}"
    return _finish(name, "explicit", mul, [str(i) for i in range(mul.shape[0])])


def make_group(kind: str, *, n: Optional[int] = None,
               factors: Optional[Sequence[GroupTable]] = None,
               table: Optional[Sequence[Sequence[int]]] = None,
               name: Optional[str] = None) -> GroupTable:
    """Build a group by kind: cyclic, dihedral, symmetric, product, explicit."""
    if kind == "cyclic":
        if n is None:
            raise ValidationError("cyclic group needs n")
        return cyclic_group(n)
    if kind == "dihedral":
        if n is None:
            raise ValidationError("dihedral group needs n")
        return dihedral_group(n)
    if kind == "symmetric":
        if n is None:
            raise ValidationError("symmetric group needs n")
        return symmetric_group(n)
    if kind == "product":
        if not factors or len(factors) < 2:
            raise ValidationError("product group needs at least two factors")
        g = factors[0]
        for h in factors[1:]:
            g = product_group(g, h)
        return g
    if kind == "explicit":
        if table is None:
            raise ValidationError("explicit group needs a multiplication table")
        return explicit_group(table, name=name)
    raise ValidationError(f"unknown group kind {kind!r}")


@dataclass(frozen=True, eq=False)
class ActionTable:
    """A left action of a group on a finite point set, given by a full table."""

    group: GroupTable
    size: int
    act: np.ndarray
    points: Universe

    def apply(self, g: int, x: int) -> int:
        return int(self.act[g, x])

    def subset(self, elements: Iterable[int]) -> SubsetMask:
        return SubsetMask.from_elements(self.points, elements)


def left_regular_action(group: GroupTable) -> ActionTable:
    """The group acting on itself by left multiplication."""
    return ActionTable(
        group=group,
        size=group.order,
        act=group.mul,
        points=group.universe,
    )


def make_action(group: GroupTable, table: Sequence[Sequence[int]],
                name: Optional[str] = None) -> ActionTable:
    """Action from a raw n-by-m table act[g][x]; validates the action axioms."""
    act = np.asarray(table, dtype=np.int32)
    if act.ndim != 2 or act.shape[0] != group.order:
        raise ValidationError(
            f"action table must have one row per group element, got shape {act.shape}"
        )
    m = act.shape[1]
    if m < 1:
        raise ValidationError("action needs a nonempty point set")
    if m > MAX_ORDER:
        raise SizeLimitError(f"point set size {m} exceeds limit {MAX_ORDER}")
    if act.min() < 0 or act.max() >= m:
        bad = np.argwhere((act < 0) | (act >= m))[0]
        raise ValidationError(
            f"action entry at ({int(bad[0])}, {int(bad[1])}) is not a point id"
        )
    e = group.identity
    if not np.array_equal(act[e], np.arange(m, dtype=act.dtype)):
        x = int(np.flatnonzero(act[e] != np.arange(m, dtype=act.dtype))[0])
        raise ValidationError(f"identity does not fix point {x}")
    n = group.order
    if n * n * m <= COMPAT_EXHAUSTIVE_OPS:
        for g in range(n):
            left = act[group.mul[g], :]
            right = act[g][act]
            if not np.array_equal(left, right):
                h, x = np.argwhere(left != right)[0]
                raise ValidationError(
                    f"action is not compatible at (g, h, x) = ({g}, {int(h)}, {int(x)})"
                )
    else:
        rng = random.Random(0)
        for _ in range(RANDOM_TRIPLES_PER_ELEMENT * max(n, m)):
            g, h, x = rng.randrange(n), rng.randrange(n), rng.randrange(m)
            if act[group.mul[g, h], x] != act[g, act[h, x]]:
                raise ValidationError(
                    f"action is not compatible at (g, h, x) = ({g}, {h}, {x})"
                )
    uname = name if name is not None else f"{group.name}-space{m}"
    return ActionTable(group=group, size=m, act=act, points=Universe("space", m, uname))


def translate(g: int, a: SubsetMask, action: ActionTable) -> SubsetMask:
    """The set g*A = {g.x : x in A} under the given action."""
    if a.universe != action.points:
        raise ValidationError(
            f"mask universe {a.universe.name!r} does not match action points "
            f"{action.points.name!r}"
        )
    if not 0 <= g < action.group.order:
        raise ValidationError(f"element {g} out of range for group {action.group.name!r}")
    row = action.act[g]
    bits = 0
    for x in _iter_bits(a.bits):
        bits |= 1 << int(row[x])
    return SubsetMask(a.universe, bits)


def inverse_set(a: SubsetMask, group: GroupTable) -> SubsetMask:
    """The set A^-1 of inverses; only meaningful for subsets of the group."""
    if a.universe != group.universe:
        raise ValidationError(
            f"mask universe {a.universe.name!r} is not the group {group.name!r}"
        )
    bits = 0
    for x in _iter_bits(a.bits):
        bits |= 1 << int(group.inv[x])
    return SubsetMask(a.universe, bits)


def product_set(a: SubsetMask, b: SubsetMask, group: GroupTable) -> SubsetMask:
    """The set A*B = {x*y : x in A, y in B} inside the group."""
    if a.universe != group.universe or b.universe != group.universe:
        raise ValidationError("product_set needs both masks over the group universe")
    bits = 0
    mul = group.mul
    b_elems = b.elements()
    for x in _iter_bits(a.bits):
        row = mul[x]
        for y in b_elems:
            bits |= 1 << int(row[y])
    return SubsetMask(a.universe, bits)


def symmetrize(a: SubsetMask, group: GroupTable) -> SubsetMask:
    """A union A^-1, the symmetric closure used for graph connection sets."""
    return a | inverse_set(a, group)


def permutation_of_index(group: GroupTable, index: int) -> tuple[int, ...]:
    """One-line form of the index-th permutation, for symmetric-kind groups.

    Elements of a symmetric group are numbered by lexicographic rank of
    their one-line form; this unranks via the factorial number system.
    """
    if group.kind != "symmetric":
        raise ValidationError(
            f"permutation unranking needs a symmetric group, got kind {group.kind!r}"
        )
    if not 0 <= index < group.order:
        raise ValidationError(f"element {index} out of range for group {group.name!r}")
    degree, fact = 1, 1
    while fact < group.order:
        degree += 1
        fact *= degree
    pool = list(range(degree))
    out = []
    rem = index
    for slots in range(degree - 1, -1, -1):
        fact //= slots + 1
        q, rem = divmod(rem, fact)
        out.append(pool.pop(q))
    return tuple(out)


def cycle_notation(perm: Sequence[int]) -> str:
    """Cycle form of a one-line permutation; fixed points omitted, identity ()."""
    n = len(perm)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "()"
