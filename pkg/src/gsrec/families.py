"""Set families over an acted-on point set, with decidable membership.

Three kinds: explicit generator lists with closure flags, minimum-size
thresholds, and positive-measure families over an invariant probability
measure. An explicit family with the invariant flag contains every set
that includes some translate of some generator, so it is upward closed
by construction; with only the upward flag, every superset of a
generator; with no flags, exactly the generators.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .algebra import ActionTable, SubsetMask, Universe, translate
from .errors import SizeLimitError, ValidationError

ENUM_MAX_POINTS = 22
MINIMAL_MATERIALIZE_LIMIT = 1 << 22
FLAG_EXHAUSTIVE_OPS = 1 << 18
FLAG_SAMPLES = 512


@dataclass(frozen=True, eq=False)
class MeasureTable:
    """Probability weights on the point set, constant on each orbit."""

    action: ActionTable
    weights: tuple[Fraction, ...]

    @property
    def support_bits(self) -> int:
        bits = 0
        for x, w in enumerate(self.weights):
            if w > 0:
                bits |= 1 << x
        return bits

    def mass(self, a: SubsetMask) -> Fraction:
        if a.universe != self.action.points:
            raise ValidationError("mask universe does not match the measure's point set")
        total = Fraction(0)
        for x in a.elements():
            total += self.weights[x]
        return total


def orbits(action: ActionTable) -> list[tuple[int, ...]]:
    """Orbit partition of the point set, each orbit sorted, ordered by least point."""
    m = action.size
    seen = [False] * m
    out = []
    for x in range(m):
        if seen[x]:
            continue
        orbit = set()
        stack = [x]
        seen[x] = True
        while stack:
            y = stack.pop()
            orbit.add(y)
            for g in range(action.group.order):
                z = int(action.act[g, y])
                if not seen[z]:
                    seen[z] = True
                    stack.append(z)
        out.append(tuple(sorted(orbit)))
    return out


def make_measure(action: ActionTable, weights: Sequence[Fraction]) -> MeasureTable:
    """Validated invariant probability measure from explicit weights."""
    ws = tuple(Fraction(w) for w in weights)
    if len(ws) != action.size:
        raise ValidationError(
            f"need {action.size} weights, got {len(ws)}"
        )
    for x, w in enumerate(ws):
        if w < 0:
            raise ValidationError(f"negative weight {w} at point {x}")
    total = sum(ws, Fraction(0))
    if total != 1:
        raise ValidationError(f"weights sum to {total}, not 1")
    for orbit in orbits(action):
        w0 = ws[orbit[0]]
        for x in orbit[1:]:
            if ws[x] != w0:
                raise ValidationError(
                    f"weights not constant on orbit {orbit}: "
                    f"point {orbit[0]} has {w0}, point {x} has {ws[x]}"
                )
    return MeasureTable(action=action, weights=ws)


def uniform_measure(action: ActionTable) -> MeasureTable:
    w = Fraction(1, action.size)
    return MeasureTable(action=action, weights=tuple(w for _ in range(action.size)))


def _antichain(masks: Sequence[SubsetMask]) -> tuple[SubsetMask, ...]:
    """Minimal elements under inclusion, sorted by (popcount, elements)."""
    uniq = sorted(set(masks), key=SubsetMask.sort_key)
    keep: list[SubsetMask] = []
    for m in uniq:
        if not any(k.bits & ~m.bits == 0 for k in keep):
            keep.append(m)
    return tuple(keep)


@dataclass(frozen=True, eq=False)
class SetFamily:
    """A family of subsets of the acted-on point set."""

    kind: str
    name: str
    action: ActionTable
    universe: Universe
    excludes_empty: bool
    upward_behavior: bool
    invariant_behavior: bool
    generators: tuple[SubsetMask, ...] = ()
    upward: bool = False
    invariant: bool = False
    k: int = 0
    measure: Optional[MeasureTable] = None
    minimal: tuple[SubsetMask, ...] = field(default=())

    def contains(self, a: SubsetMask) -> bool:
        return family_contains(self, a)

    def member_within(self, d: SubsetMask) -> Optional[SubsetMask]:
        """Least member (by popcount then element order) contained in d."""
        if d.universe != self.universe:
            raise ValidationError("mask universe does not match the family")
        bits = d.bits
        if self.kind == "min_size":
            if d.bits.bit_count() < self.k:
                return None
            picked = 0
            rem = bits
            for _ in range(self.k):
                low = rem & -rem
                picked |= low
                rem ^= low
            return SubsetMask(self.universe, picked)
        for m in self.minimal:
            if m.bits & ~bits == 0:
                return m
        return None


def family_contains(f: SetFamily, a: SubsetMask) -> bool:
    """Decide membership of a in the family."""
    if a.universe != f.universe:
        raise ValidationError(
            f"mask universe {a.universe.name!r} does not match family universe "
            f"{f.universe.name!r}"
        )
    if f.excludes_empty and a.bits == 0:
        return False
    if f.kind == "min_size":
        return a.bits.bit_count() >= f.k
    if f.kind == "positive_measure":
        assert f.measure is not None
        return a.bits & f.measure.support_bits != 0
    if f.kind == "explicit":
        if f.upward_behavior:
            return any(m.bits & ~a.bits == 0 for m in f.minimal)
        return any(a.bits == g.bits for g in f.generators)
    raise ValidationError(f"unknown family kind {f.kind!r}")


def explicit_family(action: ActionTable, generators: Sequence[SubsetMask], *,
                    upward: bool = False, invariant: bool = False,
                    excludes_empty: bool = True,
                    name: Optional[str] = None) -> SetFamily:
    """Family from generator sets.

    invariant: members are the sets containing some translate of some
    generator. upward only: supersets of generators. No flags: exactly
    the generators.
    """
    gens = []
    for g in generators:
        if g.universe != action.points:
            raise ValidationError("generator universe does not match the action's points")
        if excludes_empty and g.bits == 0:
            raise ValidationError("empty generator in a family excluding the empty set")
        gens.append(g)
    gens_t = tuple(sorted(set(gens), key=SubsetMask.sort_key))
    if invariant:
        translates = [
            translate(g, base, action)
            for base in gens_t
            for g in range(action.group.order)
        ]
        minimal = _antichain(translates)
    elif upward:
        minimal = _antichain(gens_t)
    else:
        minimal = gens_t
    if name is None:
        flags = ("inv" if invariant else "") + ("up" if upward else "")
        sets = ";".join("{" + ",".join(map(str, g.elements())) + "}" for g in gens_t)
        name = f"explicit{('_' + flags) if flags else ''}[{sets}]"
    return SetFamily(
        kind="explicit",
        name=name,
        action=action,
        universe=action.points,
        excludes_empty=excludes_empty,
        upward_behavior=upward or invariant,
        invariant_behavior=invariant,
        generators=gens_t,
        upward=upward,
        invariant=invariant,
        minimal=minimal,
    )


def min_size_family(action: ActionTable, k: int, *,
                    name: Optional[str] = None) -> SetFamily:
    """All subsets with at least k points, k >= 1."""
    if k < 1:
        raise ValidationError(f"min_size threshold must be at least 1, got {k}")
    return SetFamily(
        kind="min_size",
        name=name if name is not None else f"min_size_{k}",
        action=action,
        universe=action.points,
        excludes_empty=True,
        upward_behavior=True,
        invariant_behavior=True,
        k=k,
    )


def all_nonempty_family(action: ActionTable) -> SetFamily:
    return min_size_family(action, 1, name="all_nonempty")


def positive_family(mu: MeasureTable, *, name: Optional[str] = None) -> SetFamily:
    """Sets of positive measure; upward closed and invariant by construction."""
    action = mu.action
    support = mu.support_bits
    minimal = tuple(
        SubsetMask(action.points, 1 << x)
        for x in range(action.size)
        if support >> x & 1
    )
    return SetFamily(
        kind="positive_measure",
        name=name if name is not None else "positive_measure",
        action=action,
        universe=action.points,
        excludes_empty=True,
        upward_behavior=True,
        invariant_behavior=True,
        measure=mu,
        minimal=minimal,
    )


def minimal_members(f: SetFamily) -> tuple[SubsetMask, ...]:
    """The antichain of minimal members, for upward-behaving families."""
    if not f.upward_behavior:
        raise ValidationError(
            "minimal members are only defined for upward-closed families"
        )
    if f.kind == "min_size":
        m = f.universe.size
        if f.k > m:
            return ()
        count = 1
        for i in range(f.k):
            count = count * (m - i) // (i + 1)
        if count > MINIMAL_MATERIALIZE_LIMIT:
            raise SizeLimitError(
                f"{count} minimal members exceed the materialization limit"
            )
        return tuple(
            SubsetMask.from_elements(f.universe, combo)
            for combo in itertools.combinations(range(m), f.k)
        )
    return f.minimal


def family_members(f: SetFamily, *, minimal_only: bool = False) -> Iterator[SubsetMask]:
    """Enumerate members ascending by (popcount, element order).

    minimal_only yields the minimal antichain instead (upward families);
    full enumeration refuses beyond 22 points, pointing at minimal_only.
    """
    if minimal_only:
        yield from minimal_members(f)
        return
    m = f.universe.size
    if m > ENUM_MAX_POINTS:
        raise SizeLimitError(
            f"full enumeration over {m} points exceeds the {ENUM_MAX_POINTS}-point "
            f"bound; use minimal_only or sampled modes"
        )
    start = 0 if not f.excludes_empty else 1
    for pc in range(start, m + 1):
        for combo in itertools.combinations(range(m), pc):
            mask = SubsetMask.from_elements(f.universe, combo)
            if family_contains(f, mask):
                yield mask


@dataclass(frozen=True)
class FlagReport:
    """Verified closure behavior of a family's membership predicate."""

    upward_closed: bool
    invariant: bool
    mode: str
    upward_witness: Optional[tuple[SubsetMask, SubsetMask]] = None
    invariant_witness: Optional[tuple[SubsetMask, int, SubsetMask]] = None


def check_flags(f: SetFamily, *, exhaustive_ops: int = FLAG_EXHAUSTIVE_OPS,
                samples: int = FLAG_SAMPLES, seed: int = 0) -> FlagReport:
    """Verify upward closure and invariance against the membership predicate.

    Exhaustive when 2^m * |G| fits the op budget, otherwise a seeded
    sampled pass; the mode is reported. Returns first counterexamples.
    """
    m = f.universe.size
    n = f.action.group.order
    exhaustive = m <= ENUM_MAX_POINTS and (1 << m) * max(n, m) <= exhaustive_ops
    up_w = None
    inv_w = None
    if exhaustive:
        for bits in range(1 << m):
            a = SubsetMask(f.universe, bits)
            if not family_contains(f, a):
                continue
            if up_w is None:
                for x in range(m):
                    if bits >> x & 1:
                        continue
                    c = SubsetMask(f.universe, bits | (1 << x))
                    if not family_contains(f, c):
                        up_w = (a, c)
                        break
            if inv_w is None:
                for g in range(n):
                    ta = translate(g, a, f.action)
                    if not family_contains(f, ta):
                        inv_w = (a, g, ta)
                        break
            if up_w is not None and inv_w is not None:
                break
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        probes: list[int] = [g.bits for g in f.generators]
        probes.extend(mm.bits for mm in f.minimal[:64])
        while len(probes) < samples:
            probes.append(rng.getrandbits(m) & f.universe.full_bits)
        for bits in probes:
            a = SubsetMask(f.universe, bits)
            if not family_contains(f, a):
                continue
            if up_w is None:
                x = rng.randrange(m)
                c = SubsetMask(f.universe, bits | (1 << x))
                if not family_contains(f, c):
                    up_w = (a, c)
            if inv_w is None:
                g = rng.randrange(n)
                ta = translate(g, a, f.action)
                if not family_contains(f, ta):
                    inv_w = (a, g, ta)
        mode = "sampled"
    return FlagReport(
        upward_closed=up_w is None,
        invariant=inv_w is None,
        mode=mode,
        upward_witness=up_w,
        invariant_witness=inv_w,
    )
