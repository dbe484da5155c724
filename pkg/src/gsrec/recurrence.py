"""Difference sets Delta_F(A), recurrence, filter bases, and the
left-topological property at finite scale."""

from __future__ import annotations

import random
import weakref
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .algebra import ActionTable, GroupTable, SubsetMask, product_set, translate
from .errors import ValidationError
from .families import SetFamily, check_flags, family_members, minimal_members

PROP1_EXHAUSTIVE_MASKS = 1 << 20
PROP1_SAMPLES = 256

_verified_flags: "weakref.WeakKeyDictionary[SetFamily, bool]" = weakref.WeakKeyDictionary()


@dataclass(frozen=True)
class DeltaResult:
    """Delta set with, for each member g, a certifying pair (B, g.B)."""

    set: SubsetMask
    witnesses: tuple[tuple[int, SubsetMask, SubsetMask], ...]

    def witness(self, g: int) -> tuple[SubsetMask, SubsetMask]:
        for gg, b, gb in self.witnesses:
            if gg == g:
                return b, gb
        raise KeyError(g)


@dataclass(frozen=True)
class FilterBase:
    """Generators {Delta(A) : A minimal} and their intersection."""

    generators: tuple[SubsetMask, ...]
    kernel: SubsetMask


@dataclass(frozen=True)
class RecurrenceReport:
    recurrent: bool
    failing_a: Optional[SubsetMask]
    checked: int


@dataclass(frozen=True)
class LeftTopReport:
    left_topological: bool
    kernel: SubsetMask
    witness: Optional[tuple[int, int, int]]


@dataclass(frozen=True)
class Prop1Report:
    holds: bool
    mode: str
    members_checked: int
    pairs_checked: int
    failing: Optional[tuple[SubsetMask, int]]


def _require_point_mask(a: SubsetMask, action: ActionTable) -> None:
    if a.universe != action.points:
        raise ValidationError(
            f"mask universe {a.universe.name!r} does not match action points "
            f"{action.points.name!r}"
        )


def delta(action: ActionTable, f: SetFamily, a: SubsetMask, *,
          allow_nonmember: bool = False) -> DeltaResult:
    """Delta_F(A) = {g : g.B inside A for some member B inside A}, with witnesses.

    A itself must be a member (so that the identity always belongs);
    allow_nonmember=True evaluates the definition anyway.
    """
    _require_point_mask(a, action)
    if f.universe != action.points:
        raise ValidationError("family universe does not match the action")
    if not allow_nonmember and not f.contains(a):
        raise ValidationError(
            "the base set is not a family member; pass allow_nonmember=True "
            "to evaluate the definition regardless"
        )
    group = action.group
    bits = 0
    wits = []
    for g in range(group.order):
        d_g = a & translate(group.inverse(g), a, action)
        b = f.member_within(d_g)
        if b is not None:
            bits |= 1 << g
            wits.append((g, b, translate(g, b, action)))
    return DeltaResult(SubsetMask(group.universe, bits), tuple(wits))


def _flags_verified(f: SetFamily) -> bool:
    if f.upward_behavior and f.invariant_behavior:
        return True
    cached = _verified_flags.get(f)
    if cached is None:
        rep = check_flags(f)
        cached = rep.upward_closed and rep.invariant
        _verified_flags[f] = cached
    return cached


def delta_simple(action: ActionTable, f: SetFamily, a: SubsetMask) -> SubsetMask:
    """Delta via the short form {g : g.A intersect A is a member}.

    Valid only for invariant upward-closed families; refuses otherwise.
    """
    _require_point_mask(a, action)
    if not _flags_verified(f):
        raise ValidationError(
            "delta_simple needs an invariant and upward-closed family"
        )
    group = action.group
    bits = 0
    for g in range(group.order):
        if f.contains(translate(g, a, action) & a):
            bits |= 1 << g
    return SubsetMask(group.universe, bits)


def _member_stream(action: ActionTable, f: SetFamily):
    if f.upward_behavior:
        return minimal_members(f)
    if f.kind == "explicit":
        return f.generators
    return family_members(f)


def is_recurrent(action: ActionTable, f: SetFamily, r: SubsetMask) -> RecurrenceReport:
    """Whether r meets Delta_F(A) for every member A.

    For upward families the quantifier reduces to minimal members: any
    failing member contains a failing minimal member of no larger size,
    so the reported failing set is still the least one overall.
    """
    if r.universe != action.group.universe:
        raise ValidationError("recurrence candidate must be a subset of the group")
    checked = 0
    for a in _member_stream(action, f):
        checked += 1
        dr = delta(action, f, a)
        if dr.set.bits & r.bits == 0:
            return RecurrenceReport(recurrent=False, failing_a=a, checked=checked)
    return RecurrenceReport(recurrent=True, failing_a=None, checked=checked)


def recurrence_filter_base(action: ActionTable, f: SetFamily) -> FilterBase:
    """Base {Delta(A) : A minimal member} plus its intersection kernel.

    Delta is monotone in A, so the kernel over minimal members equals
    the kernel over all members; with no members at all the kernel is
    the whole group (empty intersection).
    """
    group = action.group
    gens = []
    seen = set()
    for a in _member_stream(action, f):
        d = delta(action, f, a).set
        if d.bits not in seen:
            seen.add(d.bits)
            gens.append(d)
    gens.sort(key=SubsetMask.sort_key)
    kernel_bits = group.universe.full_bits
    for d in gens:
        kernel_bits &= d.bits
    return FilterBase(generators=tuple(gens), kernel=SubsetMask(group.universe, kernel_bits))


def is_left_topological(fb: FilterBase, group: GroupTable) -> LeftTopReport:
    """On a finite group the base generates a principal filter with kernel K;
    the left-topological criterion reduces to K*K inside K."""
    k = fb.kernel
    if k.universe != group.universe:
        raise ValidationError("filter base kernel is not over the given group")
    elems = k.elements()
    for x in elems:
        row = group.mul[x]
        for y in elems:
            z = int(row[y])
            if z not in k:
                return LeftTopReport(left_topological=False, kernel=k, witness=(x, y, z))
    return LeftTopReport(left_topological=True, kernel=k, witness=None)


def _prop1_check_one(action: ActionTable, f: SetFamily, a: SubsetMask,
                     delta_cache: dict) -> Optional[int]:
    """Returns a failing g for member a, or None; tries every witness."""
    group = action.group
    dr = delta(action, f, a)
    da_bits = dr.set.bits
    mul = group.mul
    for g, b, _gb in dr.witnesses:
        if _shift_ok(g, b, da_bits, action, f, delta_cache, mul):
            continue
        d_g = a & translate(group.inverse(g), a, action)
        ok = False
        for alt in _members_within(f, d_g):
            if _shift_ok(g, alt, da_bits, action, f, delta_cache, mul):
                ok = True
                break
        if not ok:
            return g
    return None


def _members_within(f: SetFamily, d: SubsetMask):
    if f.upward_behavior:
        if f.kind == "min_size":
            b = f.member_within(d)
            if b is not None:
                yield b
            return
        for m in f.minimal:
            if m.bits & ~d.bits == 0:
                yield m
        return
    for m in f.minimal:
        if m.bits & ~d.bits == 0:
            yield m


def _shift_ok(g: int, b: SubsetMask, da_bits: int, action: ActionTable,
              f: SetFamily, delta_cache: dict, mul) -> bool:
    db = delta_cache.get(b.bits)
    if db is None:
        db = delta(action, f, b).set.bits
        delta_cache[b.bits] = db
    rem = db
    while rem:
        low = rem & -rem
        h = low.bit_length() - 1
        rem ^= low
        if da_bits >> int(mul[g, h]) & 1 == 0:
            return False
    return True


def prop1_witness_check(action: ActionTable, f: SetFamily, *,
                        exhaustive_limit: int = PROP1_EXHAUSTIVE_MASKS,
                        samples: int = PROP1_SAMPLES,
                        seed: int = 0) -> Prop1Report:
    """For every member A and every g in Delta(A), some witness B has
    g * Delta(B) inside Delta(A).

    Upward families small enough scan all 2^m subsets exhaustively in a
    kernel; larger ones check all minimal members plus seeded upward
    samples (mode "sampled"). Families without upward behavior are
    checked over their full member stream.
    """
    group = action.group
    m = f.universe.size
    n = group.order
    if (f.upward_behavior and m <= kernels.PROP1_MAX_POINTS
            and n <= kernels.PROP1_MAX_GROUP and (1 << m) <= exhaustive_limit):
        mins = list(minimal_members(f))
        min_bits = [mm.bits for mm in mins]
        trans = [
            [translate(g, mm, action).bits for mm in mins]
            for g in range(n)
        ]
        dmin = [delta(action, f, mm).set.bits for mm in mins]
        ok, fail_a, fail_g, members, pairs = kernels.prop1_scan(
            min_bits, trans, dmin, group.mul, m, n
        )
        failing = None
        if not ok:
            failing = (SubsetMask(f.universe, fail_a), fail_g)
        return Prop1Report(
            holds=bool(ok), mode="exhaustive",
            members_checked=members, pairs_checked=pairs, failing=failing,
        )
    delta_cache: dict = {}
    members = 0
    pairs = 0
    if not f.upward_behavior:
        mode = "exhaustive"
        stream = list(family_members(f))
    else:
        mode = "sampled"
        mins = list(minimal_members(f))
        stream = list(mins)
        rng = random.Random(seed)
        full = f.universe.full_bits
        seen = {mm.bits for mm in mins}
        while len(stream) < len(mins) + samples and mins:
            base = mins[rng.randrange(len(mins))]
            bits = (base.bits | rng.getrandbits(m)) & full
            if bits not in seen:
                seen.add(bits)
                stream.append(SubsetMask(f.universe, bits))
    for a in stream:
        members += 1
        dr = delta(action, f, a)
        pairs += len(dr.witnesses)
        g = _prop1_check_one(action, f, a, delta_cache)
        if g is not None:
            return Prop1Report(
                holds=False, mode=mode,
                members_checked=members, pairs_checked=pairs, failing=(a, g),
            )
    return Prop1Report(
        holds=True, mode=mode,
        members_checked=members, pairs_checked=pairs, failing=None,
    )
