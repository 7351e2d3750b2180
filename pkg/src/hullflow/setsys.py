"""Set-system algebra on finite ground sets.

Ground elements are the integers 0..n-1 and subsets are bit vectors over
them.  A SetSystem is a duplicate-free family of subsets in ascending mask
order; complements are taken inside the declared ground set.  The two empty
aggregations are fixed constants: an intersection over an empty family is
the empty set, and so is a union over an empty family.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator

from . import kernels

MAX_GROUND = 64
DEFAULT_ENUM_CAP = 20  # largest ground size for which 2^n loops are allowed


class CapExceededError(RuntimeError):
    """An operation would enumerate beyond the configured cap."""


class GroundMismatchError(ValueError):
    """Operands live on different ground sets."""


def _check_enum(ground: "GroundSet", cap: int = DEFAULT_ENUM_CAP) -> None:
    if ground.size > cap:
        raise CapExceededError(
            f"ground size {ground.size} exceeds enumeration cap {cap}"
        )


@dataclass(frozen=True, order=True)
class GroundSet:
    """The carrier {0, ..., size-1}."""

    size: int

    def __post_init__(self) -> None:
        if not 1 <= self.size <= MAX_GROUND:
            raise ValueError(f"ground size must be in 1..{MAX_GROUND}, got {self.size}")

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def subsets(self) -> Iterator[int]:
        return iter(range(1 << self.size))


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of a ground set, stored as a bit vector."""

    ground: GroundSet
    bits: int

    def __post_init__(self) -> None:
        if self.bits & ~self.ground.full_mask:
            raise ValueError(f"bits 0x{self.bits:x} outside ground of size {self.ground.size}")

    @classmethod
    def of(cls, ground: GroundSet, elements: Iterable[int]) -> "Subset":
        bits = 0
        for e in elements:
            bits |= 1 << e
        return cls(ground, bits)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.ground.size) if self.bits >> i & 1)

    def __contains__(self, element: int) -> bool:
        return bool(self.bits >> element & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __and__(self, other: "Subset") -> "Subset":
        return Subset(self._common(other), self.bits & other.bits)

    def __or__(self, other: "Subset") -> "Subset":
        return Subset(self._common(other), self.bits | other.bits)

    def __xor__(self, other: "Subset") -> "Subset":
        return Subset(self._common(other), self.bits ^ other.bits)

    def __sub__(self, other: "Subset") -> "Subset":
        return Subset(self._common(other), self.bits & ~other.bits)

    def complement(self) -> "Subset":
        return Subset(self.ground, self.ground.full_mask ^ self.bits)

    def issubset(self, other: "Subset") -> bool:
        self._common(other)
        return self.bits & ~other.bits == 0

    def _common(self, other: "Subset") -> GroundSet:
        if self.ground != other.ground:
            raise GroundMismatchError(f"{self.ground} vs {other.ground}")
        return self.ground

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.indices())) + "}"


def sym_diff(x: Subset, y: Subset) -> Subset:
    """Symmetric difference (x minus y) union (y minus x)."""
    return x ^ y


@dataclass(frozen=True)
class SetSystem:
    """A duplicate-free family of subsets in canonical ascending order."""

    ground: GroundSet
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        full = self.ground.full_mask
        for m in self.masks:
            if m & ~full:
                raise ValueError(f"member 0x{m:x} outside ground of size {self.ground.size}")
        canon = tuple(sorted(set(self.masks)))
        if canon != self.masks:
            object.__setattr__(self, "masks", canon)

    @classmethod
    def of(cls, ground: GroundSet, families: Iterable[Iterable[int]]) -> "SetSystem":
        masks = [Subset.of(ground, fam).bits for fam in families]
        return cls(ground, tuple(masks))

    @classmethod
    def from_masks(cls, ground: GroundSet, masks: Iterable[int]) -> "SetSystem":
        return cls(ground, tuple(masks))

    @classmethod
    def powerset(cls, ground: GroundSet) -> "SetSystem":
        _check_enum(ground)
        return cls(ground, tuple(range(1 << ground.size)))

    @property
    def members(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.ground, m) for m in self.masks)

    def union_mask(self) -> int:
        return reduce(lambda a, b: a | b, self.masks, 0)

    def covers_ground(self) -> bool:
        return self.union_mask() == self.ground.full_mask

    def __contains__(self, item: Subset | int) -> bool:
        bits = item.bits if isinstance(item, Subset) else item
        return bits in set(self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def without_empty(self) -> "SetSystem":
        return SetSystem(self.ground, tuple(m for m in self.masks if m))

    def __repr__(self) -> str:
        return "[" + " ".join(repr(s) for s in self.members) + "]"


class ClosureConvention(enum.Enum):
    """Which complement family the hull of a system intersects over:
    the full complement system, or the complement system with the empty
    member removed."""

    FULL = "full"
    NONEMPTY = "nonempty"


class HullKind:
    """Binary triple (j, k, l) selecting one of the eight hull constructions:
    j: 0 = unite the gathered family, 1 = intersect it;
    k: 0 = gather members contained in the argument, 1 = members containing it;
    l: 0 = gather from the system itself, 1 = from its complement system.
    """

    __slots__ = ("j", "k", "l")

    def __init__(self, j: int, k: int, l: int) -> None:
        for flag in (j, k, l):
            if flag not in (0, 1):
                raise ValueError("hull flags must be 0 or 1")
        self.j, self.k, self.l = j, k, l

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HullKind)
            and (self.j, self.k, self.l) == (other.j, other.k, other.l)
        )

    def __hash__(self) -> int:
        return hash((self.j, self.k, self.l))

    def __repr__(self) -> str:
        return f"HullKind({self.j}{self.k}{self.l})"


CLOSURE_KIND = HullKind(1, 1, 1)
INTERIOR_KIND = HullKind(0, 0, 0)


def complement_system(system: SetSystem) -> SetSystem:
    """The family of ground-complements of the members."""
    full = system.ground.full_mask
    return SetSystem(system.ground, tuple(full ^ m for m in system.masks))


def selection(system: SetSystem, x: Subset) -> SetSystem:
    """Members meeting x."""
    if x.ground != system.ground:
        raise GroundMismatchError(f"{x.ground} vs {system.ground}")
    return SetSystem(system.ground, tuple(m for m in system.masks if m & x.bits))


def _hull_sources(system: SetSystem, l: int, conv: ClosureConvention) -> list[int]:
    if l == 0:
        return list(system.masks)
    full = system.ground.full_mask
    sources = [full ^ m for m in system.masks]
    if conv is ClosureConvention.NONEMPTY:
        sources = [m for m in sources if m]
    return sources


def hull(
    system: SetSystem,
    kind: HullKind,
    q: Subset,
    conv: ClosureConvention = ClosureConvention.FULL,
) -> Subset:
    """One of the eight hull constructions applied to q.  The convention
    matters only when the complement system is the source (l = 1)."""
    if q.ground != system.ground:
        raise GroundMismatchError(f"{q.ground} vs {system.ground}")
    sources = _hull_sources(system, kind.l, conv)
    return Subset(system.ground, kernels.hull_value(sources, q.bits, kind.j, kind.k))


def closure(
    system: SetSystem, q: Subset, conv: ClosureConvention = ClosureConvention.FULL
) -> Subset:
    """Smallest member-intersection of the complement system containing q
    (the empty set when no complement member contains q)."""
    return hull(system, CLOSURE_KIND, q, conv)


def interior(system: SetSystem, q: Subset) -> Subset:
    """Union of the members contained in q."""
    return hull(system, INTERIOR_KIND, q)


def closure_map(
    system: SetSystem, conv: ClosureConvention = ClosureConvention.FULL
) -> list[int]:
    """Closure of every subset of the ground, indexed by mask."""
    _check_enum(system.ground)
    sources = _hull_sources(system, 1, conv)
    return kernels.closure_table(system.ground.size, sources)


def closed_family(
    system: SetSystem, conv: ClosureConvention = ClosureConvention.FULL
) -> SetSystem:
    """All closure values over the full power set, deduplicated."""
    return SetSystem(system.ground, tuple(set(closure_map(system, conv))))


def elementarize(system: SetSystem) -> SetSystem:
    """For each member, the intersection of its selection; the family of
    fixed blocks of the selection-intersection operator."""
    out = set()
    for m in system.masks:
        sel = [c for c in system.masks if c & m]
        out.add(reduce(lambda a, b: a & b, sel) if sel else 0)
    return SetSystem(system.ground, tuple(out))


def union_closure(system: SetSystem) -> SetSystem:
    """All unions of subfamilies, computed as a pairwise fixpoint seeded
    with the empty set."""
    acc = {0}
    acc.update(system.masks)
    frontier = list(acc)
    while frontier:
        m = frontier.pop()
        for other in list(acc):
            u = m | other
            if u not in acc:
                acc.add(u)
                frontier.append(u)
    return SetSystem(system.ground, tuple(acc))


def is_basis_of(basis: SetSystem, topology: SetSystem) -> bool:
    """True when the union closure of the basis, plus the empty set, is
    exactly the given family."""
    if basis.ground != topology.ground:
        raise GroundMismatchError(f"{basis.ground} vs {topology.ground}")
    generated = set(union_closure(basis).masks) | {0}
    return generated == set(topology.masks)


@dataclass(frozen=True)
class SystemFlags:
    covers_ground: bool
    is_topology: bool
    is_self_dual: bool
    is_complete: bool
    is_quasitopology: bool
    is_partition: bool
    is_t0: bool


def classify(
    system: SetSystem, conv: ClosureConvention = ClosureConvention.FULL
) -> SystemFlags:
    """Structural flags of a system.  Completeness means the empty set is
    the only subset with empty closure; a quasitopology is a complete system
    closed under pairwise unions and intersections (on finite carriers the
    pairwise check suffices for the topology axioms as well)."""
    ground = system.ground
    full = ground.full_mask
    masks = list(system.masks)
    member_set = set(masks)
    covers = system.union_mask() == full

    union_ok, inter_ok = kernels.pairwise_closed(masks)
    is_topology = (
        0 in member_set and full in member_set and union_ok and inter_ok
    )

    self_dual = member_set == {full ^ m for m in masks}

    cl = closure_map(system, conv)
    complete = all((cl[z] == 0) == (z == 0) for z in range(1 << ground.size))
    quasitopology = complete and union_ok and inter_ok

    nonempty = [m for m in masks if m]
    disjoint = all(
        not (nonempty[i] & nonempty[j])
        for i in range(len(nonempty))
        for j in range(i + 1, len(nonempty))
    )
    partition = covers and disjoint

    t0 = all(
        any((m >> x & 1) != (m >> y & 1) for m in masks)
        for x in range(ground.size)
        for y in range(x + 1, ground.size)
    )

    return SystemFlags(
        covers_ground=covers,
        is_topology=is_topology,
        is_self_dual=self_dual,
        is_complete=complete,
        is_quasitopology=quasitopology,
        is_partition=partition,
        is_t0=t0,
    )


def un_ov(system: SetSystem) -> tuple[SetSystem, SetSystem]:
    """(complement-free subsets, system-containing subsets): subsets of the
    ground containing no nonempty member / containing some nonempty member."""
    ground = system.ground
    _check_enum(ground)
    nonempty = [m for m in system.masks if m]
    un, ov = [], []
    for z in range(1 << ground.size):
        if any(m & z == m for m in nonempty):
            ov.append(z)
        else:
            un.append(z)
    return SetSystem(ground, tuple(un)), SetSystem(ground, tuple(ov))


def is_hybrid(system: SetSystem, candidate: SetSystem) -> bool:
    """True when the candidate and its complement system both live inside
    the union of the system and its own complement system."""
    if system.ground != candidate.ground:
        raise GroundMismatchError(f"{system.ground} vs {candidate.ground}")
    pool = set(system.masks) | set(complement_system(system).masks)
    cand = set(candidate.masks) | set(complement_system(candidate).masks)
    return cand <= pool


@dataclass(frozen=True)
class FibrationClass:
    key: int            # the common closure value
    member_masks: tuple[int, ...]
    core: int           # intersection of the class members


@dataclass(frozen=True)
class FibrationPartition:
    ground: GroundSet
    classes: tuple[FibrationClass, ...]
    representation_ok: bool


def product_fibration(
    system: SetSystem, conv: ClosureConvention = ClosureConvention.FULL
) -> FibrationPartition:
    """Partition of the power set by closure value, with per-class cores,
    plus a flag recording whether the closed-set representation
    {Q | core : Q in trace of the complement-free family on the class key}
    reproduces the classes exactly."""
    ground = system.ground
    cl = closure_map(system, conv)
    by_key: dict[int, list[int]] = {}
    for z in range(1 << ground.size):
        by_key.setdefault(cl[z], []).append(z)
    classes = tuple(
        FibrationClass(
            key=key,
            member_masks=tuple(sorted(zs)),
            core=reduce(lambda a, b: a & b, zs),
        )
        for key, zs in sorted(by_key.items())
    )

    un_compl, _ = un_ov(complement_system(system))
    rep = set()
    for fc in classes:
        rep.add(frozenset((q & fc.key) | fc.core for q in un_compl.masks))
    actual = {frozenset(fc.member_masks) for fc in classes}
    return FibrationPartition(ground, classes, representation_ok=rep == actual)
