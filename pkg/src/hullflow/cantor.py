"""Cantor-continuity of endofunctions relative to a set system.

A map is commutatively Cantor-continuous when it commutes with the
system's hull operator on every subset.  The one-sided memberships ask,
for every nonempty member, for a nonempty member mapped into it (plus
side) or contained in its image (minus side); both quantifiers skip the
empty set on both sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .dynsys import Autobolism, generate_group
from .setsys import (
    ClosureConvention,
    GroundMismatchError,
    GroundSet,
    SetSystem,
    Subset,
    closure_map,
    complement_system,
    product_fibration,
    un_ov,
)


@dataclass(frozen=True, order=True)
class EndoFunction:
    """A (not necessarily bijective) self-map of the ground set."""

    ground: GroundSet
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.ground.size
        if len(self.image) != n or any(not 0 <= v < n for v in self.image):
            raise ValueError(f"not a self-map of 0..{n - 1}: {self.image}")

    @classmethod
    def of(cls, ground: GroundSet, image: Sequence[int]) -> "EndoFunction":
        return cls(ground, tuple(image))

    @classmethod
    def constant(cls, ground: GroundSet, value: int) -> "EndoFunction":
        return cls(ground, (value,) * ground.size)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def apply_mask(self, mask: int) -> int:
        return kernels.image(list(self.image), mask)

    def apply(self, subset: Subset) -> Subset:
        if subset.ground != self.ground:
            raise GroundMismatchError(f"{subset.ground} vs {self.ground}")
        return Subset(self.ground, self.apply_mask(subset.bits))

    def is_bijective(self) -> bool:
        return len(set(self.image)) == self.ground.size

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, v in enumerate(self.image):
            if mask >> v & 1:
                out |= 1 << i
        return out


def op_commutator(
    f: EndoFunction,
    system: SetSystem,
    x: Subset,
    conv: ClosureConvention = ClosureConvention.FULL,
) -> Subset:
    """f(closure(x)) symmetric-difference closure(f(x))."""
    if f.ground != system.ground or x.ground != system.ground:
        raise GroundMismatchError("function, system and argument must share a ground")
    cl = closure_map(system, conv)
    left = f.apply_mask(cl[x.bits])
    right = cl[f.apply_mask(x.bits)]
    return Subset(system.ground, left ^ right)


def is_commutative_cantor(
    f: EndoFunction,
    system: SetSystem,
    conv: ClosureConvention = ClosureConvention.FULL,
) -> bool:
    """True when the commutator with the hull operator vanishes on every
    subset of the ground."""
    if f.ground != system.ground:
        raise GroundMismatchError(f"{f.ground} vs {system.ground}")
    cl = closure_map(system, conv)
    ftab = kernels.perm_table(list(f.image))
    return kernels.commutes_with_closure(ftab, cl)


def cantor_membership(f: EndoFunction, system: SetSystem, plus: bool) -> bool:
    """Plus side: every nonempty member admits a nonempty member mapped
    into it.  Minus side: every nonempty member admits a nonempty member
    contained in its image."""
    if f.ground != system.ground:
        raise GroundMismatchError(f"{f.ground} vs {system.ground}")
    nonempty = [m for m in system.masks if m]
    if plus:
        images = [f.apply_mask(m) for m in nonempty]
        return all(any(img & ~m == 0 for img in images) for m in nonempty)
    return all(
        any(mb & ~f.apply_mask(m) == 0 for mb in nonempty) for m in nonempty
    )


def preserves_unfamily(f: EndoFunction, system: SetSystem) -> bool:
    """True when f maps every complement-free subset (no nonempty member of
    the complement system inside it) to a complement-free subset."""
    un_compl, _ = un_ov(complement_system(system))
    members = set(un_compl.masks)
    return all(f.apply_mask(q) in members for q in un_compl.masks)


def fibration_integrity(
    f: EndoFunction,
    system: SetSystem,
    conv: ClosureConvention = ClosureConvention.FULL,
) -> bool:
    """True when mapping every closure-fibration class elementwise through
    f reproduces the class family exactly."""
    fib = product_fibration(system, conv)
    actual = {frozenset(fc.member_masks) for fc in fib.classes}
    imaged = {
        frozenset(f.apply_mask(z) for z in fc.member_masks) for fc in fib.classes
    }
    return imaged == actual


def is_trivially_commutative(system: SetSystem) -> bool:
    """True when every co-singleton is a member, which forces the hull
    operator to be the identity and every self-map to commute with it."""
    full = system.ground.full_mask
    members = set(system.masks)
    return all(full ^ (1 << x) in members for x in range(system.ground.size))


@dataclass(frozen=True)
class ExplicationRecord:
    """Commutative Cantor-continuity next to the two-sided memberships over
    the system and over its complement system."""

    lhs: bool
    rhs_system: bool
    rhs_complement: bool

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs_system == self.rhs_complement


def explication_check(
    f: EndoFunction,
    system: SetSystem,
    conv: ClosureConvention = ClosureConvention.FULL,
) -> ExplicationRecord:
    compl = complement_system(system)
    return ExplicationRecord(
        lhs=is_commutative_cantor(f, system, conv),
        rhs_system=cantor_membership(f, system, True) and cantor_membership(f, system, False),
        rhs_complement=cantor_membership(f, compl, True) and cantor_membership(f, compl, False),
    )


@dataclass(frozen=True)
class PhaseChainRecord:
    """The five statements of the phase-flow continuity chain for the
    generated group: all-element commutativity, the plus and minus
    memberships over the system, and both memberships over the complement
    system.  The chain holds when all five agree."""

    commutes: bool
    plus_system: bool
    minus_system: bool
    plus_complement: bool
    minus_complement: bool

    @property
    def statements(self) -> tuple[bool, bool, bool, bool, bool]:
        return (
            self.commutes,
            self.plus_system,
            self.minus_system,
            self.plus_complement,
            self.minus_complement,
        )

    @property
    def chain_holds(self) -> bool:
        return len(set(self.statements)) == 1


def phase_chain_check(
    gens: Sequence[Autobolism],
    system: SetSystem,
    conv: ClosureConvention = ClosureConvention.FULL,
) -> PhaseChainRecord:
    """Evaluate the continuity chain for the group generated by gens,
    relative to a covering system."""
    if not system.covers_ground():
        raise ValueError("the system must cover the ground")
    group = generate_group(list(gens))
    compl = complement_system(system)
    members = [EndoFunction(g.ground, g.image) for g in group.elements]
    cl = closure_map(system, conv)
    commutes = all(
        kernels.commutes_with_closure(kernels.perm_table(list(g.image)), cl)
        for g in group.elements
    )
    return PhaseChainRecord(
        commutes=commutes,
        plus_system=all(cantor_membership(f, system, True) for f in members),
        minus_system=all(cantor_membership(f, system, False) for f in members),
        plus_complement=all(cantor_membership(f, compl, True) for f in members),
        minus_complement=all(cantor_membership(f, compl, False) for f in members),
    )
