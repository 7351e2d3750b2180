"""Permutation dynamics: autobolisms, generated phase groups, orbits and
their invariant topologies, coherence witnesses, phasicity.

A flow is either cyclic (one generator, integer time via powers) or a
generated permutation group (group time).  Group generation and witness
search run breadth-first in a fixed order, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import kernels
from .setsys import (
    CapExceededError,
    GroundMismatchError,
    GroundSet,
    SetSystem,
    Subset,
    union_closure,
)

DEFAULT_GROUP_CAP = 10080


@dataclass(frozen=True, order=True)
class Autobolism:
    """A permutation of the ground set; image[i] is where i goes."""

    ground: GroundSet
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(self.ground.size)):
            raise ValueError(f"not a permutation of 0..{self.ground.size - 1}: {self.image}")

    @classmethod
    def identity(cls, ground: GroundSet) -> "Autobolism":
        return cls(ground, tuple(range(ground.size)))

    @classmethod
    def of(cls, ground: GroundSet, image: Sequence[int]) -> "Autobolism":
        return cls(ground, tuple(image))

    def __call__(self, x: int) -> int:
        return self.image[x]

    def apply_mask(self, mask: int) -> int:
        return kernels.image(list(self.image), mask)

    def apply(self, subset: Subset) -> Subset:
        if subset.ground != self.ground:
            raise GroundMismatchError(f"{subset.ground} vs {self.ground}")
        return Subset(self.ground, self.apply_mask(subset.bits))

    def is_identity(self) -> bool:
        return all(self.image[i] == i for i in range(self.ground.size))

    def order(self) -> int:
        k, p = 1, self
        ident = Autobolism.identity(self.ground)
        while p != ident:
            p = compose(self, p)
            k += 1
        return k


def compose(f: Autobolism, g: Autobolism) -> Autobolism:
    """Pointwise f after g."""
    if f.ground != g.ground:
        raise GroundMismatchError(f"{f.ground} vs {g.ground}")
    return Autobolism(f.ground, tuple(f.image[g.image[i]] for i in range(f.ground.size)))


def invert(f: Autobolism) -> Autobolism:
    out = [0] * f.ground.size
    for i, j in enumerate(f.image):
        out[j] = i
    return Autobolism(f.ground, tuple(out))


def power(f: Autobolism, k: int) -> Autobolism:
    if k < 0:
        return power(invert(f), -k)
    acc = Autobolism.identity(f.ground)
    for _ in range(k):
        acc = compose(f, acc)
    return acc


class PhaseGroup:
    """A composition- and inverse-closed set of autobolisms, kept in the
    breadth-first discovery order of its generation."""

    __slots__ = ("ground", "generators", "elements", "_member_set")

    def __init__(self, ground: GroundSet, generators: tuple[Autobolism, ...],
                 elements: tuple[Autobolism, ...]):
        self.ground = ground
        self.generators = generators
        self.elements = elements
        self._member_set = frozenset(g.image for g in elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, f: Autobolism) -> bool:
        return f.image in self._member_set

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PhaseGroup) and self._member_set == other._member_set

    def __hash__(self) -> int:
        return hash(self._member_set)

    def mask_tables(self) -> list[list[int]]:
        return [kernels.perm_table(list(g.image)) for g in self.elements]


def generate_group(
    gens: Sequence[Autobolism], cap: int = DEFAULT_GROUP_CAP
) -> PhaseGroup:
    """Breadth-first closure of the generators and their inverses, seeded
    with the identity."""
    if not gens:
        raise ValueError("need at least one generator")
    ground = gens[0].ground
    for g in gens[1:]:
        if g.ground != ground:
            raise GroundMismatchError(f"{g.ground} vs {ground}")
    step: list[Autobolism] = []
    for g in gens:
        if g not in step:
            step.append(g)
        gi = invert(g)
        if gi not in step:
            step.append(gi)
    ident = Autobolism.identity(ground)
    discovered = [ident]
    seen = {ident.image}
    frontier = [ident]
    while frontier:
        nxt = []
        for cur in frontier:
            for h in step:
                cand = compose(h, cur)
                if cand.image not in seen:
                    seen.add(cand.image)
                    discovered.append(cand)
                    nxt.append(cand)
                    if len(discovered) > cap:
                        raise CapExceededError(
                            f"group order exceeds cap {cap}"
                        )
        frontier = nxt
    return PhaseGroup(ground, tuple(gens), tuple(discovered))


@dataclass(frozen=True)
class DiscreteFlow:
    """Either the cyclic flow of one generator (integer time) or a
    generated permutation group (group time)."""

    ground: GroundSet
    generator: Optional[Autobolism] = None
    group: Optional[PhaseGroup] = None

    @classmethod
    def cyclic(cls, generator: Autobolism) -> "DiscreteFlow":
        return cls(generator.ground, generator=generator)

    @classmethod
    def of_group(cls, gens: Sequence[Autobolism], cap: int = DEFAULT_GROUP_CAP) -> "DiscreteFlow":
        grp = generate_group(gens, cap)
        return cls(grp.ground, group=grp)

    @property
    def is_cyclic(self) -> bool:
        return self.generator is not None

    def generators(self) -> tuple[Autobolism, ...]:
        if self.generator is not None:
            return (self.generator,)
        assert self.group is not None
        return self.group.generators

    def phase_group(self) -> PhaseGroup:
        if self.group is not None:
            return self.group
        assert self.generator is not None
        return generate_group([self.generator])

    def period(self) -> int:
        """Order of the generator; only cyclic flows carry integer time."""
        if self.generator is None:
            raise ValueError("group flows have no integer time")
        return self.generator.order()


def orbit(flow: DiscreteFlow, z: int) -> Subset:
    """All states reachable from z under the flow's group."""
    if not 0 <= z < flow.ground.size:
        raise ValueError(f"state {z} outside ground of size {flow.ground.size}")
    perms = [list(g.image) for g in flow.generators()]
    for block in kernels.orbit_blocks(flow.ground.size, perms):
        if block >> z & 1:
            return Subset(flow.ground, block)
    raise AssertionError("unreachable: orbits partition the ground")


def orbit_partition(flow: DiscreteFlow) -> SetSystem:
    """The partition of the ground set into group orbits."""
    perms = [list(g.image) for g in flow.generators()]
    return SetSystem(flow.ground, tuple(kernels.orbit_blocks(flow.ground.size, perms)))


def invariant_basis(gens: Sequence[Autobolism]) -> SetSystem:
    """Orbit partition of the generated group; the common invariant
    topology is its union closure plus the empty set."""
    return orbit_partition(DiscreteFlow.of_group(gens))


def invariant_topology(gens: Sequence[Autobolism]) -> SetSystem:
    """All subsets fixed by every generator: the union closure of the orbit
    partition together with the empty set."""
    basis = invariant_basis(gens)
    return union_closure(basis)  # union closure always contains the empty set


def is_invariant(gens: Iterable[Autobolism], x: Subset) -> bool:
    """True when every generator maps x onto itself (generators suffice for
    invariance under the generated group)."""
    return all(g.apply_mask(x.bits) == x.bits for g in gens)


def coherence_witness(
    gens: Sequence[Autobolism], a: Subset, b: Subset
) -> Optional[Autobolism]:
    """First group element (breadth-first discovery order) whose image of a
    meets b, or None."""
    if not a or not b:
        raise ValueError("coherence witnesses are defined for nonempty sets")
    group = generate_group(gens)
    for g in group.elements:
        if g.apply_mask(a.bits) & b.bits:
            return g
    return None


def is_phasic(flows: Sequence[Autobolism]) -> bool:
    """True when the listed family is already closed under composition
    (hence equal to its generated group)."""
    images = {f.image for f in flows}
    return all(
        compose(f, g).image in images for f in flows for g in flows
    )
