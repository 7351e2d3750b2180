"""Permutation dynamics: groups, orbits, invariant topologies, coherence."""

import itertools

import pytest

from hullflow.dynsys import (
    Autobolism,
    DiscreteFlow,
    coherence_witness,
    compose,
    generate_group,
    invariant_basis,
    invariant_topology,
    invert,
    is_invariant,
    is_phasic,
    orbit,
    orbit_partition,
)
from hullflow.setsys import (
    CapExceededError,
    GroundSet,
    SetSystem,
    Subset,
    classify,
    elementarize,
)

G2 = GroundSet(2)
G3 = GroundSet(3)


@pytest.fixture
def swap01():
    return Autobolism.of(G3, [1, 0, 2])


@pytest.fixture
def swap12():
    return Autobolism.of(G3, [0, 2, 1])


@pytest.fixture
def rot():
    return Autobolism.of(G3, [1, 2, 0])


class TestComposition:
    def test_involution(self, swap01):
        assert compose(swap01, swap01) == Autobolism.identity(G3)

    def test_rotation_squares(self, rot):
        assert compose(rot, rot) == Autobolism.of(G3, [2, 0, 1])

    def test_identity_neutral(self, swap01):
        ident = Autobolism.identity(G3)
        assert compose(swap01, ident) == swap01
        assert compose(ident, swap01) == swap01

    def test_invert(self, rot, swap01):
        assert invert(Autobolism.identity(G3)) == Autobolism.identity(G3)
        assert invert(rot) == compose(rot, rot)
        assert invert(swap01) == swap01
        assert compose(swap01, invert(swap01)) == Autobolism.identity(G3)

    def test_not_a_permutation(self):
        with pytest.raises(ValueError):
            Autobolism.of(G3, [0, 0, 1])


class TestGroupGeneration:
    def test_involution_order_two(self, swap01):
        assert len(generate_group([swap01])) == 2

    def test_two_swaps_generate_symmetric_group(self, swap01, swap12):
        assert len(generate_group([swap01, swap12])) == 6

    def test_identity_alone(self):
        assert len(generate_group([Autobolism.identity(G3)])) == 1

    def test_cap(self, swap01, swap12):
        with pytest.raises(CapExceededError):
            generate_group([swap01, swap12], cap=3)

    def test_generator_order_and_duplicates_irrelevant(self, swap01, swap12):
        a = generate_group([swap01, swap12])
        b = generate_group([swap12, swap01, swap12])
        assert a == b

    def test_discovery_order_starts_with_identity(self, swap01, swap12):
        grp = generate_group([swap01, swap12])
        assert grp.elements[0] == Autobolism.identity(G3)


class TestOrbits:
    def test_cyclic_orbit(self, swap01):
        flow = DiscreteFlow.cyclic(swap01)
        assert orbit(flow, 0) == Subset.of(G3, [0, 1])

    def test_fixed_point(self, swap01):
        assert orbit(DiscreteFlow.cyclic(swap01), 2) == Subset.of(G3, [2])

    def test_transitive_group(self, swap01, swap12):
        flow = DiscreteFlow.of_group([swap01, swap12])
        assert orbit(flow, 1) == Subset.of(G3, [0, 1, 2])

    def test_partition(self, swap01, swap12):
        assert orbit_partition(DiscreteFlow.cyclic(swap01)) == SetSystem.of(
            G3, [[0, 1], [2]]
        )
        ident = DiscreteFlow.cyclic(Autobolism.identity(G3))
        assert orbit_partition(ident) == SetSystem.of(G3, [[0], [1], [2]])
        s3 = DiscreteFlow.of_group([swap01, swap12])
        assert orbit_partition(s3) == SetSystem.of(G3, [[0, 1, 2]])


class TestInvariantTopology:
    def test_basis_and_full(self, swap01):
        assert invariant_basis([swap01]) == SetSystem.of(G3, [[0, 1], [2]])
        assert invariant_topology([swap01]) == SetSystem.of(
            G3, [[], [0, 1], [2], [0, 1, 2]]
        )

    def test_rotation(self, rot):
        assert invariant_basis([rot]) == SetSystem.of(G3, [[0, 1, 2]])
        assert invariant_topology([rot]) == SetSystem.of(G3, [[], [0, 1, 2]])

    def test_identity_everything(self):
        ident = Autobolism.identity(G2)
        assert invariant_topology([ident]) == SetSystem.powerset(G2)

    def test_always_self_dual(self):
        for n in (2, 3, 4, 5):
            ground = GroundSet(n)
            for image in itertools.permutations(range(n)):
                t = invariant_topology([Autobolism.of(ground, image)])
                assert classify(t).is_self_dual, image

    def test_elementarize_matches_orbits(self):
        # the selection-intersection blocks of the invariant topology are
        # exactly the orbit blocks
        for n in (2, 3, 4):
            ground = GroundSet(n)
            perms = list(itertools.permutations(range(n)))
            for pair in itertools.combinations(perms, 2):
                gens = [Autobolism.of(ground, p) for p in pair]
                t = invariant_topology(gens)
                blocks = elementarize(t).without_empty()
                assert blocks == orbit_partition(DiscreteFlow.of_group(gens))


class TestInvariance:
    def test_examples(self, swap01):
        assert is_invariant([swap01], Subset.of(G3, [0, 1]))
        assert not is_invariant([swap01], Subset.of(G3, [0]))
        assert is_invariant([swap01], Subset.of(G3, []))
        assert is_invariant([swap01], Subset.of(G3, [0, 1, 2]))


class TestCoherenceWitness:
    def test_swap_moves_zero_to_one(self, swap01):
        w = coherence_witness([swap01], Subset.of(G3, [0]), Subset.of(G3, [1]))
        assert w == swap01

    def test_overlap_gives_identity(self, swap01):
        w = coherence_witness([swap01], Subset.of(G3, [0, 2]), Subset.of(G3, [2]))
        assert w == Autobolism.identity(G3)

    def test_orbit_separation(self, swap01):
        assert coherence_witness([swap01], Subset.of(G3, [0]), Subset.of(G3, [2])) is None

    def test_rejects_empty(self, swap01):
        with pytest.raises(ValueError):
            coherence_witness([swap01], Subset.of(G3, []), Subset.of(G3, [1]))

    def test_distinct_orbits_never_cohere(self):
        # no witness connects nonempty pieces of two distinct orbit blocks
        for n in (3, 4):
            ground = GroundSet(n)
            for image in itertools.permutations(range(n)):
                g = Autobolism.of(ground, image)
                blocks = orbit_partition(DiscreteFlow.cyclic(g)).masks
                for b1 in blocks:
                    for b2 in blocks:
                        if b1 == b2:
                            continue
                        a = Subset(ground, b1 & -b1)
                        b = Subset(ground, b2 & -b2)
                        assert coherence_witness([g], a, b) is None


class TestCoherenceSingletonAgreement:
    def test_singleton_pairs_decide_full_subset_check(self):
        # checking one-point pairs is equivalent to checking all nonempty
        # subset pairs, exhaustively over generator pairs on 3 points
        from hullflow import kernels
        from hullflow.dynsys import generate_group

        perms = [Autobolism.of(G3, p) for p in itertools.permutations(range(3))]
        gensets = [(p,) for p in perms] + list(itertools.combinations(perms, 2))
        for gens in gensets:
            tables = generate_group(list(gens)).mask_tables()
            for chi in range(1, 8):
                assert kernels.coherent_block(tables, chi, True) == (
                    kernels.coherent_block(tables, chi, False)
                )


class TestPhasicity:
    def test_group_is_phasic(self, swap01):
        ident = Autobolism.identity(G3)
        assert is_phasic([ident, swap01])
        assert is_phasic([ident])

    def test_two_swaps_not_phasic(self, swap01, swap12):
        assert not is_phasic([swap01, swap12])

    def test_lone_involution(self):
        # the classic two-point example: a single swap is aphasic, its
        # invariant topology is indiscrete, and the swap itself already
        # witnesses coherence for the disjoint singleton pair
        swap = Autobolism.of(G2, [1, 0])
        assert not is_phasic([swap])
        assert invariant_topology([swap]) == SetSystem.of(G2, [[], [0, 1]])
        assert swap.apply(Subset.of(G2, [0])) & Subset.of(G2, [1])
