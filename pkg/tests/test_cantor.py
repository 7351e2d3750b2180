"""Cantor-continuity: commutators, memberships, fibration integrity."""

import itertools

import pytest

from hullflow.cantor import (
    EndoFunction,
    cantor_membership,
    explication_check,
    fibration_integrity,
    is_commutative_cantor,
    is_trivially_commutative,
    op_commutator,
    phase_chain_check,
    preserves_unfamily,
)
from hullflow.dynsys import Autobolism
from hullflow.setsys import (
    ClosureConvention,
    GroundSet,
    SetSystem,
    Subset,
    complement_system,
    product_fibration,
)

G2 = GroundSet(2)
G3 = GroundSet(3)

A2 = SetSystem.of(G2, [[0], [0, 1]])


def endo(ground, *image):
    return EndoFunction.of(ground, image)


class TestCommutator:
    def test_identity_vanishes(self):
        ident = endo(G2, 0, 1)
        for z in range(4):
            assert not op_commutator(ident, A2, Subset(G2, z))

    def test_swap_on_empty_argument(self):
        swap = endo(G2, 1, 0)
        assert not op_commutator(swap, A2, Subset(G2, 0))

    def test_constant_moves(self):
        c0 = EndoFunction.constant(G2, 0)
        assert op_commutator(c0, A2, Subset.of(G2, [1])) == Subset.of(G2, [0])


class TestCommutativeCantor:
    def test_identity_always(self):
        ident = endo(G2, 0, 1)
        assert is_commutative_cantor(ident, A2)

    def test_swap_fails_here(self):
        assert not is_commutative_cantor(endo(G2, 1, 0), A2)

    def test_trivial_when_cosingletons_present(self):
        full = SetSystem.powerset(G2)
        for image in itertools.product(range(2), repeat=2):
            assert is_commutative_cantor(EndoFunction.of(G2, image), full)

    def test_trivially_commutative_flag(self):
        assert is_trivially_commutative(SetSystem.powerset(G2))
        assert not is_trivially_commutative(A2)
        cosingles = SetSystem.of(G3, [[1, 2], [0, 2], [0, 1], [0, 1, 2]])
        assert is_trivially_commutative(cosingles)


class TestMemberships:
    def test_constant_zero_two_sided(self):
        c0 = EndoFunction.constant(G2, 0)
        assert cantor_membership(c0, A2, True)
        assert cantor_membership(c0, A2, False)

    def test_swap_fails_plus(self):
        assert not cantor_membership(endo(G2, 1, 0), A2, True)

    def test_identity_both_sides_everywhere(self):
        from hullflow.verify import enum_systems

        for sys in enum_systems(2):
            ident = endo(G2, 0, 1)
            assert cantor_membership(ident, sys, True)
            assert cantor_membership(ident, sys, False)

    def test_inverse_swaps_sides(self):
        # a bijection sits in one side exactly when its inverse sits in the
        # other side
        from hullflow.verify import enum_systems

        for sys in enum_systems(3, covering_only=True):
            for image in itertools.permutations(range(3)):
                f = EndoFunction.of(G3, image)
                finv = EndoFunction.of(
                    G3, tuple(image.index(i) for i in range(3))
                )
                assert cantor_membership(f, sys, True) == cantor_membership(
                    finv, sys, False
                )


class TestPreservesUnfamily:
    def test_identity(self):
        assert preserves_unfamily(endo(G2, 0, 1), A2)

    def test_constant_zero(self):
        assert preserves_unfamily(EndoFunction.constant(G2, 0), A2)

    def test_constant_one_fails(self):
        assert not preserves_unfamily(EndoFunction.constant(G2, 1), A2)


class TestFibrationIntegrity:
    def test_identity(self):
        assert fibration_integrity(endo(G2, 0, 1), A2)

    def test_commuting_bijection_permutes_classes(self):
        t = SetSystem.of(G3, [[], [0], [1, 2], [0, 1, 2]])
        swap12 = endo(G3, 0, 2, 1)
        assert is_commutative_cantor(swap12, t)
        assert fibration_integrity(swap12, t)

    def test_mined_divergence_from_unfamily(self):
        # the two integrity readings come apart: the constant map keeps
        # complement-freeness but collapses fibration classes
        c0 = EndoFunction.constant(G2, 0)
        assert preserves_unfamily(c0, A2)
        assert not fibration_integrity(c0, A2)


class TestExplication:
    def test_identity_all_true(self):
        rec = explication_check(endo(G2, 0, 1), A2)
        assert rec.lhs and rec.rhs_system and rec.rhs_complement and rec.agree

    def test_bijections_on_two_points(self):
        rec_swap = explication_check(endo(G2, 1, 0), A2)
        assert rec_swap.lhs is False
        assert rec_swap.rhs_system is False
        assert rec_swap.rhs_complement is False
        assert rec_swap.agree

    def test_mined_constant_zero_disagreement(self):
        # the fixed disagreeing instance: not commutative, yet two-sided
        # over the system itself
        rec = explication_check(EndoFunction.constant(G2, 0), A2)
        assert rec.lhs is False
        assert rec.rhs_system is True
        assert not rec.agree

    def test_constant_zero_confirmed_by_direct_enumeration(self):
        # independent confirmation over all four subsets
        c0 = EndoFunction.constant(G2, 0)
        compl = complement_system(A2).masks
        disagreement = False
        for z in range(4):
            fam = [m for m in compl if m & z == z]
            cl_z = 0
            if fam:
                cl_z = fam[0]
                for m in fam[1:]:
                    cl_z &= m
            fz = c0.apply_mask(z)
            fam2 = [m for m in compl if m & fz == fz]
            cl_fz = 0
            if fam2:
                cl_fz = fam2[0]
                for m in fam2[1:]:
                    cl_fz &= m
            if c0.apply_mask(cl_z) != cl_fz:
                disagreement = True
        assert disagreement


class TestBijectionCoincidence:
    def test_exhaustive_three_points(self):
        from hullflow.verify import enum_systems

        for sys in enum_systems(3, covering_only=True):
            for image in itertools.permutations(range(3)):
                f = EndoFunction.of(G3, image)
                assert cantor_membership(f, sys, True) == cantor_membership(
                    f, sys, False
                )

    def test_randomized_four_points(self):
        import random

        rnd = random.Random(23)
        g4 = GroundSet(4)
        for _ in range(300):
            masks = [m for m in range(16) if rnd.random() < 0.5]
            masks.append(15)
            sys = SetSystem(g4, tuple(masks))
            image = list(range(4))
            rnd.shuffle(image)
            f = EndoFunction.of(g4, tuple(image))
            assert cantor_membership(f, sys, True) == cantor_membership(
                f, sys, False
            )


class TestPhaseChain:
    def test_identity_group(self):
        rec = phase_chain_check([Autobolism.identity(G3)], SetSystem.powerset(G3))
        assert rec.chain_holds and rec.commutes

    def test_swap_group_with_invariant_basis(self):
        swap01 = Autobolism.of(G3, [1, 0, 2])
        basis = SetSystem.of(G3, [[0, 1], [2]])
        rec = phase_chain_check([swap01], basis)
        assert rec.chain_holds
        assert all(rec.statements)

    def test_mined_chain_break(self):
        # system-side and complement-side memberships come apart for the
        # swap group on this covering
        sys = SetSystem.of(G3, [[0], [0, 1], [2]])
        swap01 = Autobolism.of(G3, [1, 0, 2])
        rec = phase_chain_check([swap01], sys)
        assert not rec.chain_holds
        assert rec.statements == (False, False, False, True, True)


class TestRepresentation:
    def test_powerset_representation_holds(self):
        assert product_fibration(SetSystem.powerset(G3)).representation_ok

    def test_mined_representation_failure(self):
        # the singleton partition already defeats the closed-set
        # representation: the class of the empty hull holds both extremes
        parts = SetSystem.of(G3, [[0], [1], [2]])
        fib = product_fibration(parts)
        assert not fib.representation_ok
        by_key = {fc.key: fc.member_masks for fc in fib.classes}
        assert by_key[0] == (0, 0b111)
