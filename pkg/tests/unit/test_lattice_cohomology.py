"""
Unit tests for lattice actions, cyclic cohomology and the Bieberbach test.
"""
import random

import pytest

from services.group_catalog import catalog_group
from services.group_core import close_group, integer_matrix, permutation_from_cycles
from services.lattice_cohomology import (
    Cocycle2,
    CrystalData,
    LatticeAction,
    central_isolator_applies,
    coboundary,
    cyclic_cocycle,
    deleted_permutation_lattice,
    direct_sum,
    effective_action,
    h2_cyclic,
    is_bieberbach,
    norm_equation_solvable,
    permutation_lattice,
    prime_order_representatives,
    restriction_class,
    split_witness,
    torsion_search,
)
from utils.errors import ContractError, DegenerateInputError, NotCrystallographicError, ShapeError


def reflection_group(rows):
    return close_group([integer_matrix(rows)], name="C2")


class TestLatticeAction:
    """Construction and checks of integral actions."""

    def test_from_generators_rejects_non_action(self):
        G = reflection_group([[1, 0], [0, -1]])
        g = G.elements[G.generator_indices[0]]
        with pytest.raises(ShapeError):
            LatticeAction.from_generators(G, [g], [[[1, 1], [0, 1]]])

    def test_natural_action(self):
        G = reflection_group([[1, 0], [0, -1]])
        action = LatticeAction.natural(G)
        assert action.rank == 2
        assert effective_action(action)

    def test_trivial_action_is_not_effective(self):
        G = reflection_group([[-1]])
        assert not effective_action(LatticeAction.trivial(G, 1))

    def test_direct_sum_rank(self):
        a5 = catalog_group("A5").group
        total = direct_sum(permutation_lattice(a5), deleted_permutation_lattice(a5))
        assert total.rank == 9


class TestCyclicCohomology:
    """A^C / N A for cyclic groups."""

    def test_klein_bottle_h2(self):
        G = reflection_group([[1, 0], [0, -1]])
        c = G.generator_indices[0]
        assert h2_cyclic(LatticeAction.natural(G), c) == [2]

    def test_sign_action_has_no_h2(self):
        G = reflection_group([[-1]])
        assert h2_cyclic(LatticeAction.natural(G), G.generator_indices[0]) == []

    def test_non_cocycle_rejected(self):
        G = reflection_group([[-1]])
        c = G.generator_indices[0]
        with pytest.raises(ContractError):
            Cocycle2.from_entries(LatticeAction.natural(G), {(c, c): (1,)})

    def test_cyclic_cocycle_needs_fixed_vector(self):
        G = reflection_group([[1, 0], [0, -1]])
        with pytest.raises(ContractError):
            cyclic_cocycle(LatticeAction.natural(G), G.generator_indices[0], (0, 1))


class TestBieberbach:
    """Torsion-freeness of crystallographic extensions."""

    def setup_method(self):
        self.group = reflection_group([[1, 0], [0, -1]])
        self.action = LatticeAction.natural(self.group)
        self.c = self.group.generator_indices[0]

    def test_klein_bottle_is_torsion_free(self):
        crystal = CrystalData(self.action, cyclic_cocycle(self.action, self.c, (1, 0)), "klein")
        verdict = is_bieberbach(crystal)
        assert verdict.torsion_free
        assert verdict.classes[0].coordinates == (1,)
        assert not norm_equation_solvable(crystal, self.c)
        assert torsion_search(crystal, self.c) is None

    def test_split_extension_has_torsion(self):
        crystal = CrystalData(self.action, Cocycle2.zero(self.action))
        verdict = is_bieberbach(crystal)
        assert not verdict.torsion_free
        assert verdict.witness == self.c
        assert norm_equation_solvable(crystal, self.c)
        assert torsion_search(crystal, self.c) is not None

    def test_non_effective_action(self):
        action = LatticeAction.trivial(self.group, 2)
        with pytest.raises(NotCrystallographicError):
            is_bieberbach(CrystalData(action, Cocycle2.zero(action)))

    def test_rank_zero(self):
        action = LatticeAction.trivial(self.group, 0)
        with pytest.raises(DegenerateInputError):
            is_bieberbach(CrystalData(action, Cocycle2.zero(action)))


class TestExclusionHelpers:
    """Split witnesses and the central isolator test in A5."""

    def setup_method(self):
        self.a5 = catalog_group("A5").group

    def test_split_witness_on_deleted_lattice(self):
        N = split_witness(self.a5, 5, deleted_permutation_lattice(self.a5))
        assert N is not None and N.order == 10

    def test_no_witness_with_fixed_vectors(self):
        assert split_witness(self.a5, 5, permutation_lattice(self.a5)) is None
        assert split_witness(self.a5, 2, deleted_permutation_lattice(self.a5)) is None

    def test_central_isolator(self):
        g = permutation_from_cycles(5, [(1, 2, 3)])
        assert central_isolator_applies(5, 4, g, self.a5)
        assert not central_isolator_applies(5, 5, g, self.a5)


class TestRestrictionClass:
    """Restriction to prime-order cyclic subgroups."""

    def setup_method(self):
        self.group = reflection_group([[1, 0], [0, -1]])
        self.action = LatticeAction.natural(self.group)
        self.c = self.group.generator_indices[0]
        self.cocycle = cyclic_cocycle(self.action, self.c, (1, 0))

    def test_klein_class(self):
        cls = restriction_class(CrystalData(self.action, self.cocycle), self.c)
        assert cls.order == 2
        assert cls.factors == (2,)
        assert cls.coordinates == (1,)
        assert not cls.is_zero

    def test_coboundary_keeps_class(self):
        shifted = self.cocycle + coboundary(self.action, {self.c: (3, 7)})
        assert restriction_class(CrystalData(self.action, shifted), self.c).coordinates == (1,)

    def test_coboundary_needs_normalized_phi(self):
        with pytest.raises(ContractError):
            coboundary(self.action, {0: (1, 0)})

    def test_composite_order(self):
        G = close_group([integer_matrix([[0, -1], [1, 0]])], name="C4")
        action = LatticeAction.natural(G)
        with pytest.raises(ContractError):
            restriction_class(CrystalData(action, Cocycle2.zero(action)), G.generator_indices[0])


def _block(*blocks):
    n = sum(len(b) for b in blocks)
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            rows[offset + i][offset:offset + len(b)] = row
        offset += len(b)
    return rows


def _cycle_matrix(k):
    return [[1 if i == (j + 1) % k else 0 for j in range(k)] for i in range(k)]


# Cyclic actions given by one generating matrix, with a basis of its fixed vectors.
CYCLIC_ACTIONS = [
    ("C2 reflection", [[1, 0], [0, -1]], [(1, 0)]),
    ("C2 swap", [[0, 1], [1, 0]], [(1, 1)]),
    ("C3 permutation", _cycle_matrix(3), [(1, 1, 1)]),
    ("C4 rotation", _block([[0, -1], [1, 0]], [[1]]), [(0, 0, 1)]),
    ("C6 rotation", _block([[1, -1], [1, 0]], [[1]]), [(0, 0, 1)]),
    ("C5 permutation", _block(_cycle_matrix(5), [[1]]),
     [(1, 1, 1, 1, 1, 0), (0, 0, 0, 0, 0, 1)]),
]


class TestRandomCocycles:
    """The Smith-form restriction class against the norm-equation check."""

    def setup_method(self):
        self.rng = random.Random(20240601)

    def random_vector(self, rank):
        return tuple(self.rng.randint(-3, 3) for _ in range(rank))

    def random_coboundary(self, action):
        phi = {g: self.random_vector(action.rank) for g in range(1, action.group.order)}
        return coboundary(action, phi)

    def assert_agreement(self, crystal):
        reps = prime_order_representatives(crystal.group)
        solvable = {c: norm_equation_solvable(crystal, c) for c in reps}
        for c in reps:
            assert restriction_class(crystal, c).is_zero == solvable[c]
        assert is_bieberbach(crystal).torsion_free == (not any(solvable.values()))
        return len(reps)

    def test_cyclic_actions(self):
        checked = 0
        crystals = 0
        for name, rows, fixed in CYCLIC_ACTIONS:
            G = close_group([integer_matrix(rows)], name=name)
            action = LatticeAction.natural(G)
            c = G.generator_indices[0]
            for _ in range(20):
                weights = [self.rng.randint(-3, 3) for _ in fixed]
                a = tuple(sum(w * v[i] for w, v in zip(weights, fixed)) for i in range(action.rank))
                cocycle = cyclic_cocycle(action, c, a) + self.random_coboundary(action)
                checked += self.assert_agreement(CrystalData(action, cocycle, name))
                crystals += 1
        assert crystals >= 100
        assert checked >= crystals

    def test_a5_lattices(self):
        a5 = catalog_group("A5").group
        for action in (deleted_permutation_lattice(a5), permutation_lattice(a5)):
            crystal = CrystalData(action, self.random_coboundary(action), "A5 split")
            assert self.assert_agreement(crystal) >= 3
            assert not is_bieberbach(crystal).torsion_free
