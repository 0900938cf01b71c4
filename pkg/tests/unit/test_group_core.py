"""
Unit tests for the finite group engine and the group catalog.
"""
import pytest

from services.group_catalog import CATALOG_IDS, CATALOG_SPECS, catalog_group, shipped_generators
from services.group_core import (
    ElementKind,
    close_group,
    conjugacy_classes,
    derived_subgroup,
    exponent,
    field_matrix,
    integer_matrix,
    inverse,
    is_perfect,
    multiply,
    normal_closure,
    normalizer,
    normally_generates,
    permutation,
    permutation_from_cycles,
    quotient_classes,
    sylow_subgroup,
)
from utils.errors import ContractError, ShapeError, SizeLimitError


class TestElements:
    """Element constructors and arithmetic."""

    def test_cycles_are_one_based(self):
        g = permutation_from_cycles(4, [(1, 2, 3)])
        assert g.data == (1, 2, 0, 3)
        assert str(g) == "(1 2 3)"

    def test_rejects_non_permutation(self):
        with pytest.raises(ShapeError):
            permutation([0, 0, 1])

    def test_inverse(self):
        g = permutation_from_cycles(5, [(1, 2, 3, 4, 5)])
        one = multiply(g, inverse(g))
        assert one.data == tuple(range(5))

    def test_singular_field_matrix(self):
        with pytest.raises(ShapeError):
            field_matrix(5, [[1, 2], [2, 4]])

    def test_integer_matrix_must_be_unimodular(self):
        assert integer_matrix([[1, 1], [0, 1]]).kind is ElementKind.INTEGER_MATRIX
        with pytest.raises(ShapeError):
            integer_matrix([[2, 0], [0, 1]])

    def test_mixed_degrees(self):
        with pytest.raises(ShapeError):
            close_group([permutation_from_cycles(3, [(1, 2)]), permutation_from_cycles(4, [(1, 2)])])


class TestClosure:
    """Breadth-first closure and derived data."""

    def setup_method(self):
        self.s3 = close_group([permutation_from_cycles(3, [(1, 2, 3)]), permutation_from_cycles(3, [(1, 2)])])

    def test_order_and_classes(self):
        assert self.s3.order == 6
        assert sorted(c.size for c in self.s3.classes) == [1, 2, 3]
        assert self.s3.classes[0].rep_index == 0

    def test_element_orders(self):
        assert sorted(self.s3.element_orders) == [1, 2, 2, 2, 3, 3]

    def test_size_cap(self):
        gens = [permutation_from_cycles(6, [(1, 2, 3, 4, 5, 6)]), permutation_from_cycles(6, [(1, 2)])]
        with pytest.raises(SizeLimitError):
            close_group(gens, cap=100)

    def test_generator_order_does_not_matter(self):
        a = permutation_from_cycles(3, [(1, 2, 3)])
        b = permutation_from_cycles(3, [(1, 2)])
        assert close_group([a, b]).elements == close_group([b, a]).elements

    def test_empty_generators_need_identity(self):
        with pytest.raises(ShapeError):
            close_group([])

    def test_s3_not_perfect(self):
        assert not is_perfect(self.s3)

    def test_derived_subgroup_and_exponent(self):
        assert derived_subgroup(self.s3).order == 3
        assert exponent(self.s3) == 6
        assert conjugacy_classes(self.s3) == self.s3.classes

    def test_centralizers(self):
        t = permutation_from_cycles(3, [(1, 2)])
        assert self.s3.centralizer_order(t) == 2
        assert self.s3.classes[self.s3.class_of(t)].size == 3

    def test_abelian_groups(self):
        c3 = close_group([permutation_from_cycles(3, [(1, 2, 3)])])
        assert c3.is_abelian
        assert not self.s3.is_abelian
        assert all(c.size == 1 for c in c3.classes)


class TestSubgroups:
    """Sylow subgroups, normalizers and normal closures in A5."""

    def setup_method(self):
        self.a5 = catalog_group("A5").group

    def test_sylow_five(self):
        S = sylow_subgroup(self.a5, 5)
        assert S.order == 5
        assert S.is_cyclic
        assert normalizer(self.a5, S).order == 10

    def test_sylow_two_is_klein(self):
        S = sylow_subgroup(self.a5, 2)
        assert S.order == 4
        assert not S.is_cyclic

    def test_simple_group_normally_generated(self):
        g = permutation_from_cycles(5, [(1, 2, 3)])
        assert normally_generates(g, self.a5)
        assert normal_closure(g, self.a5).is_normal()


class TestCatalog:
    """The shipped catalog groups."""

    @pytest.mark.parametrize("group_id", CATALOG_IDS)
    def test_orders_match(self, group_id):
        entry = catalog_group(group_id)
        assert entry.group.order == CATALOG_SPECS[group_id].order
        assert is_perfect(entry.group)

    @pytest.mark.parametrize("group_id,classes", [("A5", 5), ("PSL27", 6), ("SL25", 9), ("SL27", 11), ("SL28", 9)])
    def test_class_counts(self, group_id, classes):
        assert len(catalog_group(group_id).group.classes) == classes

    def test_centers(self):
        assert catalog_group("SL25").kernel.order == 2
        assert catalog_group("SL27").kernel.order == 2
        assert catalog_group("A5").kernel is None

    def test_sl28_exponent(self):
        assert exponent(catalog_group("SL28").group) == 126

    def test_central_involution_in_sl25(self):
        G = catalog_group("SL25").group
        minus_one = field_matrix(5, [[4, 0], [0, 4]])
        assert normal_closure(minus_one, G).order == 2
        assert not normally_generates(minus_one, G)

    def test_l32n23_quotient(self):
        entry = catalog_group("L32N23")
        assert entry.kernel.order == 8
        assert len(quotient_classes(entry.group, entry.kernel)) == 6

    def test_shipped_generators(self):
        gens = shipped_generators("A5")
        assert [str(g) for g in gens] == ["(1 2 3 4 5)", "(1 2 3)"]

    def test_unknown_group(self):
        with pytest.raises(ContractError):
            catalog_group("M11")
