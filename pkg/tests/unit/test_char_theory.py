"""
Unit tests for character tables, rational irreducibles and decompositions.
"""
import pytest

from services.char_theory import (
    character_table,
    decompose,
    exterior_square,
    faithful,
    frobenius_schur,
    inner_product,
    is_symplectic,
    kernel_subgroup,
    lie_power,
    rational_basis,
    regular_character,
    restriction_fixed_rank,
    scale,
    symmetric_square,
    symplectic_realizable,
    tensor,
)
from services.group_catalog import CATALOG_IDS, catalog_group
from services.group_core import sylow_subgroup
from utils.errors import ContractError, GroupMismatchError


def wedge(basis, counts):
    return decompose(exterior_square(basis.class_function(basis.multiset(counts))), basis).as_dict()


class TestCharacterTable:
    """Complex tables by the modular method."""

    def test_a5_table(self):
        table = character_table(catalog_group("A5").group)
        assert len(table) == 5
        assert sorted(chi.degree for chi in table.characters) == [1, 3, 3, 4, 5]
        assert all(frobenius_schur(chi) == 1 for chi in table.characters)

    def test_sl25_has_quaternionic_characters(self):
        table = character_table(catalog_group("SL25").group)
        assert any(frobenius_schur(chi) == -1 for chi in table.characters)

    @pytest.mark.parametrize("group_id", CATALOG_IDS)
    def test_row_orthogonality(self, group_id):
        chars = character_table(catalog_group(group_id).group).characters
        for i, chi in enumerate(chars):
            for j, psi in enumerate(chars):
                assert inner_product(chi, psi) == (1 if i == j else 0)

    @pytest.mark.parametrize("group_id", CATALOG_IDS)
    def test_squares_split(self, group_id):
        table = character_table(catalog_group(group_id).group)
        rational = [c.character for c in rational_basis(group_id).characters]
        for chi in list(table.characters) + rational:
            assert symmetric_square(chi) + exterior_square(chi) == tensor(chi, chi)


class TestRationalBasis:
    """Labelling and validation of the rational irreducibles."""

    def test_a5_labels(self):
        basis = rational_basis("A5")
        assert basis.labels() == ["1", "rho4", "rho5", "rho6"]
        assert basis.trivial.is_trivial()

    def test_psl27_labels(self):
        assert rational_basis("PSL27").labels() == ["1", "tau6a", "tau6b", "tau7", "tau8"]

    def test_sl25_inflated_and_faithful(self):
        basis = rational_basis("SL25")
        assert "rho4hat" in basis.labels()
        assert basis.get("rho4hat").inflated
        assert basis.get("pi8a").symplectic
        assert not faithful(basis.multiset({"rho4hat": 1}), basis)
        assert faithful(basis.multiset({"pi8a": 1}), basis)

    def test_unknown_label(self):
        with pytest.raises(ContractError):
            rational_basis("A5").get("rho7")


class TestDecompositions:
    """Exterior squares and friends over A5 and PSL(2,7)."""

    def setup_method(self):
        self.a5 = rational_basis("A5")

    def test_a5_wedges(self):
        assert wedge(self.a5, {"rho4": 1}) == {"rho6": 1}
        assert wedge(self.a5, {"rho5": 1}) == {"rho4": 1, "rho6": 1}
        assert wedge(self.a5, {"rho6": 1}) == {"rho4": 1, "rho5": 1, "rho6": 1}
        assert wedge(self.a5, {"rho4": 2}) == {"1": 1, "rho4": 1, "rho5": 1, "rho6": 3}
        assert wedge(self.a5, {"rho4": 1, "rho5": 1}) == {"rho4": 2, "rho5": 2, "rho6": 3}

    def test_psl27_wedges(self):
        basis = rational_basis("PSL27")
        assert wedge(basis, {"tau6a": 1}) == {"1": 1, "tau6a": 1, "tau8": 1}
        assert wedge(basis, {"tau6b": 1}) == {"tau7": 1, "tau8": 1}

    def test_psl27_lettering(self):
        basis = rational_basis("PSL27")
        assert basis.get("tau6a").indicator == 0
        assert len(basis.get("tau6a").constituents) == 2
        assert basis.get("tau6b").indicator == 1
        assert wedge(basis, {"tau7": 1}) == {"tau6a": 1, "tau7": 1, "tau8": 1}
        assert wedge(basis, {"tau8": 1}) == {"tau6a": 1, "tau7": 2, "tau8": 1}

    def test_sl27_inflated_lettering(self):
        basis = rational_basis("SL27")
        assert wedge(basis, {"xi8": 1})["tau6bhat"] == 2

    def test_tensor_splits_into_squares(self):
        chi = self.a5.class_function(self.a5.multiset({"rho4": 1}))
        assert decompose(tensor(chi, chi), self.a5).as_dict() == {"1": 1, "rho4": 1, "rho5": 1, "rho6": 1}
        assert decompose(symmetric_square(chi), self.a5).as_dict() == {"1": 1, "rho4": 1, "rho5": 1}

    def test_lie_cube(self):
        chi = self.a5.class_function(self.a5.multiset({"rho4": 1}))
        assert decompose(lie_power(chi, 3), self.a5).as_dict() == {"rho4": 1, "rho5": 2, "rho6": 1}
        with pytest.raises(ContractError):
            lie_power(chi, 4)

    def test_group_mismatch(self):
        psl = rational_basis("PSL27")
        with pytest.raises(GroupMismatchError):
            self.a5.class_function(psl.multiset({"tau7": 1}))


class TestCharacterPredicates:
    """Symplectic realizability and fixed ranks."""

    def test_symplectic_realizable(self):
        a5 = rational_basis("A5")
        assert not symplectic_realizable(a5.multiset({"rho4": 1}), a5)
        assert symplectic_realizable(a5.multiset({"rho4": 2}), a5)
        with pytest.raises(ContractError):
            symplectic_realizable(a5.multiset({}), a5)

    def test_fixed_rank_on_sylow_five(self):
        a5 = rational_basis("A5")
        S = sylow_subgroup(a5.group, 5)
        assert restriction_fixed_rank(a5.get("rho4").character, S) == 0
        assert restriction_fixed_rank(a5.get("rho5").character, S) == 1

    def test_regular_character(self):
        a5 = rational_basis("A5")
        regular = regular_character(a5.group)
        assert decompose(regular, a5).as_dict() == {"1": 1, "rho4": 4, "rho5": 5, "rho6": 3}

    def test_inner_product_and_scale(self):
        rho4 = rational_basis("A5").get("rho4").character
        assert inner_product(rho4, rho4) == 1
        assert inner_product(scale(rho4, 2), rho4) == 2

    def test_symplectic_flags(self):
        assert not is_symplectic(rational_basis("A5").get("rho4"))
        assert is_symplectic(rational_basis("SL25").get("pi12"))

    def test_inflated_kernel(self):
        rho4hat = rational_basis("SL25").get("rho4hat")
        assert rho4hat.inflated
        assert kernel_subgroup(rho4hat).order == 2
