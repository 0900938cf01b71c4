"""
Unit tests for free nilpotent groups and their automorphisms.
"""
import random

import pytest

from config.settings import PROJECT_ROOT
from services.char_theory import rational_basis
from services.group_catalog import catalog_group
from services.lattice_cohomology import deleted_permutation_lattice
from services.nilpotent import (
    EndoSpec,
    FNElement,
    PairingTensor,
    automorphism_from,
    automorphism_order,
    commutator,
    compose,
    hall_basis,
    isotypic_component,
    layer_action,
    pairing_radical,
    verify_endomorphisms,
    witt_count,
)
from storage.input_formats import load_endo_specs, parse_endo_specs
from utils.errors import AutomorphismError, ContractError, ShapeError

A5_SPEC = PROJECT_ROOT / "data" / "a5-f4.spec"


class TestHallBasis:
    """Basic commutators up to class 3."""

    def test_layer_ranks(self):
        basis = hall_basis(4, 3)
        assert basis.layer_ranks == (4, 6, 20)
        assert basis.dimension == 30

    def test_witt_numbers(self):
        assert [witt_count(4, k) for k in (1, 2, 3)] == [4, 6, 20]
        assert witt_count(2, 3) == 2

    def test_class_out_of_range(self):
        with pytest.raises(ContractError):
            hall_basis(2, 4)


class TestGroupLaw:
    """Malcev coordinates multiply through the Lie algebra."""

    def setup_method(self):
        self.basis = hall_basis(2, 3)
        self.x = FNElement.generator(self.basis, 0)
        self.y = FNElement.generator(self.basis, 1)

    def test_inverse(self):
        assert (self.x * self.x.inverse()).is_identity()

    def test_commutator_lives_in_layer_two(self):
        c = commutator(self.x, self.y)
        assert not c.is_identity()
        assert c.layer(1) == (0, 0)

    def test_associativity(self):
        xy = self.x * self.y
        assert (xy * self.x).coordinates == (self.x * (self.y * self.x)).coordinates

    def test_powers(self):
        assert (self.x ** 3).layer(1) == (3, 0)

    def test_group_axioms_on_random_triples(self):
        rng = random.Random(4242)
        basis = hall_basis(3, 3)
        one = FNElement.identity(basis)

        def element():
            return FNElement(basis, tuple(rng.randint(-3, 3) for _ in range(basis.dimension)))

        for _ in range(25):
            a, b, c = element(), element(), element()
            assert ((a * b) * c).coordinates == (a * (b * c)).coordinates
            assert (a * one).coordinates == a.coordinates
            assert (one * a).coordinates == a.coordinates
            assert (a * a.inverse()).is_identity()
            assert (a.inverse() * a).is_identity()


class TestAutomorphisms:
    """Induced maps and their orders."""

    def test_inversion_has_order_two(self):
        spec = EndoSpec("inv", ("x", "y"), (((0, -1),), ((1, -1),)))
        alpha = automorphism_from(spec, hall_basis(2, 3))
        assert alpha.accepted
        assert automorphism_order(alpha) == 2

    def test_doubling_is_rejected(self):
        spec = EndoSpec("double", ("x", "y"), (((0, 1), (0, 1)), ((1, 1),)))
        alpha = automorphism_from(spec, hall_basis(2, 3))
        assert not alpha.accepted
        assert alpha.determinant == 2
        with pytest.raises(AutomorphismError):
            alpha.require_accepted()

    def test_malformed_spec(self):
        with pytest.raises(ShapeError):
            EndoSpec("bad", ("x",), (((3, 1),),))

    def test_compose_swaps(self):
        swap = EndoSpec("swap", ("x", "y"), (((1, 1),), ((0, 1),)))
        alpha = automorphism_from(swap, hall_basis(2, 2))
        assert automorphism_order(compose(alpha, alpha)) == 1


class TestA5Action:
    """The shipped sigma and tau generate A5 on the class-3 quotient."""

    def setup_method(self):
        self.report = verify_endomorphisms(load_endo_specs(A5_SPEC), 3)

    def test_orders(self):
        assert self.report.orders["sigma"] == 2
        assert self.report.orders["tau"] == 3
        assert self.report.orders["sigmatau"] == 5

    def test_layer_characters(self):
        layers = {k: W.as_dict() for k, W in self.report.layer_decompositions.items()}
        assert layers[1] == {"rho4": 1}
        assert layers[2] == {"rho6": 1}
        assert layers[3] == {"rho4": 1, "rho5": 2, "rho6": 1}

    def test_k_quotient(self):
        assert self.report.k_hirsch_length == 14

    def test_no_identification_without_both(self):
        specs = parse_endo_specs("generators: x y\nendo inv\nx -> X\ny -> Y\n")
        report = verify_endomorphisms(specs, 2)
        assert report.theta is None
        assert report.layer_decompositions == {}


class TestLayersAndPairings:
    """Layer matrices, skew pairings and isotypic parts."""

    def test_swap_on_layers(self):
        swap = EndoSpec("swap", ("x", "y"), (((1, 1),), ((0, 1),)))
        alpha = automorphism_from(swap, hall_basis(2, 2))
        assert layer_action(alpha, 1).tolist() == [[0, 1], [1, 0]]
        assert layer_action(alpha, 2).tolist() == [[-1]]

    def test_free_pairing(self):
        T = PairingTensor.free(3)
        assert T.n == 3
        assert T.is_onto()
        assert pairing_radical(T).shape == (3, 0)

    def test_degenerate_pairing(self):
        T = PairingTensor.from_forms(3, [{(0, 1): 1}])
        radical = pairing_radical(T)
        assert radical.shape == (3, 1)
        assert [abs(int(x)) for x in radical[:, 0]] == [0, 0, 1]

    def test_pairing_must_be_skew(self):
        with pytest.raises(ContractError):
            PairingTensor(2, 1, (((1,), (0,)), ((0,), (0,))))

    def test_pairing_shape(self):
        with pytest.raises(ShapeError):
            PairingTensor(2, 1, (((0,),),))

    def test_isotypic_component(self):
        a5 = catalog_group("A5").group
        action = deleted_permutation_lattice(a5)
        basis = rational_basis("A5")
        assert isotypic_component(action, basis.get("rho4")).shape == (4, 4)
        assert isotypic_component(action, basis.get("rho5")).shape == (4, 0)
