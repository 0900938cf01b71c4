"""
Unit tests for data models.
"""
import pytest

from utils.models import (
    CandidateType,
    CharacterMultiset,
    Fact,
    FactTag,
    ListComparison,
    PipelineMessage,
)

A5_DEGREES = {"1": 1, "rho4": 4, "rho5": 5, "rho6": 6}


def multiset(**counts) -> CharacterMultiset:
    counts = {("1" if k == "one" else k): v for k, v in counts.items()}
    return CharacterMultiset.from_counts("A5", counts, A5_DEGREES)


class TestCharacterMultiset:
    """Multisets of rational characters."""

    def test_ordering_and_text(self):
        m = multiset(rho6=1, one=2, rho4=1)
        assert [l for l, _ in m.counts] == ["1", "rho4", "rho6"]
        assert m.text() == "2*1 + rho4 + rho6"
        assert str(m) == m.text()
        assert m.degree == 12

    def test_zero_counts_are_dropped(self):
        m = multiset(rho4=0, rho5=1)
        assert m.as_dict() == {"rho5": 1}
        assert multiset().is_empty()
        assert multiset().text() == "0"

    def test_arithmetic(self):
        a = multiset(rho4=1, rho5=2)
        b = multiset(rho5=1)
        assert a.plus(b).multiplicity("rho5") == 3
        assert a.minus(b).as_dict() == {"rho4": 1, "rho5": 1}
        assert b.dominated_by(a)
        assert not a.dominated_by(b)

    def test_minus_not_contained(self):
        with pytest.raises(ValueError):
            multiset(rho5=1).minus(multiset(rho4=1))

    def test_records(self):
        assert multiset(rho4=1, rho6=2).records() == ["rho4: 1", "rho6: 2"]

    def test_equality_is_structural(self):
        assert multiset(rho4=1, rho5=1) == multiset(rho5=1, rho4=1)


class TestCandidateType:
    """Candidate types and their witnesses."""

    def test_two_layer_candidate(self):
        c = CandidateType("A5", multiset(rho4=1), multiset(rho6=1))
        assert c.pair == ("A5", 4, 6)
        assert c.hirsch_length == 10
        assert c.describe() == "A5 [4,6] ab = rho4 ; 2/3 = rho6"

    def test_extended_candidate(self):
        c = CandidateType("A5", multiset(rho4=1), multiset(rho6=1), s_34=multiset(rho4=1))
        assert c.hirsch_length == 14
        assert c.describe().endswith("; 3/4 = rho4")


class TestFact:
    """Fact parameters."""

    def test_params(self):
        fact = Fact("f", FactTag.ORDER_BOUND, (("dim", "6"), ("primes", "2,3")), '"c"')
        assert fact.int_param("dim") == 6
        assert fact.int_list_param("primes") == [2, 3]
        assert fact.int_list_param("none") == []
        assert fact.param("none", "x") == "x"


class TestListComparison:
    """Computed against reference pair lists."""

    def test_missing_and_surplus(self):
        comparison = ListComparison(
            "t",
            computed=[("A5", 4, 6), ("A5", 8, 1)],
            reference=[("A5", 4, 6), ("A5", 5, 5)],
        )
        assert comparison.missing == [("A5", 5, 5)]
        assert comparison.surplus == [("A5", 8, 1)]
        assert not comparison.matches

    def test_matches(self):
        assert ListComparison("t", [("A5", 4, 6)], [("A5", 4, 6)]).matches


class TestPipelineMessage:
    """Message defaults."""

    def test_defaults(self):
        message = PipelineMessage(h_max=14)
        assert message.facts is None
        assert message.candidates == []
