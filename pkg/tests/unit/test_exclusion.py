"""
Unit tests for the exclusion engine.
"""
from services.enumeration import catalog_entry, enumerate_types
from services.exclusion import (
    apply_exclusions,
    cyclic_sylows,
    dimension_order_rule,
    excluded_pairs,
    judge,
    reports_by_pair,
    surviving_pairs,
    torsion_isolator_rule,
)
from storage.fact_table import default_facts, parse_facts
from utils.models import CandidateType, ExclusionRule, Verdict

SURVIVING_PAIRS = (
    [("A5", m, n) for m, n in ((4, 6), (5, 6), (6, 4), (6, 5), (6, 6), (8, 6), (9, 5),
                                (10, 1), (10, 4), (12, 1), (12, 2), (13, 1))]
    + [("PSL27", 7, 7), ("PSL27", 8, 6), ("SL25", 12, 1), ("SL25", 12, 2)]
)


class TestSylowData:
    """Cyclic Sylow subgroups of the catalog groups."""

    def test_a5(self):
        data = {d.p: d.normalizer.order for d in cyclic_sylows("A5")}
        assert data == {3: 6, 5: 10}

    def test_psl27_seven(self):
        data = {d.p: d.normalizer.order for d in cyclic_sylows("PSL27")}
        assert data[7] == 21
        assert 2 not in data


class TestRules:
    """Individual rules on hand-built witnesses."""

    def setup_method(self):
        self.facts = list(default_facts())
        self.basis = catalog_entry("A5").basis

    def candidate(self, s_ab, s_23, group_id="A5"):
        basis = catalog_entry(group_id).basis
        return CandidateType(group_id, basis.multiset(s_ab), basis.multiset(s_23))

    def test_isolator_excludes_five_four(self):
        report = torsion_isolator_rule(self.candidate({"rho5": 1}, {"rho4": 1}), self.facts)
        assert report is not None
        assert report.rule == ExclusionRule.TORSION_ISOLATOR
        assert report.facts == ["tor-a5"]
        assert len(report.witness_chain) == 5
        assert report.witness_chain[-1].startswith("tor-a5: ")
        assert "then $G$ has 5-torsion" in report.witness_chain[-1]

    def test_isolator_needs_prime_above_n(self):
        assert torsion_isolator_rule(self.candidate({"rho4": 1}, {"rho6": 1}), self.facts) is None

    def test_isolator_skips_trivial_second_layer(self):
        assert torsion_isolator_rule(self.candidate({"rho4": 2}, {"1": 1}), self.facts) is None

    def test_split_witness_mode_b(self):
        report = judge(self.candidate({"rho4": 2}, {"1": 1}), self.facts)
        assert report.verdict == Verdict.EXCLUDED
        assert report.rule == ExclusionRule.SPLIT_WITNESS
        assert report.facts == ["bb-d10"]

    def test_split_witness_goes_through_gamma3_quotient(self):
        report = judge(self.candidate({"rho4": 2}, {"1": 1}), self.facts)
        chain = "\n".join(report.witness_chain)
        assert "S/I(sqrt S) is crystallographic with lattice S_ab" in chain
        assert "S/gamma_3(sqrt S) is a Bieberbach group of dimension 1" in chain
        assert "holonomy mapping onto $D_{10}$" in report.witness_chain[-1]

    def test_semidirect_split(self):
        report = dimension_order_rule(self.candidate({"xi8": 1}, {"1": 1}, "SL27"), self.facts)
        assert report.rule == ExclusionRule.DIMENSION_ORDER
        assert report.facts == ["split-sl27"]

    def test_no_facts_no_exclusion(self):
        report = judge(self.candidate({"rho5": 1}, {"rho4": 1}), [])
        assert report.verdict == Verdict.SURVIVES
        assert report.rule is None

    def test_custom_order_bound(self):
        facts = list(parse_facts('gl4 | order-bound | dim=4; bound=1152 | "order bound"'))
        report = judge(self.candidate({"rho4": 1}, {"rho6": 1}), facts)
        assert report.rule == ExclusionRule.DIMENSION_ORDER
        assert report.facts == ["gl4"]


class TestApplyExclusions:
    """The default fact table over the full candidate list."""

    def setup_method(self):
        self.reports = apply_exclusions(enumerate_types(14), list(default_facts()))

    def test_survivors(self):
        assert surviving_pairs(self.reports) == SURVIVING_PAIRS

    def test_excluded_complement(self):
        excluded = set(excluded_pairs(self.reports))
        assert not excluded & set(SURVIVING_PAIRS)
        assert ("A5", 5, 4) in excluded
        assert ("L32N23", 7, 7) in excluded

    def test_pair_rules(self):
        grouped = reports_by_pair(self.reports)
        rules = {pair: {r.rule for r in reports} for pair, reports in grouped.items()}
        assert rules[("A5", 5, 4)] == {ExclusionRule.TORSION_ISOLATOR}
        assert rules[("A5", 8, 5)] == {ExclusionRule.SPLIT_WITNESS}
        assert rules[("SL27", 8, 6)] == {ExclusionRule.TORSION_ISOLATOR}
        assert rules[("SL27", 8, 1)] == {ExclusionRule.DIMENSION_ORDER}
        assert rules[("L32N23", 7, 7)] == {ExclusionRule.SPLIT_WITNESS}

    def test_cocycle_variant_cites_both_facts(self):
        grouped = reports_by_pair(self.reports)
        facts = grouped[("L32N23", 7, 7)][0].facts
        assert facts[0] == "cocycle-l32n23"
        assert len(facts) == 2

    def test_one_report_per_witness(self):
        assert len(self.reports) == len(enumerate_types(14))
