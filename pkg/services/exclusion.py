"""
Exclusion engine: rules that rule out candidate witnesses using curated facts.

R1   torsion fact + central isolator: a p-torsion element lifts to a central
     element of the nilpotent radical and contradicts a non-trivial S_23.
R2   split witness: the Sylow p-subgroup C is cyclic and fixed-point-free on
     the module, so N_H(C) acts as the holonomy of a Bieberbach group whose
     dimension is ruled out by a non-existence fact. A cocycle-order fact
     gives a variant over odd subgroups with normalizer order coprime to
     the cocycle bound.
R3   dimension/order facts: semidirect splits in rank <= 3, GL(n, Q) order
     bounds and solvability of symplectic groups with prime-order elements.

A pair (H, [m,n]) is excluded only when every witness of it is excluded.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import primefactors

from services.char_theory import restriction_fixed_rank, symplectic_realizable
from services.enumeration import (
    CatalogEntry,
    Pair,
    catalog_entry,
    is_all_trivial,
    pair_order,
    sub_multisets,
    symplectic_splits,
    witnesses_by_pair,
)
from services.group_core import Subgroup, normalizer, sylow_subgroup
from services.lattice_cohomology import central_isolator_applies
from utils.models import (
    CandidateType,
    CharacterMultiset,
    ExclusionReport,
    ExclusionRule,
    Fact,
    FactTag,
    Verdict,
)

logger = logging.getLogger(__name__)

SEMIDIRECT_MAX_FIBER = 3


@dataclass(frozen=True)
class SylowData:
    """Cyclic Sylow subgroup with its normalizer."""
    p: int
    sylow: Subgroup
    normalizer: Subgroup


@lru_cache(maxsize=None)
def _sylow_data(group_id: str, p: int) -> Optional[SylowData]:
    G = catalog_entry(group_id).basis.group
    if G.order % p:
        return None
    C = sylow_subgroup(G, p)
    if not C.is_cyclic:
        return None
    return SylowData(p, C, normalizer(G, C))


def cyclic_sylows(group_id: str) -> List[SylowData]:
    G = catalog_entry(group_id).basis.group
    return [d for d in (_sylow_data(group_id, p) for p in primefactors(G.order)) if d is not None]


def fixed_rank(entry: CatalogEntry, W: CharacterMultiset, S: Subgroup) -> int:
    if W.is_empty():
        return 0
    return restriction_fixed_rank(entry.basis.class_function(W), S)


def _facts(facts: Sequence[Fact], tag: FactTag, group_id: Optional[str] = None) -> List[Fact]:
    return [f for f in facts if f.tag == tag and (group_id is None or f.param("group") == group_id)]


def _nonexistence_bound(facts: Sequence[Fact], N: Subgroup) -> Optional[Fact]:
    """Bieberbach non-existence fact whose holonomy order and shape match N."""
    best = None
    for f in _facts(facts, FactTag.BIEBERBACH_NONEXISTENCE):
        if f.int_param("order") != N.order:
            continue
        cyclic = f.param("cyclic")
        if cyclic is not None and (cyclic == "yes") != N.is_cyclic:
            continue
        if best is None or f.int_param("max_dim") > best.int_param("max_dim"):
            best = f
    return best


def _excluded(candidate: CandidateType, rule: ExclusionRule, facts: List[Fact], chain: List[str]) -> ExclusionReport:
    cited = [f"{f.fact_id}: {f.citation}" for f in facts]
    return ExclusionReport(candidate, Verdict.EXCLUDED, rule, [f.fact_id for f in facts], chain + cited)


def torsion_isolator_rule(candidate: CandidateType, facts: Sequence[Fact]) -> Optional[ExclusionReport]:
    """R1."""
    if all(label == "1" for label, _ in candidate.s_23.counts):
        return None
    entry = catalog_entry(candidate.group_id)
    G = entry.basis.group
    for fact in _facts(facts, FactTag.TORSION_EXISTENCE, candidate.group_id):
        p = fact.int_param("prime")
        dims = fact.int_list_param("dims")
        data = _sylow_data(candidate.group_id, p)
        if data is None:
            continue
        g = G.elements[data.sylow.cyclic_generator]
        if not central_isolator_applies(p, candidate.n, g, G):
            continue
        for V in sub_multisets(entry, candidate.s_ab):
            if V.degree not in dims:
                continue
            complement = candidate.s_ab.minus(V)
            if fixed_rank(entry, complement, data.sylow) == 0:
                chain = [
                    f"S_ab = {V} + ({complement}); complement has no C{p}-fixed vectors",
                    f"{p}-torsion lifts to the crystallographic quotient ({fact.fact_id})",
                    f"p={p} > n={candidate.n} and an element of order {p} normally generates {G.name}",
                    f"central isolator contradicts non-trivial S_23 = {candidate.s_23}",
                ]
                return _excluded(candidate, ExclusionRule.TORSION_ISOLATOR, [fact], chain)
    return None


def split_witness_rule(candidate: CandidateType, facts: Sequence[Fact]) -> Optional[ExclusionReport]:
    """R2 with the module S_ab, or the symplectic part V1 when S_23 is trivial."""
    entry = catalog_entry(candidate.group_id)
    # (module name, quotient carrying it as lattice, module, fiber rank)
    modules: List[Tuple[str, str, CharacterMultiset, int]] = [
        ("S_ab", "S/I(sqrt S) is crystallographic with lattice S_ab", candidate.s_ab, candidate.n)
    ]
    if is_all_trivial(candidate.s_23):
        for V0, V1 in symplectic_splits(entry, candidate.s_ab):
            fiber = V0.degree + candidate.n
            quotient = (f"S/gamma_3(sqrt S) modulo its rank-{fiber} centre (V0 + S_23) "
                        f"is crystallographic with lattice V1")
            modules.append((f"V1 = {V1} (V0 = {V0})", quotient, V1, fiber))
    for data in cyclic_sylows(candidate.group_id):
        fact = _nonexistence_bound(facts, data.normalizer)
        if fact is None:
            continue
        max_dim = fact.int_param("max_dim")
        for name, quotient, M, fiber in modules:
            if fiber > max_dim or fixed_rank(entry, M, data.sylow) != 0:
                continue
            chain = [
                f"Sylow {data.p}-subgroup C is cyclic and {name} has no C-fixed vectors",
                quotient,
                f"N_H(C) of order {data.normalizer.order} splits off there; its preimage in "
                f"S/gamma_3(sqrt S) is a Bieberbach group of dimension {fiber}",
                f"no {fiber}-dimensional Bieberbach group with this holonomy ({fact.fact_id}: max {max_dim})",
            ]
            return _excluded(candidate, ExclusionRule.SPLIT_WITNESS, [fact], chain)
    return None


def cocycle_order_rule(candidate: CandidateType, facts: Sequence[Fact]) -> Optional[ExclusionReport]:
    """R2 variant: extension cocycles of bounded order split over coprime odd subgroups."""
    for bound_fact in _facts(facts, FactTag.COCYCLE_ORDER, candidate.group_id):
        bound = bound_fact.int_param("bound")
        for data in cyclic_sylows(candidate.group_id):
            if data.p == 2 or gcd(data.normalizer.order, bound) != 1:
                continue
            fact = _nonexistence_bound(facts, data.normalizer)
            if fact is None or fact.int_param("max_dim") < candidate.n:
                continue
            chain = [
                f"extension cocycle has order dividing {bound} ({bound_fact.fact_id})",
                f"N_H(C{data.p}) of order {data.normalizer.order} is coprime to {bound} and splits",
                f"no {candidate.n}-dimensional Bieberbach group with this holonomy ({fact.fact_id})",
            ]
            return _excluded(candidate, ExclusionRule.SPLIT_WITNESS, [bound_fact, fact], chain)
    return None


def dimension_order_rule(candidate: CandidateType, facts: Sequence[Fact]) -> Optional[ExclusionReport]:
    """R3."""
    entry = catalog_entry(candidate.group_id)
    order = entry.order
    for fact in _facts(facts, FactTag.SEMIDIRECT_SPLIT, candidate.group_id):
        if candidate.m in fact.int_list_param("dims") and candidate.n <= SEMIDIRECT_MAX_FIBER:
            chain = [
                f"the group is a semidirect product in dimension {candidate.m} ({fact.fact_id})",
                f"H cannot act effectively on a rank {candidate.n} fiber",
            ]
            return _excluded(candidate, ExclusionRule.DIMENSION_ORDER, [fact], chain)
    for fact in _facts(facts, FactTag.ORDER_BOUND):
        dim, bound = fact.int_param("dim"), fact.int_param("bound")
        if candidate.m <= dim and bound % order:
            chain = [f"|H| = {order} does not divide {bound}, the order bound in GL({dim}, Q) ({fact.fact_id})"]
            return _excluded(candidate, ExclusionRule.DIMENSION_ORDER, [fact], chain)
    for fact in _facts(facts, FactTag.SP_SOLVABILITY):
        prime, dim = fact.int_param("prime"), fact.int_param("dim")
        if (order % prime == 0 and candidate.m <= dim
                and symplectic_realizable(candidate.s_ab, entry.basis)):
            chain = [f"finite subgroups of Sp({dim}, Q) of order divisible by {prime} are solvable ({fact.fact_id})"]
            return _excluded(candidate, ExclusionRule.DIMENSION_ORDER, [fact], chain)
    return None


RULES = (torsion_isolator_rule, split_witness_rule, cocycle_order_rule, dimension_order_rule)


def judge(candidate: CandidateType, facts: Sequence[Fact]) -> ExclusionReport:
    for rule in RULES:
        report = rule(candidate, facts)
        if report is not None:
            return report
    return ExclusionReport(candidate, Verdict.SURVIVES)


def apply_exclusions(candidates: Sequence[CandidateType], facts: Sequence[Fact]) -> List[ExclusionReport]:
    """One report per witness, in candidate order."""
    reports = [judge(c, facts) for c in candidates]
    excluded = sum(r.verdict == Verdict.EXCLUDED for r in reports)
    logger.info(f"Exclusion: {excluded} of {len(reports)} witnesses excluded with {len(facts)} facts")
    return reports


def reports_by_pair(reports: Sequence[ExclusionReport]) -> Dict[Pair, List[ExclusionReport]]:
    by_candidate = {id(r.candidate): r for r in reports}
    grouped = witnesses_by_pair([r.candidate for r in reports])
    return {pair: [by_candidate[id(c)] for c in witnesses] for pair, witnesses in grouped.items()}


def surviving_pairs(reports: Sequence[ExclusionReport]) -> List[Pair]:
    """Pairs with at least one surviving witness."""
    return sorted({r.candidate.pair for r in reports if r.verdict == Verdict.SURVIVES}, key=pair_order)


def excluded_pairs(reports: Sequence[ExclusionReport]) -> List[Pair]:
    survivors = set(surviving_pairs(reports))
    return sorted({r.candidate.pair for r in reports} - survivors, key=pair_order)
