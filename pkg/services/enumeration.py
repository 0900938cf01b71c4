"""
Candidate enumeration for perfect virtually nilpotent groups of small Hirsch length.

A candidate records how the finite quotient H acts on the first lower central
subquotients of the nilpotent radical N: S_ab on QN^ab and S_23 on the second
subquotient, optionally continued with S_34 and S_45. The five admissibility
conditions are:

1. S_ab is faithful.
2. m + n <= h_max and n >= 1.
3. S_23 is dominated by the decomposition of the exterior square of S_ab.
4. S_ab has no trivial summand.
5. If S_23 contains the trivial character, S_ab splits as V0 + V1 with V1
   symplectic-realizable of even degree >= 6 and V0 empty or of degree >= 4.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from config.settings import config
from services.char_theory import (
    RationalBasis,
    RationalCharacter,
    decompose,
    exterior_square,
    faithful,
    rational_basis,
    symplectic_realizable,
    tensor,
)
from services.group_catalog import CATALOG_IDS, CATALOG_SPECS
from utils.errors import CatalogMismatchError, ContractError, OutOfScopeError
from utils.models import CandidateType, CharacterMultiset

logger = logging.getLogger(__name__)

Pair = Tuple[str, int, int]

MIN_SYMPLECTIC_DEGREE = 6
MIN_COMPLEMENT_DEGREE = 4


@dataclass
class CatalogEntry:
    """Rational irreducibles of a catalog group with cached decompositions.

    Attributes:
        group_id: Catalog identifier
        basis: Rational irreducible characters
        wedges: Exterior square of each irreducible, by label
        tensors: Tensor product of each unordered pair of irreducibles
    """
    group_id: str
    basis: RationalBasis = field(repr=False)
    wedges: Dict[str, CharacterMultiset] = field(default_factory=dict, repr=False)
    tensors: Dict[Tuple[str, str], CharacterMultiset] = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return self.basis.group.order

    @property
    def characters(self) -> Tuple[RationalCharacter, ...]:
        return self.basis.characters

    def nontrivial(self) -> List[RationalCharacter]:
        return self.basis.nontrivial()

    def tensor_of(self, a: str, b: str) -> CharacterMultiset:
        key = (a, b) if (a, b) in self.tensors else (b, a)
        return self.tensors[key]

    def empty(self) -> CharacterMultiset:
        return self.basis.multiset({})


def _build_entry(group_id: str) -> CatalogEntry:
    basis = rational_basis(group_id)
    entry = CatalogEntry(group_id, basis)
    labels = basis.labels()
    for chi in basis.characters:
        entry.wedges[chi.label] = decompose(exterior_square(chi.character), basis)
    for i, a in enumerate(labels):
        for b in labels[i:]:
            product_chi = tensor(basis.get(a).character, basis.get(b).character)
            entry.tensors[(a, b)] = decompose(product_chi, basis)
    _validate_entry(entry)
    return entry


def _validate_entry(entry: CatalogEntry) -> None:
    spec = CATALOG_SPECS[entry.group_id]
    if spec.simple:
        degrees = sorted(c.degree for c in entry.nontrivial())
    else:
        degrees = sorted(c.degree for c in entry.characters
                         if c.kernel == frozenset({0}) and c.degree <= 10)
    if degrees != sorted(spec.expected_degrees):
        raise CatalogMismatchError(
            f"{entry.group_id}: catalog degrees {degrees}, expected {sorted(spec.expected_degrees)}"
        )


@lru_cache(maxsize=None)
def catalog_entry(group_id: str) -> CatalogEntry:
    if group_id not in CATALOG_SPECS:
        raise ContractError(f"Unknown catalog group '{group_id}'")
    entry = _build_entry(group_id)
    logger.info(f"Catalog entry {group_id}: {len(entry.characters)} rational irreducibles, "
                f"{len(entry.tensors)} cached tensor products")
    return entry


def build_catalog() -> List[CatalogEntry]:
    """Entries for the six catalog groups, in catalog order."""
    return [catalog_entry(group_id) for group_id in CATALOG_IDS]


def _accumulate(entry: CatalogEntry, terms: Sequence[Tuple[int, CharacterMultiset]]) -> CharacterMultiset:
    total: Counter = Counter()
    for k, W in terms:
        if k:
            for label, mult in W.counts:
                total[label] += k * mult
    return entry.basis.multiset(dict(total))


def multiset_wedge(entry: CatalogEntry, W: CharacterMultiset) -> CharacterMultiset:
    """Exterior square of sum k_i V_i from the cached irreducible data.

    wedge^2(sum k_i V_i) = sum k_i wedge^2 V_i + sum C(k_i, 2) V_i x V_i
    + sum_{i<j} k_i k_j V_i x V_j.
    """
    entry.basis._check(W)
    counts = list(W.counts)
    terms: List[Tuple[int, CharacterMultiset]] = []
    for i, (a, ka) in enumerate(counts):
        terms.append((ka, entry.wedges[a]))
        terms.append((ka * (ka - 1) // 2, entry.tensor_of(a, a)))
        for b, kb in counts[i + 1:]:
            terms.append((ka * kb, entry.tensor_of(a, b)))
    return _accumulate(entry, terms)


def multiset_tensor(entry: CatalogEntry, A: CharacterMultiset, B: CharacterMultiset) -> CharacterMultiset:
    entry.basis._check(A)
    entry.basis._check(B)
    return _accumulate(entry, [(ka * kb, entry.tensor_of(a, b)) for a, ka in A.counts for b, kb in B.counts])


def multisets_up_to(entry: CatalogEntry, labels: Sequence[str], max_degree: int,
                    min_degree: int = 1) -> Iterator[CharacterMultiset]:
    """All multisets over labels with min_degree <= degree <= max_degree."""
    degrees = entry.basis.degrees
    labels = list(labels)

    def walk(i: int, remaining: int, chosen: Dict[str, int]) -> Iterator[Dict[str, int]]:
        if i == len(labels):
            yield dict(chosen)
            return
        d = degrees[labels[i]]
        for k in range(remaining // d + 1):
            if k:
                chosen[labels[i]] = k
            yield from walk(i + 1, remaining - k * d, chosen)
        chosen.pop(labels[i], None)

    for counts in walk(0, max_degree, {}):
        W = entry.basis.multiset(counts)
        if W.degree >= min_degree:
            yield W


def sub_multisets(entry: CatalogEntry, W: CharacterMultiset, max_degree: Optional[int] = None,
                  min_degree: int = 1) -> Iterator[CharacterMultiset]:
    """Sub-multisets of W with degree in [min_degree, max_degree]."""
    labels = [label for label, _ in W.counts]
    ranges = [range(mult + 1) for _, mult in W.counts]
    upper = W.degree if max_degree is None else max_degree
    for choice in product(*ranges):
        V = entry.basis.multiset({label: k for label, k in zip(labels, choice) if k})
        if min_degree <= V.degree <= upper:
            yield V


def symplectic_splits(entry: CatalogEntry, S_ab: CharacterMultiset) -> List[Tuple[CharacterMultiset, CharacterMultiset]]:
    """Splits S_ab = V0 + V1 admitted by condition (5), as (V0, V1) pairs."""
    splits = []
    for V1 in sub_multisets(entry, S_ab, min_degree=MIN_SYMPLECTIC_DEGREE):
        if V1.degree % 2 or not symplectic_realizable(V1, entry.basis):
            continue
        V0 = S_ab.minus(V1)
        if V0.is_empty() or V0.degree >= MIN_COMPLEMENT_DEGREE:
            splits.append((V0, V1))
    return splits


def has_trivial(W: CharacterMultiset) -> bool:
    return W.multiplicity("1") > 0


def is_all_trivial(W: CharacterMultiset) -> bool:
    return not W.is_empty() and all(label == "1" for label, _ in W.counts)


def verify_conditions(candidate: CandidateType, h_max: int) -> List[int]:
    """Numbers of the admissibility conditions the candidate violates.

    Independent re-check of a candidate: the exterior square is recomputed
    from characters rather than taken from the catalog caches.
    """
    entry = catalog_entry(candidate.group_id)
    basis = entry.basis
    S_ab, S_23 = candidate.s_ab, candidate.s_23
    failed = []
    if S_ab.is_empty() or not faithful(S_ab, basis):
        failed.append(1)
    if candidate.hirsch_length > h_max or candidate.n < 1:
        failed.append(2)
    wedge = decompose(exterior_square(basis.class_function(S_ab)), basis) if not S_ab.is_empty() else entry.empty()
    if not S_23.dominated_by(wedge):
        failed.append(3)
    if has_trivial(S_ab):
        failed.append(4)
    if has_trivial(S_23) and not symplectic_splits(entry, S_ab):
        failed.append(5)
    return failed


def candidate_order(candidate: CandidateType) -> Tuple:
    """Catalog order, then m, then n, then witness."""
    return (CATALOG_IDS.index(candidate.group_id),) + candidate.sort_key()[1:]


def pair_order(pair: Pair) -> Tuple[int, int, int]:
    group_id, m, n = pair
    return (CATALOG_IDS.index(group_id) if group_id in CATALOG_IDS else len(CATALOG_IDS), m, n)


def _check_h_max(h_max: int) -> None:
    limit = config.enumeration_config.h_max_limit
    if h_max > limit:
        raise OutOfScopeError(f"h_max={h_max} exceeds the tabulated regime h_max <= {limit}")
    if h_max < 2:
        raise ContractError(f"h_max must be at least 2, got {h_max}")


def enumerate_types(h_max: Optional[int] = None) -> List[CandidateType]:
    """All (H, S_ab, S_23) satisfying conditions (1)-(5).

    Raises:
        OutOfScopeError: h_max above the tabulated regime
    """
    h_max = config.enumeration_config.h_max if h_max is None else h_max
    _check_h_max(h_max)
    candidates: List[CandidateType] = []
    for entry in build_catalog():
        labels = [c.label for c in entry.nontrivial()]
        for S_ab in multisets_up_to(entry, labels, h_max - 1):
            if not faithful(S_ab, entry.basis):
                continue
            wedge = multiset_wedge(entry, S_ab)
            splits = None
            for S_23 in sub_multisets(entry, wedge, max_degree=h_max - S_ab.degree):
                if has_trivial(S_23):
                    if splits is None:
                        splits = symplectic_splits(entry, S_ab)
                    if not splits:
                        continue
                candidates.append(CandidateType(entry.group_id, S_ab, S_23))
        logger.debug(f"{entry.group_id}: {sum(c.group_id == entry.group_id for c in candidates)} witnesses")
    candidates.sort(key=candidate_order)
    logger.info(f"Enumerated {len(candidates)} witnesses in {len(group_pairs(candidates))} pairs for h_max={h_max}")
    return candidates


def extend_types_gamma3(candidates: Sequence[CandidateType], h_max: Optional[int] = None) -> List[CandidateType]:
    """Third-layer continuations, followed by fourth-layer ones where room remains.

    S_34 is a non-empty sub-multiset of S_ab x S_23 and S_45 one of S_ab x S_34,
    with the total degree bounded by h_max.
    """
    h_max = config.enumeration_config.h_max if h_max is None else h_max
    _check_h_max(h_max)
    extended: List[CandidateType] = []
    for c in candidates:
        room = h_max - c.m - c.n
        if room < 1:
            continue
        entry = catalog_entry(c.group_id)
        product_23 = multiset_tensor(entry, c.s_ab, c.s_23)
        for S_34 in sub_multisets(entry, product_23, max_degree=room):
            third = CandidateType(c.group_id, c.s_ab, c.s_23, S_34)
            extended.append(third)
            extended.extend(fourth_layer(third, h_max))
    extended.sort(key=candidate_order)
    logger.info(f"Third-layer extension: {len(extended)} witnesses in {len(group_pairs(extended))} pairs")
    return extended


def fourth_layer(candidate: CandidateType, h_max: int) -> List[CandidateType]:
    if candidate.s_34 is None:
        raise ContractError("Fourth layer needs a third-layer candidate")
    room = h_max - candidate.hirsch_length
    if room < 1:
        return []
    entry = catalog_entry(candidate.group_id)
    product_34 = multiset_tensor(entry, candidate.s_ab, candidate.s_34)
    return [CandidateType(candidate.group_id, candidate.s_ab, candidate.s_23, candidate.s_34, S_45)
            for S_45 in sub_multisets(entry, product_34, max_degree=room)]


def group_pairs(candidates: Sequence[CandidateType]) -> List[Pair]:
    """Distinct (H, m, n) pairs in catalog order."""
    return sorted({c.pair for c in candidates}, key=pair_order)


def witnesses_by_pair(candidates: Sequence[CandidateType]) -> Dict[Pair, List[CandidateType]]:
    grouped: Dict[Pair, List[CandidateType]] = {}
    for c in sorted(candidates, key=candidate_order):
        grouped.setdefault(c.pair, []).append(c)
    return grouped
