"""
Data models shared by services, agents and the CLI.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


class FactTag(Enum):
    """Kinds of curated external facts."""
    TORSION_EXISTENCE = "torsion-existence"
    BIEBERBACH_NONEXISTENCE = "bieberbach-nonexistence"
    SP_SOLVABILITY = "sp-solvability"
    ORDER_BOUND = "order-bound"
    COCYCLE_ORDER = "cocycle-order"
    SEMIDIRECT_SPLIT = "semidirect-split"


class Verdict(Enum):
    """Outcome of the exclusion engine for a candidate."""
    EXCLUDED = "excluded"
    SURVIVES = "survives"


class ExclusionRule(Enum):
    """Exclusion rules applied by the engine."""
    TORSION_ISOLATOR = "R1"
    SPLIT_WITNESS = "R2"
    DIMENSION_ORDER = "R3"


@dataclass(frozen=True)
class Fact:
    """Curated external fact with provenance."""
    fact_id: str
    tag: FactTag
    params: Tuple[Tuple[str, str], ...]
    citation: str

    def param(self, key: str, default: Optional[str] = None) -> Optional[str]:
        for k, v in self.params:
            if k == key:
                return v
        return default

    def int_param(self, key: str, default: Optional[int] = None) -> Optional[int]:
        value = self.param(key)
        return default if value is None else int(value)

    def int_list_param(self, key: str) -> List[int]:
        value = self.param(key)
        if not value:
            return []
        return [int(v) for v in value.split(",")]


@dataclass(frozen=True)
class CharacterMultiset:
    """Multiset of rational irreducible characters of one catalog group.

    counts and degrees are tuples of (label, value) pairs sorted with the
    trivial character first, then by degree and label.
    """
    group_id: str
    counts: Tuple[Tuple[str, int], ...]
    degrees: Tuple[Tuple[str, int], ...]

    @classmethod
    def from_counts(cls, group_id: str, counts: Dict[str, int],
                    degrees: Dict[str, int]) -> "CharacterMultiset":
        labels = sorted((l for l, c in counts.items() if c > 0),
                        key=lambda l: (l != "1", degrees[l], l))
        return cls(
            group_id=group_id,
            counts=tuple((l, counts[l]) for l in labels),
            degrees=tuple((l, degrees[l]) for l in labels),
        )

    @property
    def degree(self) -> int:
        deg = dict(self.degrees)
        return sum(c * deg[l] for l, c in self.counts)

    def multiplicity(self, label: str) -> int:
        return dict(self.counts).get(label, 0)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.counts)

    def degree_of(self, label: str) -> int:
        return dict(self.degrees)[label]

    def is_empty(self) -> bool:
        return not self.counts

    def dominated_by(self, other: "CharacterMultiset") -> bool:
        """True if every multiplicity is at most the one in other."""
        return all(c <= other.multiplicity(l) for l, c in self.counts)

    def plus(self, other: "CharacterMultiset") -> "CharacterMultiset":
        counts = self.as_dict()
        for l, c in other.counts:
            counts[l] = counts.get(l, 0) + c
        degrees = dict(self.degrees)
        degrees.update(dict(other.degrees))
        return CharacterMultiset.from_counts(self.group_id, counts, degrees)

    def minus(self, other: "CharacterMultiset") -> "CharacterMultiset":
        counts = self.as_dict()
        for l, c in other.counts:
            counts[l] = counts.get(l, 0) - c
        if any(c < 0 for c in counts.values()):
            raise ValueError(f"{other} is not contained in {self}")
        return CharacterMultiset.from_counts(self.group_id, counts, dict(self.degrees))

    def text(self) -> str:
        if not self.counts:
            return "0"
        return " + ".join(l if c == 1 else f"{c}*{l}" for l, c in self.counts)

    def records(self) -> List[str]:
        return [f"{l}: {c}" for l, c in self.counts]

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class PPartBound:
    """Bound e_n(p) on the exponent of p in |G| for finite G < GL(n,Q)."""
    n: int
    p: int
    exponent_bound: int


@dataclass(frozen=True)
class SimpleCandidate:
    """Minimal simple group family member with its forced cyclic orders."""
    family: str
    parameter: int
    name: str
    cyclic_orders: Tuple[int, ...]
    min_dimension: int
    has_order_13: bool


@dataclass(frozen=True)
class CandidateType:
    """An (H, [m,n]) type with its decomposition witness."""
    group_id: str
    s_ab: CharacterMultiset
    s_23: CharacterMultiset
    s_34: Optional[CharacterMultiset] = None
    s_45: Optional[CharacterMultiset] = None

    @property
    def m(self) -> int:
        return self.s_ab.degree

    @property
    def n(self) -> int:
        return self.s_23.degree

    @property
    def pair(self) -> Tuple[str, int, int]:
        return (self.group_id, self.m, self.n)

    @property
    def hirsch_length(self) -> int:
        total = self.m + self.n
        for layer in (self.s_34, self.s_45):
            if layer is not None:
                total += layer.degree
        return total

    def sort_key(self) -> Tuple:
        return (self.group_id, self.m, self.n, self.s_ab.counts, self.s_23.counts,
                self.s_34.counts if self.s_34 else (), self.s_45.counts if self.s_45 else ())

    def describe(self) -> str:
        text = f"{self.group_id} [{self.m},{self.n}] ab = {self.s_ab} ; 2/3 = {self.s_23}"
        if self.s_34 is not None:
            text += f" ; 3/4 = {self.s_34}"
        if self.s_45 is not None:
            text += f" ; 4/5 = {self.s_45}"
        return text


@dataclass
class ExclusionReport:
    """Result of the exclusion engine for one candidate witness."""
    candidate: CandidateType
    verdict: Verdict
    rule: Optional[ExclusionRule] = None
    facts: List[str] = field(default_factory=list)
    witness_chain: List[str] = field(default_factory=list)


@dataclass
class ListComparison:
    """Pair-level comparison of a computed list against a reference list."""
    title: str
    computed: List[Tuple[str, int, int]]
    reference: List[Tuple[str, int, int]]

    @property
    def missing(self) -> List[Tuple[str, int, int]]:
        return sorted(set(self.reference) - set(self.computed))

    @property
    def surplus(self) -> List[Tuple[str, int, int]]:
        return sorted(set(self.computed) - set(self.reference))

    @property
    def matches(self) -> bool:
        return not self.missing and not self.surplus


@dataclass
class PipelineMessage:
    """Message passed between pipeline agents.

    facts holds the loaded fact list; facts_path is only read when it is None.
    """
    h_max: int
    facts_path: Optional[str] = None
    facts: Optional[List[Fact]] = None
    machine: bool = False
    candidates: List[CandidateType] = field(default_factory=list)
    extended: List[CandidateType] = field(default_factory=list)
    reports: List[ExclusionReport] = field(default_factory=list)
    report: Any = None
    report_text: str = ""


@dataclass
class AgentResponse:
    """Standard agent response."""
    success: bool
    message: PipelineMessage
    error: Optional[str] = None
    execution_time: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)
