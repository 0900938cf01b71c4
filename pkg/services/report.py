"""
Classification report: decomposition tables, candidate lists and their
comparison with the reference lists.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from services.enumeration import (
    Pair,
    catalog_entry,
    group_pairs,
    multiset_wedge,
    pair_order,
    witnesses_by_pair,
)
from services.exclusion import reports_by_pair, surviving_pairs
from utils.models import (
    CandidateType,
    CharacterMultiset,
    ExclusionReport,
    ListComparison,
    Verdict,
)

logger = logging.getLogger(__name__)

Counts = Tuple[Tuple[str, int], ...]


def _pairs(group_id: str, *mn: Tuple[int, int]) -> List[Pair]:
    return [(group_id, m, n) for m, n in mn]


# (H, [m,n]) possibilities after the five admissibility conditions.
CONDITIONS_REFERENCE: List[Pair] = (
    _pairs("A5", (4, 6), (5, 4), (5, 6), (6, 4), (6, 5), (6, 6), (8, 1), (8, 4), (8, 5), (8, 6),
           (9, 4), (9, 5), (10, 1), (10, 4), (12, 1), (12, 2), (13, 1))
    + _pairs("PSL27", (6, 1), (6, 2), (6, 6), (6, 7), (6, 8), (7, 6), (7, 7), (8, 6),
             (12, 1), (12, 2), (13, 1))
    + _pairs("SL25", (8, 1), (8, 2), (8, 3), (8, 4), (8, 5), (8, 6), (12, 1), (12, 2), (13, 1))
    + _pairs("SL27", (8, 1))
    + _pairs("L32N23", (7, 7))
)

# Types admitting a non-trivial third lower central subquotient.
THIRD_LAYER_REFERENCE: List[Pair] = (
    _pairs("A5", (4, 6), (5, 4), (5, 5), (6, 4), (6, 6), (8, 1), (8, 4), (9, 4))
    + _pairs("PSL27", (6, 1), (6, 2), (6, 6))
)

# Types whose fourth lower central subquotient can be non-trivial; the
# reference is stated for h_max = 14, where the fourth layer first has room.
FOURTH_LAYER_REFERENCE: List[Pair] = _pairs("A5", (8, 1))

# Types left once the exclusion arguments have been applied.
FINAL_REFERENCE: List[Pair] = (
    _pairs("A5", (4, 6), (5, 6), (6, 4), (6, 5), (6, 6), (8, 6), (9, 5), (10, 1), (10, 4),
           (12, 1), (12, 2), (13, 1))
    + _pairs("PSL27", (7, 7), (8, 6))
)

# Printed exterior squares: (group, argument, printed decomposition).
PRINTED_WEDGES: List[Tuple[str, Counts, Counts]] = [
    ("A5", (("rho4", 1),), (("rho6", 1),)),
    ("A5", (("rho5", 1),), (("rho4", 1), ("rho6", 1))),
    ("A5", (("rho6", 1),), (("rho4", 1), ("rho5", 1), ("rho6", 1))),
    ("A5", (("rho4", 2),), (("1", 1), ("rho4", 1), ("rho5", 1), ("rho6", 3))),
    ("A5", (("rho5", 2),), (("1", 1), ("rho4", 4), ("rho5", 2), ("rho6", 3))),
    ("A5", (("rho6", 2),), (("1", 2), ("rho4", 4), ("rho5", 6), ("rho6", 3))),
    ("A5", (("rho4", 1), ("rho5", 1)), (("rho4", 5), ("rho5", 1), ("rho6", 3))),
    ("A5", (("rho4", 1), ("rho6", 1)), (("rho4", 3), ("rho5", 3), ("rho6", 3))),
    ("PSL27", (("tau6a", 1),), (("1", 2), ("tau6a", 1), ("tau7", 1))),
    ("PSL27", (("tau6b", 1),), (("1", 2), ("tau6b", 1), ("tau7", 1))),
    ("PSL27", (("tau7", 1),), (("tau6a", 6), ("tau7", 1), ("tau8", 1))),
    ("PSL27", (("tau8", 1),), (("tau6a", 6), ("tau7", 2), ("tau8", 1))),
    ("SL25", (("pi8a", 1),), (("1", 3), ("rho4hat", 1), ("rho5hat", 3), ("rho6hat", 1))),
    ("SL25", (("pi8b", 1),), (("1", 6), ("rho4hat", 4), ("rho6hat", 1))),
    ("SL27", (("xi8", 1),), (("1", 1), ("tau6bhat", 1), ("tau7hat", 2), ("tau8hat", 1))),
    ("SL28", (("psi7", 1),), (("psi21", 1),)),
    ("SL28", (("psi8", 1),), (("psi7", 1), ("psi21", 1))),
    ("L32N23", (("lambda7a", 1),), (("lambda7a", 1), ("lambda14", 1))),
    ("L32N23", (("lambda7b", 1),), (("lambda7b", 1), ("lambda14", 1))),
]

# Exterior squares claimed to carry trivial summands of rank h_max - m;
# False marks a claim that no trivial summand occurs.
TRIVIAL_SUMMAND_CLAIMS: List[Tuple[str, Counts, bool]] = [
    ("A5", (("rho4", 3),), True),
    ("A5", (("rho4", 2), ("rho5", 1)), True),
    ("PSL27", (("tau6a", 2),), True),
    ("PSL27", (("tau6a", 1), ("tau6b", 1)), True),
    ("PSL27", (("tau6b", 2),), True),
    ("PSL27", (("tau6a", 1), ("tau7", 1)), True),
    ("PSL27", (("tau6b", 1), ("tau7", 1)), True),
    ("SL25", (("pi8a", 1), ("rho4hat", 1)), True),
    ("SL25", (("pi8b", 1), ("rho4hat", 1)), True),
    ("SL25", (("pi8a", 1), ("rho5hat", 1)), True),
    ("SL25", (("pi8b", 1), ("rho5hat", 1)), True),
    ("A5", (("rho5", 1), ("rho6", 1)), False),
]


@dataclass
class WedgeRow:
    """Printed versus computed exterior square."""
    group_id: str
    argument: CharacterMultiset
    printed: CharacterMultiset
    computed: CharacterMultiset

    @property
    def matches(self) -> bool:
        return self.printed == self.computed

    @property
    def degree_consistent(self) -> bool:
        m = self.argument.degree
        return self.printed.degree == m * (m - 1) // 2


@dataclass
class TrivialClaim:
    """Claim about the trivial summand of an exterior square."""
    group_id: str
    argument: CharacterMultiset
    expects_trivial: bool
    required: int
    trivial_rank: int

    @property
    def holds(self) -> bool:
        if self.expects_trivial:
            return self.trivial_rank >= self.required
        return self.trivial_rank == 0


@dataclass
class ClassificationReport:
    """Everything the report renders."""
    h_max: int
    wedge_rows: List[WedgeRow]
    claims: List[TrivialClaim]
    conditions: ListComparison
    third_layer: ListComparison
    fourth_layer: ListComparison
    final: ListComparison
    candidates: List[CandidateType] = field(default_factory=list, repr=False)
    extended: List[CandidateType] = field(default_factory=list, repr=False)
    exclusions: List[ExclusionReport] = field(default_factory=list, repr=False)

    @property
    def comparisons(self) -> List[ListComparison]:
        return [self.conditions, self.third_layer, self.fourth_layer, self.final]

    @property
    def discrepancies(self) -> int:
        count = sum(not r.matches for r in self.wedge_rows) + sum(not c.holds for c in self.claims)
        for comparison in self.comparisons:
            count += len(comparison.missing) + len(comparison.surplus)
        return count


def _multiset(group_id: str, counts: Counts) -> CharacterMultiset:
    return catalog_entry(group_id).basis.multiset(dict(counts))


def wedge_table() -> List[WedgeRow]:
    rows = []
    for group_id, argument, printed in PRINTED_WEDGES:
        W = _multiset(group_id, argument)
        rows.append(WedgeRow(group_id, W, _multiset(group_id, printed), multiset_wedge(catalog_entry(group_id), W)))
    return rows


def trivial_summand_claims(h_max: int) -> List[TrivialClaim]:
    claims = []
    for group_id, argument, expects in TRIVIAL_SUMMAND_CLAIMS:
        W = _multiset(group_id, argument)
        wedge = multiset_wedge(catalog_entry(group_id), W)
        required = max(h_max - W.degree, 1) if expects else 0
        claims.append(TrivialClaim(group_id, W, expects, required, wedge.multiplicity("1")))
    return claims


def _restrict(reference: Sequence[Pair], h_max: int) -> List[Pair]:
    return [p for p in reference if p[1] + p[2] <= h_max]


def assemble_report(h_max: int, candidates: Sequence[CandidateType], extended: Sequence[CandidateType],
                    exclusions: Sequence[ExclusionReport]) -> ClassificationReport:
    """Tables and list comparisons for one run."""
    third = [c for c in extended if c.s_45 is None]
    fourth = [c for c in extended if c.s_45 is not None]
    report = ClassificationReport(
        h_max=h_max,
        wedge_rows=wedge_table(),
        claims=trivial_summand_claims(h_max),
        conditions=ListComparison("admissible types", group_pairs(candidates),
                                  _restrict(CONDITIONS_REFERENCE, h_max)),
        third_layer=ListComparison("third-layer types", group_pairs(third),
                                   _restrict(THIRD_LAYER_REFERENCE, h_max)),
        fourth_layer=ListComparison("fourth-layer types", group_pairs(fourth),
                                    FOURTH_LAYER_REFERENCE if h_max >= 14 else []),
        final=ListComparison("surviving types", surviving_pairs(exclusions),
                             _restrict(FINAL_REFERENCE, h_max)),
        candidates=list(candidates),
        extended=list(extended),
        exclusions=list(exclusions),
    )
    logger.info(f"Report assembled with {report.discrepancies} discrepancies")
    return report


def _pair_text(pair: Pair) -> str:
    group_id, m, n = pair
    return f"{group_id} [{m},{n}]"


def _wedge_lines(rows: Sequence[WedgeRow], machine: bool) -> List[str]:
    lines = []
    for r in rows:
        status = "match" if r.matches else ("mismatch" if r.degree_consistent else "mismatch degree-inconsistent")
        if machine:
            lines.append(f"wedge\t{r.group_id}\t{r.argument}\t{r.computed}\t{r.printed}\t{status}")
        else:
            lines.append(f"  {r.group_id:7s} wedge^2({r.argument}) = {r.computed}"
                         + ("" if r.matches else f"   [printed: {r.printed}; {status}]"))
    return lines


def _fourth_layer_notes(extended: Sequence[CandidateType]) -> Dict[Pair, List[CandidateType]]:
    notes: Dict[Pair, List[CandidateType]] = {}
    for c in extended:
        if c.s_45 is not None:
            notes.setdefault(c.pair, []).append(c)
    return notes


def render_report(report: ClassificationReport, machine: bool = False) -> str:
    """Text of the report; machine mode emits one tab-separated record per line."""
    if machine:
        return "\n".join(_machine_lines(report)) + "\n"
    out: List[str] = [f"Classification report (h_max = {report.h_max})", ""]
    out.append("Exterior squares")
    out.extend(_wedge_lines(report.wedge_rows, machine=False))
    out.append("")

    out.append("Admissible types")
    for pair, witnesses in witnesses_by_pair(report.candidates).items():
        out.append(f"  {_pair_text(pair)}: " + "; ".join(str(w.s_ab) + " / " + str(w.s_23) for w in witnesses))
    out.append("")

    out.append("Third-layer types")
    third = [c for c in report.extended if c.s_45 is None]
    notes = _fourth_layer_notes(report.extended)
    for pair in group_pairs(third):
        line = f"  {_pair_text(pair)}"
        if pair in notes:
            layers = sorted({(str(c.s_34), str(c.s_45)) for c in notes[pair]})
            line += "  fourth layer: " + "; ".join(f"3/4 = {a}, 4/5 = {b}" for a, b in layers)
        out.append(line)
    out.append("")

    out.append("Exclusions")
    for pair, reports in reports_by_pair(report.exclusions).items():
        survivors = [r for r in reports if r.verdict == Verdict.SURVIVES]
        if survivors:
            out.append(f"  {_pair_text(pair)} survives via " + "; ".join(str(r.candidate.s_ab) for r in survivors))
            continue
        first = reports[0]
        out.append(f"  {_pair_text(pair)} excluded by {first.rule.value} ({', '.join(first.facts)})")
        out.extend(f"      {step}" for step in first.witness_chain)
    out.append("")

    out.append("Surviving types")
    out.extend(f"  {_pair_text(p)}" for p in report.final.computed)
    out.append("")

    out.append("Discrepancies")
    out.extend(line for line in _wedge_lines([r for r in report.wedge_rows if not r.matches], machine=False))
    for c in report.claims:
        if not c.holds:
            want = f"trivial rank >= {c.required}" if c.expects_trivial else "no trivial summand"
            out.append(f"  {c.group_id:7s} wedge^2({c.argument}): trivial rank {c.trivial_rank}, claimed {want}")
    for comparison in report.comparisons:
        for pair in sorted(comparison.missing, key=pair_order):
            out.append(f"  {comparison.title}: {_pair_text(pair)} listed but not computed")
        for pair in sorted(comparison.surplus, key=pair_order):
            out.append(f"  {comparison.title}: {_pair_text(pair)} computed but not listed")
    if not report.discrepancies:
        out.append("  none")
    return "\n".join(out) + "\n"


def _machine_lines(report: ClassificationReport) -> List[str]:
    lines = _wedge_lines(report.wedge_rows, machine=True)
    for c in report.claims:
        lines.append(f"claim\t{c.group_id}\t{c.argument}\t{c.trivial_rank}\t{c.required}\t"
                     f"{'holds' if c.holds else 'fails'}")
    for c in report.candidates:
        lines.append(f"candidate\t{c.group_id}\t{c.m}\t{c.n}\t{c.s_ab}\t{c.s_23}")
    for c in report.extended:
        lines.append(f"layer\t{c.group_id}\t{c.m}\t{c.n}\t{c.s_34}\t{c.s_45 if c.s_45 is not None else '-'}")
    for r in report.exclusions:
        c = r.candidate
        rule = r.rule.value if r.rule else "-"
        lines.append(f"verdict\t{c.group_id}\t{c.m}\t{c.n}\t{c.s_ab}\t{c.s_23}\t{r.verdict.value}\t{rule}\t"
                     f"{','.join(r.facts) or '-'}")
    for comparison in report.comparisons:
        tag = comparison.title.replace(" ", "-")
        for pair in sorted(comparison.missing, key=pair_order):
            lines.append(f"missing\t{tag}\t{pair[0]}\t{pair[1]}\t{pair[2]}")
        for pair in sorted(comparison.surplus, key=pair_order):
            lines.append(f"surplus\t{tag}\t{pair[0]}\t{pair[1]}\t{pair[2]}")
    return lines
