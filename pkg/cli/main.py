"""
Command-line front end.

Every command prints deterministic text on stdout; --machine switches to
tab-separated line records. Toolkit errors exit with status 1 and a
diagnostic on stderr; usage errors exit with status 2.
"""
import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from config.settings import config
from services.bounds import e_bound, e_bound_table, filter_minimal_simple, gcd_sl_orders
from services.char_theory import decompose, exterior_square, lie_power, symmetric_square, tensor
from services.enumeration import catalog_entry, enumerate_types, extend_types_gamma3, witnesses_by_pair
from services.exclusion import apply_exclusions, reports_by_pair
from services.group_catalog import CATALOG_IDS, CATALOG_SPECS
from services.lattice_cohomology import is_bieberbach
from services.nilpotent import verify_endomorphisms
from services.workflow import ClassificationPipeline
from storage.fact_table import load_facts
from storage.input_formats import load_crystal, load_endo_specs
from utils.errors import ContractError, ToolkitError
from utils.models import CharacterMultiset, Verdict

logger = logging.getLogger(__name__)

OPERATIONS = ("wedge", "sym", "lie3", "tensor")


class Output:
    """Collects stdout lines; machine mode prints records, text mode prints prose."""

    def __init__(self, stream: TextIO, machine: bool):
        self.stream = stream
        self.machine = machine

    def line(self, text: str = "") -> None:
        self.stream.write(text + "\n")

    def record(self, *fields) -> None:
        self.line("\t".join(str(f) for f in fields))


def parse_multiset(group_id: str, tokens: Sequence[str]) -> CharacterMultiset:
    """'2*rho4 rho5' style tokens as a multiset over the group's rational irreducibles."""
    entry = catalog_entry(group_id)
    counts: Dict[str, int] = {}
    for token in tokens:
        mult, label = 1, token
        if "*" in token:
            head, label = token.split("*", 1)
            if not head.isdigit():
                raise ContractError(f"Bad multiplicity in '{token}'")
            mult = int(head)
        entry.basis.get(label)
        counts[label] = counts.get(label, 0) + mult
    if not any(counts.values()):
        raise ContractError("Empty multiset")
    return entry.basis.multiset(counts)


def _check_group(group_id: str) -> str:
    if group_id not in CATALOG_SPECS:
        raise ContractError(f"Unknown group '{group_id}'; expected one of {', '.join(CATALOG_IDS)}")
    return group_id


def cmd_catalog(args, out: Output) -> None:
    groups = [_check_group(args.group)] if args.group else list(CATALOG_IDS)
    for group_id in groups:
        entry = catalog_entry(group_id)
        spec = CATALOG_SPECS[group_id]
        G = entry.basis.group
        if out.machine:
            out.record("group", group_id, spec.title, G.order, len(G.classes))
        else:
            out.line(f"{group_id} = {spec.title}: order {G.order}, {len(G.classes)} classes")
        for chi in entry.characters:
            faithful_flag = chi.kernel == frozenset({0})
            if out.machine:
                out.record("character", group_id, chi.label, chi.degree, int(faithful_flag),
                           int(chi.symplectic), chi.schur_multiplier)
            else:
                flags = [f for f, on in (("faithful", faithful_flag), ("symplectic", chi.symplectic),
                                         (f"schur {chi.schur_multiplier}", chi.schur_multiplier > 1)) if on]
                out.line(f"  {chi.label:10s} degree {chi.degree:3d}  {' '.join(flags)}".rstrip())


def cmd_chartab(args, out: Output) -> None:
    entry = catalog_entry(_check_group(args.group))
    G = entry.basis.group
    if out.machine:
        out.record("classes", *(f"{c.order}:{c.size}" for c in G.classes))
        for chi in entry.characters:
            out.record("row", chi.label, *chi.values)
        return
    header = ["order"] + [str(c.order) for c in G.classes]
    sizes = ["size"] + [str(c.size) for c in G.classes]
    rows = [header, sizes] + [[chi.label] + [str(v) for v in chi.values] for chi in entry.characters]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        out.line("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip())


def _emit_decomposition(out: Output, op: str, group_id: str, argument: str, result: CharacterMultiset) -> None:
    if out.machine:
        out.record(op, group_id, argument, result.degree, *result.records())
    else:
        out.line(f"{op}({argument}) = {result}   [degree {result.degree}]")


def cmd_wedge(args, out: Output) -> None:
    group_id = _check_group(args.group)
    W = parse_multiset(group_id, args.labels)
    basis = catalog_entry(group_id).basis
    result = decompose(exterior_square(basis.class_function(W)), basis)
    _emit_decomposition(out, "wedge", group_id, str(W), result)


def cmd_decompose(args, out: Output) -> None:
    group_id = _check_group(args.group)
    basis = catalog_entry(group_id).basis
    labels = list(args.labels)
    if args.op == "tensor":
        if "x" in labels:
            split = labels.index("x")
            A, B = parse_multiset(group_id, labels[:split]), parse_multiset(group_id, labels[split + 1:])
        else:
            A = B = parse_multiset(group_id, labels)
        phi = tensor(basis.class_function(A), basis.class_function(B))
        argument = f"{A} x {B}"
    else:
        W = parse_multiset(group_id, labels)
        chi = basis.class_function(W)
        phi = {"wedge": exterior_square, "sym": symmetric_square}.get(args.op, lambda c: lie_power(c, 3))(chi)
        argument = str(W)
    _emit_decomposition(out, args.op, group_id, argument, decompose(phi, basis))


def cmd_bounds(args, out: Output) -> None:
    values = args.values
    if args.kind == "e":
        n, p = _int_args(values, 2, "bounds e n p")
        bound = e_bound(n, p)
        if out.machine:
            out.record("e", n, p, bound)
        else:
            out.line(f"e_{n}({p}) = {bound}")
    elif args.kind == "table":
        _int_args(values, 0, "bounds table")
        rows = e_bound_table()
        if out.machine:
            for r in rows:
                out.record("e", r.n, r.p, r.exponent_bound)
            return
        primes = sorted({r.p for r in rows})
        out.line("n    " + " ".join(f"{p:3d}" for p in primes))
        for n in sorted({r.n for r in rows}):
            cells = {r.p: r.exponent_bound for r in rows if r.n == n}
            out.line(f"{n:<4d} " + " ".join(f"{cells[p]:3d}" for p in primes))
    elif args.kind == "gcd":
        d, m, count = _int_args(values, 3, "bounds gcd d m count")
        report = gcd_sl_orders(d, m, count)
        if out.machine:
            out.record("gcd", d, m, count, report.gcd, int(report.stable))
        else:
            out.line(f"gcd |SL({d},p)| over {count} primes > {m}: {report.gcd}"
                     + ("" if report.stable else f" (first half gave {report.half_gcd})"))
    else:
        (n,) = _int_args(values, 1, "bounds simple n")
        for c in filter_minimal_simple(n):
            orders = ",".join(str(o) for o in c.cyclic_orders)
            if out.machine:
                out.record("simple", n, c.name, c.min_dimension, int(c.has_order_13), orders)
            else:
                flag = "  order 13" if c.has_order_13 else ""
                out.line(f"{c.name:10s} min dim {c.min_dimension:2d}  cyclic orders {orders}{flag}")


def _int_args(values: Sequence[str], count: int, usage: str) -> List[int]:
    if len(values) != count:
        raise UsageError(f"usage: {usage}")
    try:
        return [int(v) for v in values]
    except ValueError:
        raise UsageError(f"usage: {usage} (integers expected)")


def cmd_enumerate(args, out: Output) -> None:
    candidates = enumerate_types(args.hmax)
    extended = extend_types_gamma3(candidates, args.hmax) if args.layers else []
    for pair, witnesses in witnesses_by_pair(candidates).items():
        group_id, m, n = pair
        if out.machine:
            for w in witnesses:
                out.record("candidate", group_id, m, n, w.s_ab, w.s_23)
        else:
            out.line(f"{group_id} [{m},{n}]: " + "; ".join(f"{w.s_ab} / {w.s_23}" for w in witnesses))
    for c in extended:
        fourth = c.s_45 if c.s_45 is not None else "-"
        if out.machine:
            out.record("layer", c.group_id, c.m, c.n, c.s_34, fourth)
        else:
            out.line(f"  {c.describe()}")


def cmd_exclude(args, out: Output) -> None:
    facts = list(load_facts(args.facts or config.enumeration_config.facts_path))
    reports = apply_exclusions(enumerate_types(args.hmax), facts)
    for pair, group_reports in reports_by_pair(reports).items():
        group_id, m, n = pair
        survivors = [r for r in group_reports if r.verdict == Verdict.SURVIVES]
        if out.machine:
            for r in group_reports:
                out.record("verdict", group_id, m, n, r.candidate.s_ab, r.candidate.s_23, r.verdict.value,
                           r.rule.value if r.rule else "-", ",".join(r.facts) or "-")
        elif survivors:
            out.line(f"{group_id} [{m},{n}] survives")
        else:
            first = group_reports[0]
            out.line(f"{group_id} [{m},{n}] excluded by {first.rule.value} ({', '.join(first.facts)})")


def cmd_bieberbach(args, out: Output) -> None:
    crystal = load_crystal(args.path)
    verdict = is_bieberbach(crystal)
    G = crystal.group
    if out.machine:
        for cls in verdict.classes:
            out.record("class", crystal.name, G.elements[cls.element], cls.order,
                       ",".join(map(str, cls.factors)) or "-", ",".join(map(str, cls.coordinates)) or "-")
        out.record("bieberbach", crystal.name, int(verdict.torsion_free))
        return
    for cls in verdict.classes:
        state = "zero" if cls.is_zero else f"{cls.coordinates} in {cls.factors}"
        out.line(f"  order {cls.order} class of {G.elements[cls.element]}: {state}")
    if verdict.torsion_free:
        out.line(f"{crystal.name}: torsion-free (Bieberbach)")
    else:
        out.line(f"{crystal.name}: torsion over {G.elements[verdict.witness]}")


def cmd_nilpotent(args, out: Output) -> None:
    specs = load_endo_specs(args.path)
    report = verify_endomorphisms(specs, args.class_)
    basis = report.basis
    if out.machine:
        out.record("basis", basis.m, basis.c, *basis.layer_ranks)
        for a in report.automorphisms:
            order = report.orders.get(a.name)
            out.record("endo", a.name, int(a.accepted), a.determinant, order if order is not None else "-")
        for name, order in report.orders.items():
            if name not in {a.name for a in report.automorphisms}:
                out.record("order", name, order if order is not None else "-")
        for k, W in sorted(report.layer_decompositions.items()):
            out.record("layer", k, W.degree, *W.records())
        if report.k_hirsch_length is not None:
            out.record("hirsch", report.k_hirsch_length)
        return
    out.line(f"Hall basis on {basis.m} generators, class {basis.c}: layer ranks {list(basis.layer_ranks)}")
    for a in report.automorphisms:
        order = report.orders.get(a.name)
        state = "automorphism" if a.accepted else "not an automorphism"
        out.line(f"  {a.name}: {state}, det {a.determinant}, order {order if order is not None else 'infinite'}")
    for name, order in report.orders.items():
        if name not in {a.name for a in report.automorphisms}:
            out.line(f"  {name}: order {order if order is not None else 'infinite'}")
    for k, W in sorted(report.layer_decompositions.items()):
        out.line(f"  layer {k}: {W}")
    if report.k_hirsch_length is not None:
        out.line(f"  Hirsch length of the quotient by K: {report.k_hirsch_length}")


def cmd_report(args, out: Output) -> None:
    facts = list(load_facts(args.facts)) if args.facts else None
    state = ClassificationPipeline().run(args.hmax, facts=facts, machine=out.machine)
    if not state["success"]:
        raise ToolkitError(state["error_message"])
    out.stream.write(state["report_text"])


class UsageError(Exception):
    """Bad positional arguments detected after parsing."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toolkit", description="Certified computations for small "
                                     "torsion-free virtually solvable groups")
    parser.add_argument("--machine", action="store_true", help="emit tab-separated line records")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list catalog groups and rational irreducibles")
    p.add_argument("group", nargs="?")
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("chartab", help="rational character table")
    p.add_argument("group")
    p.set_defaults(handler=cmd_chartab)

    p = sub.add_parser("wedge", help="exterior square of a multiset, e.g. 2*rho4 rho5")
    p.add_argument("group")
    p.add_argument("labels", nargs="+")
    p.set_defaults(handler=cmd_wedge)

    p = sub.add_parser("decompose", help="decompose wedge, sym, lie3 or tensor products")
    p.add_argument("group")
    p.add_argument("op", choices=OPERATIONS)
    p.add_argument("labels", nargs="+")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("bounds", help="e n p | table | gcd d m count | simple n")
    p.add_argument("kind", choices=("e", "table", "gcd", "simple"))
    p.add_argument("values", nargs="*")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("enumerate", help="admissible candidate types")
    p.add_argument("--hmax", type=int, default=config.enumeration_config.h_max)
    p.add_argument("--layers", action="store_true", help="also list third- and fourth-layer witnesses")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("exclude", help="apply the exclusion rules")
    p.add_argument("--facts")
    p.add_argument("--hmax", type=int, default=config.enumeration_config.h_max)
    p.set_defaults(handler=cmd_exclude)

    p = sub.add_parser("bieberbach", help="torsion test for crystal data")
    p.add_argument("path")
    p.set_defaults(handler=cmd_bieberbach)

    p = sub.add_parser("nilpotent", help="verify endomorphisms of a free nilpotent group")
    nil = p.add_subparsers(dest="action", required=True)
    v = nil.add_parser("verify")
    v.add_argument("path")
    v.add_argument("--class", dest="class_", type=int, default=3)
    v.set_defaults(handler=cmd_nilpotent)

    p = sub.add_parser("report", help="full classification report")
    p.add_argument("--facts")
    p.add_argument("--hmax", type=int, default=config.enumeration_config.h_max)
    p.set_defaults(handler=cmd_report)
    return parser


def configure_logging() -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, config.logging_config.level, logging.WARNING),
        format=config.logging_config.format,
    )


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None) -> int:
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handler: Callable = args.handler
    try:
        handler(args, Output(stdout, args.machine))
    except UsageError as e:
        stderr.write(f"{e}\n")
        return 2
    except ToolkitError as e:
        logger.debug(f"{type(e).__name__} in '{args.command}'")
        stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 1
    return 0


def main() -> None:
    configure_logging()
    raise SystemExit(run())
