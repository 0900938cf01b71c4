"""
Readers for the text input formats.

Crystal data (.crystal):

    name klein_bottle
    group C2                # catalog id, C<k> (cyclic) or S<k> (symmetric)
    rank 2
    generator 1             # 1-based, in shipped generator order
      1  0
      0 -1
    cocycle cyclic 1 0      # or: cocycle zero / cocycle entry g h : v1 ... vn

    'action permutation' or 'action deleted-permutation' may replace the
    rank and generator blocks for permutation groups.

Endomorphism specs (.spec):

    generators: w x y z
    endo sigma
    w -> W                  # upper case is the inverse letter, 1 the empty word
    x -> w x y
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from services.group_catalog import CATALOG_SPECS, catalog_group, shipped_generators
from services.group_core import (
    Element,
    ElementKind,
    FiniteGroup,
    close_group,
    permutation_from_cycles,
)
from services.lattice_cohomology import (
    Cocycle2,
    CrystalData,
    LatticeAction,
    cyclic_cocycle,
    deleted_permutation_lattice,
    permutation_lattice,
)
from services.nilpotent import EndoSpec, Word
from utils.errors import FormatError, ToolkitError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise FormatError(f"Cannot read {path}: {e}")


def _lines(text: str) -> List[Tuple[int, str]]:
    result = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            result.append((number, line))
    return result


def _ints(tokens: Sequence[str], where: str) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"{where}: expected integers, got '{' '.join(tokens)}'")


def named_group(group_id: str) -> Tuple[FiniteGroup, List[Element]]:
    """A group by name with its generators in shipped order.

    Catalog ids give the catalog groups, C<k> the cyclic group on k points
    and S<k> the symmetric group on k points.
    """
    if group_id in CATALOG_SPECS:
        return catalog_group(group_id).group, shipped_generators(group_id)
    kind, digits = group_id[:1], group_id[1:]
    if kind in ("C", "S") and digits.isdigit() and int(digits) >= 1:
        k = int(digits)
        if k == 1:
            gens = [permutation_from_cycles(1, [])]
        elif kind == "C" or k == 2:
            gens = [permutation_from_cycles(k, [tuple(range(1, k + 1))])]
        else:
            gens = [permutation_from_cycles(k, [tuple(range(1, k + 1))]), permutation_from_cycles(k, [(1, 2)])]
        return close_group(gens, name=group_id), gens
    raise FormatError(f"Unknown group '{group_id}'; use a catalog id, C<k> or S<k>")


def parse_crystal(text: str, source: str = "<string>") -> CrystalData:
    """Parse crystal data.

    Raises:
        FormatError: malformed file, or data that does not define a valid
            action and cocycle
    """
    lines = _lines(text)
    name = Path(source).stem if source != "<string>" else "crystal"
    group: Optional[FiniteGroup] = None
    generators: List[Element] = []
    rank: Optional[int] = None
    action_kind: Optional[str] = None
    blocks: Dict[int, List[List[int]]] = {}
    cocycle_lines: List[Tuple[str, List[str]]] = []

    i = 0
    while i < len(lines):
        number, line = lines[i]
        where = f"{source}:{number}"
        keyword, *rest = line.split()
        i += 1
        if keyword == "name":
            name = " ".join(rest) or name
        elif keyword == "group":
            if len(rest) != 1:
                raise FormatError(f"{where}: 'group' takes one identifier")
            group, generators = named_group(rest[0])
        elif keyword == "rank":
            values = _ints(rest, where)
            if len(values) != 1 or values[0] < 0:
                raise FormatError(f"{where}: 'rank' takes one non-negative integer")
            rank = values[0]
        elif keyword == "action":
            if rest not in (["permutation"], ["deleted-permutation"]):
                raise FormatError(f"{where}: unknown action '{' '.join(rest)}'")
            action_kind = rest[0]
        elif keyword == "generator":
            if rank is None:
                raise FormatError(f"{where}: 'rank' must precede generator blocks")
            index = _ints(rest, where)
            if len(index) != 1:
                raise FormatError(f"{where}: 'generator' takes one index")
            rows = []
            for _ in range(rank):
                if i >= len(lines):
                    raise FormatError(f"{where}: generator block needs {rank} rows")
                row_number, row = lines[i]
                values = _ints(row.split(), f"{source}:{row_number}")
                if len(values) != rank:
                    raise FormatError(f"{source}:{row_number}: expected {rank} entries, got {len(values)}")
                rows.append(values)
                i += 1
            blocks[index[0]] = rows
        elif keyword == "cocycle":
            if not rest:
                raise FormatError(f"{where}: 'cocycle' needs a form")
            cocycle_lines.append((where, rest))
        else:
            raise FormatError(f"{where}: unknown keyword '{keyword}'")

    if group is None:
        raise FormatError(f"{source}: missing 'group' line")
    try:
        action = _build_action(group, generators, rank, action_kind, blocks, source)
        cocycle = _build_cocycle(action, cocycle_lines)
    except FormatError:
        raise
    except ToolkitError as e:
        raise FormatError(f"{source}: {e}")
    logger.info(f"Parsed crystal {name}: {group.name} on Z^{action.rank}")
    return CrystalData(action, cocycle, name)


def _build_action(group: FiniteGroup, generators: List[Element], rank: Optional[int],
                  action_kind: Optional[str], blocks: Dict[int, List[List[int]]], source: str) -> LatticeAction:
    if action_kind is not None:
        if blocks:
            raise FormatError(f"{source}: 'action' and generator blocks are exclusive")
        if group.identity.kind != ElementKind.PERMUTATION:
            raise FormatError(f"{source}: '{action_kind}' needs a permutation group")
        if action_kind == "permutation":
            return permutation_lattice(group)
        return deleted_permutation_lattice(group)
    if rank is None:
        raise FormatError(f"{source}: missing 'rank' line")
    expected = set(range(1, len(generators) + 1))
    if set(blocks) != expected:
        raise FormatError(f"{source}: need generator blocks {sorted(expected)}, got {sorted(blocks)}")
    if rank == 0:
        return LatticeAction.trivial(group, 0)
    return LatticeAction.from_generators(group, generators, [blocks[k] for k in sorted(blocks)])


def _build_cocycle(action: LatticeAction, cocycle_lines: List[Tuple[str, List[str]]]) -> Cocycle2:
    if not cocycle_lines or cocycle_lines[0][1] == ["zero"]:
        if len(cocycle_lines) > 1:
            raise FormatError(f"{cocycle_lines[1][0]}: 'cocycle zero' admits no further lines")
        return Cocycle2.zero(action)
    where, first = cocycle_lines[0]
    if first[0] == "cyclic":
        if len(cocycle_lines) > 1:
            raise FormatError(f"{cocycle_lines[1][0]}: 'cocycle cyclic' admits no further lines")
        vector = _ints(first[1:], where)
        if len(vector) != action.rank:
            raise FormatError(f"{where}: cyclic cocycle vector needs {action.rank} entries")
        generator = action.group.generator_indices
        if len(generator) != 1:
            raise FormatError(f"{where}: 'cocycle cyclic' needs a cyclic group with one generator")
        return cyclic_cocycle(action, generator[0], vector)
    entries: Dict[Tuple[int, int], List[int]] = {}
    for where, tokens in cocycle_lines:
        if tokens[0] != "entry" or ":" not in tokens:
            raise FormatError(f"{where}: expected 'cocycle entry g h : v1 ... vn'")
        colon = tokens.index(":")
        indices = _ints(tokens[1:colon], where)
        vector = _ints(tokens[colon + 1:], where)
        if len(indices) != 2 or len(vector) != action.rank:
            raise FormatError(f"{where}: expected two element indices and {action.rank} entries")
        entries[(indices[0], indices[1])] = vector
    return Cocycle2.from_entries(action, entries)


def load_crystal(path: PathLike) -> CrystalData:
    return parse_crystal(_read(path), str(path))


def _parse_word(text: str, names: Sequence[str], where: str) -> Word:
    if text.strip() == "1":
        return ()
    lookup = {}
    for index, name in enumerate(names):
        lookup[name] = (index, 1)
        lookup[name.upper()] = (index, -1)
    single = all(len(n) == 1 for n in names)
    word: List[Tuple[int, int]] = []
    for token in text.split():
        if token in lookup:
            word.append(lookup[token])
        elif single and all(ch in lookup for ch in token):
            word.extend(lookup[ch] for ch in token)
        else:
            raise FormatError(f"{where}: unknown letter in '{token}'")
    return tuple(word)


def parse_endo_specs(text: str, source: str = "<string>") -> List[EndoSpec]:
    """Parse one or more endomorphisms of a free group.

    Raises:
        FormatError: malformed file, unknown letters or missing images
    """
    names: Optional[List[str]] = None
    specs: List[EndoSpec] = []
    current: Optional[str] = None
    images: Dict[str, Word] = {}

    def finish(where: str) -> None:
        if current is None:
            return
        missing = [n for n in names if n not in images]
        if missing:
            raise FormatError(f"{where}: endomorphism '{current}' has no image for {', '.join(missing)}")
        try:
            specs.append(EndoSpec(current, tuple(names), tuple(images[n] for n in names)))
        except ToolkitError as e:
            raise FormatError(f"{where}: {e}")

    for number, line in _lines(text):
        where = f"{source}:{number}"
        if line.startswith("generators:"):
            if names is not None:
                raise FormatError(f"{where}: generators declared twice")
            names = line.split(":", 1)[1].split()
            if not names or len(set(names)) != len(names):
                raise FormatError(f"{where}: generator names must be distinct and non-empty")
            if any(n != n.lower() or n == "1" for n in names):
                raise FormatError(f"{where}: generator names must be lower case")
        elif line.startswith("endo "):
            if names is None:
                raise FormatError(f"{where}: 'generators:' must come first")
            finish(where)
            current = line.split(None, 1)[1].strip()
            images = {}
        elif "->" in line:
            if current is None:
                raise FormatError(f"{where}: image outside an 'endo' block")
            left, right = (part.strip() for part in line.split("->", 1))
            if left not in names:
                raise FormatError(f"{where}: '{left}' is not a generator")
            if left in images:
                raise FormatError(f"{where}: image of '{left}' given twice")
            images[left] = _parse_word(right, names, where)
        else:
            raise FormatError(f"{where}: cannot parse '{line}'")
    finish(f"{source}:end")
    if not specs:
        raise FormatError(f"{source}: no endomorphisms found")
    logger.info(f"Parsed {len(specs)} endomorphisms on {len(names)} generators from {source}")
    return specs


def load_endo_specs(path: PathLike) -> List[EndoSpec]:
    return parse_endo_specs(_read(path), str(path))
