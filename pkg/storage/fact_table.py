"""
Provenance-tagged fact table.

One fact per line:

    id | tag | key=value; key=value | citation

Blank lines and lines starting with '#' are ignored. Every fact must carry a
citation stating the result it encodes.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from config.settings import config
from utils.errors import FactTableError
from utils.models import Fact, FactTag

logger = logging.getLogger(__name__)

# Parameters each tag needs before the exclusion engine can use it.
REQUIRED_PARAMS: Dict[FactTag, Tuple[str, ...]] = {
    FactTag.TORSION_EXISTENCE: ("group", "dims", "prime"),
    FactTag.BIEBERBACH_NONEXISTENCE: ("holonomy", "order", "max_dim"),
    FactTag.SP_SOLVABILITY: ("prime", "dim"),
    FactTag.ORDER_BOUND: ("dim", "bound"),
    FactTag.COCYCLE_ORDER: ("group", "bound"),
    FactTag.SEMIDIRECT_SPLIT: ("group", "dims"),
}

INTEGER_PARAMS = ("prime", "order", "max_dim", "dim", "bound")


class FactTable:
    """Ordered collection of facts addressable by id."""

    def __init__(self, facts: Optional[List[Fact]] = None, source: Optional[str] = None):
        self.facts: List[Fact] = []
        self._by_id: Dict[str, Fact] = {}
        self.source = source
        for fact in facts or []:
            self.add(fact)

    def add(self, fact: Fact) -> None:
        if fact.fact_id in self._by_id:
            raise FactTableError(f"Duplicate fact id '{fact.fact_id}'")
        self.facts.append(fact)
        self._by_id[fact.fact_id] = fact

    def get(self, fact_id: str) -> Fact:
        try:
            return self._by_id[fact_id]
        except KeyError:
            raise FactTableError(f"Unknown fact id '{fact_id}'")

    def by_tag(self, tag: FactTag) -> List[Fact]:
        return [f for f in self.facts if f.tag == tag]

    def __len__(self) -> int:
        return len(self.facts)

    def __iter__(self):
        return iter(self.facts)

    def __getitem__(self, index: int) -> Fact:
        return self.facts[index]


def _parse_params(text: str, where: str) -> Tuple[Tuple[str, str], ...]:
    params = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise FactTableError(f"{where}: parameter '{item}' is not key=value")
        key, value = (part.strip() for part in item.split("=", 1))
        if not key or not value:
            raise FactTableError(f"{where}: empty key or value in '{item}'")
        params.append((key, value))
    return tuple(params)


def _check_params(fact: Fact, where: str) -> None:
    for key in REQUIRED_PARAMS[fact.tag]:
        if fact.param(key) is None:
            raise FactTableError(f"{where}: {fact.tag.value} fact '{fact.fact_id}' lacks '{key}'")
    try:
        for key in INTEGER_PARAMS:
            fact.int_param(key)
        fact.int_list_param("dims")
    except ValueError as e:
        raise FactTableError(f"{where}: non-integer parameter in '{fact.fact_id}': {e}")


def parse_fact(line: str, where: str = "<line>") -> Fact:
    """Parse one 'id | tag | params | citation' line.

    Raises:
        FactTableError: malformed line, unknown tag or missing citation
    """
    fields = [part.strip() for part in line.split("|", 3)]
    if len(fields) != 4:
        raise FactTableError(f"{where}: expected 'id | tag | params | citation', got {len(fields)} fields")
    fact_id, tag_text, params_text, citation = fields
    if not fact_id:
        raise FactTableError(f"{where}: empty fact id")
    try:
        tag = FactTag(tag_text)
    except ValueError:
        known = ", ".join(t.value for t in FactTag)
        raise FactTableError(f"{where}: unknown tag '{tag_text}' (known: {known})")
    if not citation.strip('"'):
        raise FactTableError(f"{where}: fact '{fact_id}' has no citation")
    fact = Fact(fact_id, tag, _parse_params(params_text, where), citation)
    _check_params(fact, where)
    return fact


def parse_facts(text: str, source: str = "<string>") -> FactTable:
    table = FactTable(source=source)
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        table.add(parse_fact(line, f"{source}:{number}"))
    return table


def load_facts(path: Union[str, Path]) -> FactTable:
    """Load a fact table from disk.

    Raises:
        FactTableError: unreadable file or malformed fact
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise FactTableError(f"Cannot read fact table {path}: {e}")
    table = parse_facts(text, str(path))
    logger.info(f"Loaded {len(table)} facts from {path}")
    return table


def default_facts() -> FactTable:
    """The shipped curated fact table."""
    return load_facts(config.enumeration_config.facts_path)
