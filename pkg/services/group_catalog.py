"""
Catalog of the six minimal perfect groups.

Each entry ships explicit generators in the smallest convenient
representation, plus the data the character labelling needs: the family
letter, the normal subgroup whose characters are labelled as inflations, and
the expected rational degrees used to validate the computed tables.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from services.group_core import (
    Element,
    FiniteGroup,
    Subgroup,
    close_group,
    field_matrix,
    is_perfect,
    normal_closure,
    permutation,
    permutation_from_cycles,
    quotient_classes,
)
from utils.errors import CatalogMismatchError, ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalogGroupSpec:
    """Static description of a catalog group.

    Attributes:
        group_id: Stable identifier
        title: Human-readable name
        order: Expected order
        family: Label prefix of the group's own characters
        quotient_family: Label prefix of characters inflated from G/K
        simple: Whether the group is simple
        expected_degrees: Non-trivial rational irreducible degrees for simple
            groups, faithful ones of degree <= 10 otherwise
    """
    group_id: str
    title: str
    order: int
    family: str
    quotient_family: Optional[str]
    simple: bool
    expected_degrees: Tuple[int, ...]


CATALOG_SPECS: Dict[str, CatalogGroupSpec] = {
    "A5": CatalogGroupSpec("A5", "A5", 60, "rho", None, True, (4, 5, 6)),
    "PSL27": CatalogGroupSpec("PSL27", "PSL(2,7)", 168, "tau", None, True, (6, 6, 7, 8)),
    "SL28": CatalogGroupSpec("SL28", "SL(2,8)", 504, "psi", None, True, (7, 8, 21, 27)),
    "SL25": CatalogGroupSpec("SL25", "SL(2,5)", 120, "pi", "rho", False, (8, 8)),
    "SL27": CatalogGroupSpec("SL27", "SL(2,7)", 336, "xi", "tau", False, (8,)),
    "L32N23": CatalogGroupSpec("L32N23", "L3(2)N2^3", 1344, "lambda", "tau", False, (7, 7)),
}

CATALOG_IDS: Tuple[str, ...] = ("A5", "PSL27", "SL28", "SL25", "SL27", "L32N23")


@dataclass(frozen=True)
class CatalogGroup:
    """A closed catalog group with its labelling kernel."""
    spec: CatalogGroupSpec
    group: FiniteGroup
    kernel: Optional[Subgroup]

    @property
    def group_id(self) -> str:
        return self.spec.group_id


def _sl2_prime(p: int) -> List[Element]:
    return [field_matrix(p, [[1, 1], [0, 1]]), field_matrix(p, [[0, p - 1], [1, 0]])]


def _sl28() -> List[Element]:
    # GF(8) = F2[x]/(x^3+x+1); a = x is encoded as 2
    transvections = [field_matrix(8, [[1, t], [0, 1]]) for t in (1, 2, 4)]
    return transvections + [field_matrix(8, [[0, 1], [1, 0]])]


# Octonion units e1..e7 multiply along the Fano lines (k, k+1, k+3) mod 7.
def _fano_lines() -> List[Tuple[int, int, int]]:
    def red(x: int) -> int:
        return (x - 1) % 7 + 1
    return [(k, red(k + 1), red(k + 3)) for k in range(1, 8)]


def _octonion_table() -> Dict[Tuple[int, int], Tuple[int, int]]:
    table: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for a, b, c in _fano_lines():
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = (1, z)
            table[(y, x)] = (-1, z)
    return table


_OCTONIONS = _octonion_table()

SignedUnit = Tuple[int, int]


def _unit_product(u: SignedUnit, v: SignedUnit) -> SignedUnit:
    sign, k = _OCTONIONS[(u[1], v[1])]
    return (u[0] * v[0] * sign, k)


def octonion_automorphism(a: int, b: int, c: int) -> Element:
    """Signed-permutation automorphism sending e1, e2, e3 to the signed units a, b, c.

    a, b, c are signed indices (e.g. -3 for -e3) forming a basic triple:
    a and b distinct, c outside the quaternion span of a and b. The result
    acts on 14 points, +e_i -> i-1 and -e_i -> i+6 (0-based).
    """
    A, B, C = ((1 if x > 0 else -1, abs(x)) for x in (a, b, c))
    if A[1] == B[1]:
        raise ContractError(f"({a}, {b}, {c}) is not a basic triple")
    AB = _unit_product(A, B)
    if C[1] in (A[1], B[1], AB[1]):
        raise ContractError(f"({a}, {b}, {c}) is not a basic triple")
    # e4 = e1 e2, e5 = e2 e3, e6 = e3 e4, e7 = e4 e5
    images: Dict[int, SignedUnit] = {1: A, 2: B, 3: C, 4: AB}
    images[5] = _unit_product(B, C)
    images[6] = _unit_product(C, images[4])
    images[7] = _unit_product(images[4], images[5])

    def point(unit: SignedUnit) -> int:
        sign, k = unit
        return k - 1 if sign > 0 else k + 6

    points = [0] * 14
    for i in range(1, 8):
        sign, k = images[i]
        points[i - 1] = point((sign, k))
        points[i + 6] = point((-sign, k))
    return permutation(points)


def _l32n23() -> List[Element]:
    return [octonion_automorphism(*triple) for triple in ((2, 3, 4), (2, 4, 6), (1, 2, -3), (1, 2, 5))]


def shipped_generators(group_id: str) -> List[Element]:
    """Generators of a catalog group in the order they are shipped."""
    if group_id == "A5":
        return [permutation_from_cycles(5, [(1, 2, 3, 4, 5)]), permutation_from_cycles(5, [(1, 2, 3)])]
    if group_id == "PSL27":
        return [
            permutation_from_cycles(7, [(1, 2, 3, 4, 5, 6, 7)]),
            permutation_from_cycles(7, [(1, 2, 4), (3, 6, 5)]),
            permutation_from_cycles(7, [(3, 5), (6, 7)]),
        ]
    if group_id == "SL25":
        return _sl2_prime(5)
    if group_id == "SL27":
        return _sl2_prime(7)
    if group_id == "SL28":
        return _sl28()
    if group_id == "L32N23":
        return _l32n23()
    raise ContractError(f"Unknown catalog group '{group_id}'")


def _kernel_seed(group_id: str) -> Optional[Element]:
    if group_id in ("SL25", "SL27"):
        p = 5 if group_id == "SL25" else 7
        return field_matrix(p, [[p - 1, 0], [0, p - 1]])
    if group_id == "L32N23":
        return octonion_automorphism(1, 2, -3)
    return None


def _verify(entry: CatalogGroup) -> None:
    G, spec = entry.group, entry.spec
    if G.order != spec.order:
        raise CatalogMismatchError(f"{spec.group_id}: closed order {G.order}, expected {spec.order}")
    if not is_perfect(G):
        raise CatalogMismatchError(f"{spec.group_id} is not perfect")
    if entry.kernel is None:
        return
    K = entry.kernel
    if spec.group_id == "L32N23":
        orders = G.element_orders
        commuting = all(G.mul(x, y) == G.mul(y, x) for x in K.members for y in K.members)
        if K.order != 8 or not commuting or any(orders[x] > 2 for x in K.members):
            raise CatalogMismatchError("L32N23: sign subgroup is not elementary abelian of order 8")
        quotient = quotient_classes(G, K)
        if len(quotient) != 6 or G.order // K.order != 168:
            raise CatalogMismatchError(f"L32N23: quotient has {len(quotient)} classes, expected 6")
    elif K.order != 2:
        raise CatalogMismatchError(f"{spec.group_id}: center has order {K.order}, expected 2")
    if not K.is_normal():
        raise CatalogMismatchError(f"{spec.group_id}: labelling kernel is not normal")


@lru_cache(maxsize=None)
def catalog_group(group_id: str) -> CatalogGroup:
    """Closed and verified catalog group."""
    if group_id not in CATALOG_SPECS:
        raise ContractError(f"Unknown catalog group '{group_id}'; expected one of {', '.join(CATALOG_IDS)}")
    spec = CATALOG_SPECS[group_id]
    G = close_group(shipped_generators(group_id), name=group_id)
    seed = _kernel_seed(group_id)
    kernel = normal_closure(seed, G) if seed is not None else None
    entry = CatalogGroup(spec, G, kernel)
    _verify(entry)
    logger.info(f"Catalog group {group_id} verified: order {G.order}, {len(G.classes)} classes")
    return entry
