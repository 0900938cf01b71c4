"""
Exact finite-group engine.

Groups are closed exhaustively from their generators; every element gets a
stable index in breadth-first discovery order from the sorted generators.
Subgroups, classes and power maps are expressed through these indices.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, reduce
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, factorint

from config.settings import config
from utils.errors import ContractError, SizeLimitError, ShapeError
from utils.galois_field import galois_field

logger = logging.getLogger(__name__)

MAX_ELEMENT_ORDER = 10000


class ElementKind(Enum):
    """Representation tag of a group element."""
    PERMUTATION = "permutation"
    FIELD_MATRIX = "field-matrix"
    INTEGER_MATRIX = "integer-matrix"


@dataclass(frozen=True)
class Element:
    """A permutation, a 2x2 matrix over GF(q) or a square integer matrix.

    Permutations store 0-based images; matrices are stored row-major.
    modulus is q for field matrices and 0 otherwise.
    """
    kind: ElementKind
    degree: int
    modulus: int
    data: Tuple[int, ...]

    def sort_key(self) -> Tuple:
        return (self.kind.value, self.degree, self.modulus, self.data)

    def __str__(self) -> str:
        if self.kind is ElementKind.PERMUTATION:
            return cycle_notation(self)
        n = self.degree
        rows = [list(self.data[i * n:(i + 1) * n]) for i in range(n)]
        suffix = f" mod GF({self.modulus})" if self.kind is ElementKind.FIELD_MATRIX else ""
        return f"{rows}{suffix}"


def permutation(images: Sequence[int]) -> Element:
    """Permutation from 0-based images."""
    images = tuple(int(i) for i in images)
    if sorted(images) != list(range(len(images))):
        raise ShapeError(f"{images} is not a permutation")
    return Element(ElementKind.PERMUTATION, len(images), 0, images)


def permutation_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Element:
    """Permutation from 1-based cycles, e.g. [(1, 2, 3), (4, 5)]."""
    images = list(range(degree))
    for cycle in cycles:
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            images[a - 1] = b - 1
    return permutation(images)


def field_matrix(q: int, rows: Sequence[Sequence[int]]) -> Element:
    """2x2 matrix over GF(q); entries are field elements encoded as ints."""
    field_ = galois_field(q)
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ShapeError("Field matrices must be 2x2")
    data = tuple(int(x) % q if field_.k == 1 else int(x) for r in rows for x in r)
    if any(not 0 <= x < q for x in data):
        raise ShapeError(f"Entries of {rows} are not elements of GF({q})")
    element = Element(ElementKind.FIELD_MATRIX, 2, q, data)
    if _field_det(element) == 0:
        raise ShapeError(f"{rows} is singular over GF({q})")
    return element


def integer_matrix(rows: Sequence[Sequence[int]]) -> Element:
    """Unimodular square integer matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("Integer matrices must be square")
    element = Element(ElementKind.INTEGER_MATRIX, n, 0, tuple(int(x) for r in rows for x in r))
    if n and abs(int(Matrix(n, n, list(element.data)).det())) != 1:
        raise ShapeError(f"{rows} is not unimodular")
    return element


def identity_like(kind: ElementKind, degree: int, modulus: int = 0) -> Element:
    if kind is ElementKind.PERMUTATION:
        return Element(kind, degree, 0, tuple(range(degree)))
    data = tuple(1 if i == j else 0 for i in range(degree) for j in range(degree))
    return Element(kind, degree, modulus, data)


def identity_permutation(degree: int) -> Element:
    return identity_like(ElementKind.PERMUTATION, degree)


def cycle_notation(g: Element) -> str:
    seen = set()
    cycles = []
    for start in range(g.degree):
        if start in seen or g.data[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = g.data[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = g.data[nxt]
        cycles.append("(" + " ".join(str(i + 1) for i in cycle) + ")")
    return "".join(cycles) or "()"


def _check_compatible(a: Element, b: Element) -> None:
    if (a.kind, a.degree, a.modulus) != (b.kind, b.degree, b.modulus):
        raise ShapeError(
            f"Incompatible elements: {a.kind.value}/{a.degree}/{a.modulus} "
            f"and {b.kind.value}/{b.degree}/{b.modulus}"
        )


def _field_det(g: Element) -> int:
    f = galois_field(g.modulus)
    a, b, c, d = g.data
    return f.sub(f.mul(a, d), f.mul(b, c))


def multiply(a: Element, b: Element) -> Element:
    """Product a*b; for permutations this is the composite 'b first, then a'."""
    _check_compatible(a, b)
    if a.kind is ElementKind.PERMUTATION:
        return Element(a.kind, a.degree, 0, tuple(a.data[i] for i in b.data))
    if a.kind is ElementKind.FIELD_MATRIX:
        f = galois_field(a.modulus)
        a0, a1, a2, a3 = a.data
        b0, b1, b2, b3 = b.data
        data = (
            f.add(f.mul(a0, b0), f.mul(a1, b2)),
            f.add(f.mul(a0, b1), f.mul(a1, b3)),
            f.add(f.mul(a2, b0), f.mul(a3, b2)),
            f.add(f.mul(a2, b1), f.mul(a3, b3)),
        )
        return Element(a.kind, 2, a.modulus, data)
    n = a.degree
    data = tuple(
        sum(a.data[i * n + k] * b.data[k * n + j] for k in range(n))
        for i in range(n) for j in range(n)
    )
    return Element(a.kind, n, 0, data)


def inverse(g: Element) -> Element:
    if g.kind is ElementKind.PERMUTATION:
        images = [0] * g.degree
        for i, x in enumerate(g.data):
            images[x] = i
        return Element(g.kind, g.degree, 0, tuple(images))
    if g.kind is ElementKind.FIELD_MATRIX:
        f = galois_field(g.modulus)
        a, b, c, d = g.data
        inv_det = f.inv(_field_det(g))
        data = (f.mul(inv_det, d), f.mul(inv_det, f.neg(b)), f.mul(inv_det, f.neg(c)), f.mul(inv_det, a))
        return Element(g.kind, 2, g.modulus, data)
    n = g.degree
    inv = Matrix(n, n, list(g.data)).inv()
    return Element(g.kind, n, 0, tuple(int(x) for x in inv))


def power(g: Element, k: int) -> Element:
    if k < 0:
        return power(inverse(g), -k)
    result = identity_like(g.kind, g.degree, g.modulus)
    base = g
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def element_order(g: Element) -> int:
    """Smallest k >= 1 with g^k = 1."""
    one = identity_like(g.kind, g.degree, g.modulus)
    current = g
    for k in range(1, MAX_ELEMENT_ORDER + 1):
        if current == one:
            return k
        current = multiply(current, g)
    raise ContractError(f"Element {g} has no finite order below {MAX_ELEMENT_ORDER}")


@dataclass(frozen=True)
class ConjugacyClass:
    """Conjugacy class with its smallest-index member as representative."""
    representative: Element
    rep_index: int
    size: int
    order: int
    members: FrozenSet[int]


@dataclass(frozen=True)
class QuotientClass:
    """A conjugacy class of G/K as a union of G-classes."""
    classes: Tuple[int, ...]
    size: int
    order: int


class FiniteGroup:
    """Finite group with its full element list.

    Attributes:
        generators: Sorted, de-duplicated generators
        elements: All elements in discovery order; elements[0] is the identity
        parents: (parent index, generator index) per element, with
            elements[i] = elements[parent] * generators[gen]
    """

    def __init__(self, generators: Sequence[Element], elements: Sequence[Element],
                 parents: Sequence[Tuple[int, int]], name: Optional[str] = None):
        self.generators: Tuple[Element, ...] = tuple(generators)
        self.elements: Tuple[Element, ...] = tuple(elements)
        self.parents: Tuple[Tuple[int, int], ...] = tuple(parents)
        self.identity = self.elements[0]
        self.name = name or f"group of order {len(self.elements)}"
        self._index: Dict[Element, int] = {e: i for i, e in enumerate(self.elements)}
        self._generator_indices = tuple(self._index[s] for s in self.generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generator_indices(self) -> Tuple[int, ...]:
        return self._generator_indices

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def index_of(self, g: Element) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise ContractError(f"{g} is not an element of {self.name}")

    def contains(self, g: Element) -> bool:
        return g in self._index

    def mul(self, i: int, j: int) -> int:
        return self._index[multiply(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self._inverse_table[i]

    def conjugate(self, x: int, g: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power_index(self, i: int, k: int) -> int:
        return self._index[power(self.elements[i], k)]

    @cached_property
    def _inverse_table(self) -> Tuple[int, ...]:
        return tuple(self._index[inverse(e)] for e in self.elements)

    @cached_property
    def element_orders(self) -> Tuple[int, ...]:
        orders = [0] * self.order
        for i in range(self.order):
            if orders[i]:
                continue
            # walk the cyclic subgroup once and fill in every power
            cycle = [0]
            current = i
            while current != 0:
                cycle.append(current)
                current = self.mul(current, i)
            n = len(cycle)
            for k, idx in enumerate(cycle):
                if k and not orders[idx]:
                    orders[idx] = n // gcd(n, k)
            orders[i] = n
        orders[0] = 1
        return tuple(orders)

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.element_orders, 1)

    @cached_property
    def classes(self) -> Tuple[ConjugacyClass, ...]:
        assigned = [False] * self.order
        raw = []
        for start in range(self.order):
            if assigned[start]:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for s in self._generator_indices:
                    y = self.conjugate(x, s)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            for y in orbit:
                assigned[y] = True
            raw.append((len(orbit), self.element_orders[start], start, frozenset(orbit)))
        raw.sort(key=lambda t: (t[0], t[1], t[2]))
        logger.debug(f"{self.name}: {len(raw)} conjugacy classes")
        return tuple(
            ConjugacyClass(self.elements[rep], rep, size, order, members)
            for size, order, rep, members in raw
        )

    @cached_property
    def class_index(self) -> Tuple[int, ...]:
        lookup = [0] * self.order
        for k, cls in enumerate(self.classes):
            for i in cls.members:
                lookup[i] = k
        return tuple(lookup)

    def class_of(self, g: Element) -> int:
        return self.class_index[self.index_of(g)]

    def power_map(self, k: int) -> Tuple[int, ...]:
        """Class of rep^k for every class."""
        return tuple(self.class_index[self.power_index(c.rep_index, k)] for c in self.classes)

    @cached_property
    def inverse_classes(self) -> Tuple[int, ...]:
        return tuple(self.class_index[self.inv(c.rep_index)] for c in self.classes)

    def centralizer_order(self, g: Element) -> int:
        return self.order // self.classes[self.class_of(g)].size

    @cached_property
    def is_abelian(self) -> bool:
        gens = self._generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)


def _sorted_generators(generators: Sequence[Element], one: Element) -> List[Element]:
    unique = {g for g in generators if g != one}
    return sorted(unique, key=Element.sort_key)


def close_group(generators: Sequence[Element], cap: Optional[int] = None,
                identity: Optional[Element] = None, name: Optional[str] = None) -> FiniteGroup:
    """Generate a finite group by breadth-first closure.

    Args:
        generators: Elements sharing one representation tag and degree
        cap: Maximum number of elements (defaults to the configured size cap)
        identity: Identity element, required when generators is empty
        name: Display name

    Returns:
        The generated FiniteGroup

    Raises:
        ShapeError: mixed tags or degrees
        SizeLimitError: more than cap elements
    """
    cap = cap or config.group_config.size_cap
    generators = list(generators)
    if not generators and identity is None:
        raise ShapeError("An empty generator list needs an explicit identity element")
    first = generators[0] if generators else identity
    for g in generators[1:] + ([identity] if identity is not None else []):
        _check_compatible(first, g)
    one = identity_like(first.kind, first.degree, first.modulus)
    gens = _sorted_generators(generators, one)

    elements = [one]
    parents = [(-1, -1)]
    index = {one: 0}
    head = 0
    interval = config.group_config.closure_log_interval
    while head < len(elements):
        current = elements[head]
        for s_idx, s in enumerate(gens):
            product = multiply(current, s)
            if product not in index:
                index[product] = len(elements)
                elements.append(product)
                parents.append((head, s_idx))
                if len(elements) > cap:
                    raise SizeLimitError(f"Closure exceeded {cap} elements")
                if interval and len(elements) % interval == 0:
                    logger.debug(f"Closure of {name or 'group'}: {len(elements)} elements")
        head += 1
    group = FiniteGroup(gens, elements, parents, name=name)
    logger.info(f"Closed {group.name}: order {group.order}")
    return group


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a FiniteGroup given by member indices."""
    parent: FiniteGroup = field(compare=False, repr=False)
    generators: Tuple[int, ...]
    members: FrozenSet[int]

    def __post_init__(self):
        if self.parent.order % len(self.members):
            raise ContractError(
                f"Subgroup of order {len(self.members)} violates Lagrange in {self.parent.name}"
            )

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, i: int) -> bool:
        return i in self.members

    @property
    def is_cyclic(self) -> bool:
        orders = self.parent.element_orders
        return any(orders[i] == self.order for i in self.members)

    @property
    def cyclic_generator(self) -> Optional[int]:
        orders = self.parent.element_orders
        candidates = [i for i in sorted(self.members) if orders[i] == self.order]
        return candidates[0] if candidates else None

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conjugate(x, s) in self.members
                   for x in self.generators for s in G.generator_indices)

    def elements(self) -> List[Element]:
        return [self.parent.elements[i] for i in sorted(self.members)]


def subgroup_closure(G: FiniteGroup, generators: Iterable[int], cap: Optional[int] = None) -> Subgroup:
    """Subgroup generated by element indices; None-free unless cap is exceeded."""
    gens = tuple(sorted(set(generators) - {0}))
    members = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = G.mul(x, s)
            if y not in members:
                members.add(y)
                frontier.append(y)
                if cap is not None and len(members) > cap:
                    raise SizeLimitError(f"Subgroup closure exceeded {cap} elements")
    return Subgroup(G, gens, frozenset(members))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (), frozenset({0}))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, G.generator_indices, frozenset(range(G.order)))


def subgroup_from_members(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Subgroup from a member set known to be closed; picks a small generating set."""
    members = frozenset(members)
    gens: List[int] = []
    span = {0}
    for i in sorted(members):
        if i not in span:
            gens.append(i)
            span = set(subgroup_closure(G, gens).members)
    if span != set(members):
        raise ContractError("Member set is not closed under multiplication")
    return Subgroup(G, tuple(gens), members)


def conjugacy_classes(G: FiniteGroup) -> Tuple[ConjugacyClass, ...]:
    return G.classes


def exponent(G: FiniteGroup) -> int:
    return G.exponent


def normal_closure(g: Element, G: FiniteGroup) -> Subgroup:
    """Smallest normal subgroup of G containing g."""
    cls = G.classes[G.class_of(g)]
    return subgroup_closure(G, cls.members)


def normally_generates(g: Element, G: FiniteGroup) -> bool:
    return normal_closure(g, G).order == G.order


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    """Normal closure of the commutators of generator pairs."""
    gens = G.generator_indices
    commutators = set()
    for a in gens:
        for b in gens:
            c = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b))
            if c:
                commutators.add(c)
    seeds = set()
    for c in commutators:
        seeds |= G.classes[G.class_index[c]].members
    return subgroup_closure(G, seeds)


def is_perfect(G: FiniteGroup) -> bool:
    return derived_subgroup(G).order == G.order


def _p_part(n: int, p: int) -> int:
    return p ** factorint(n).get(p, 0)


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown one normalizing p-element at a time."""
    target = _p_part(G.order, p)
    S = trivial_subgroup(G)
    orders = G.element_orders
    p_elements = [i for i in range(1, G.order) if _p_part(orders[i], p) == orders[i]]
    while S.order < target:
        grown = False
        for g in p_elements:
            if g in S.members:
                continue
            x = g
            while G.power_index(x, p) not in S.members:
                x = G.power_index(x, p)
            if all(G.conjugate(s, x) in S.members for s in S.generators):
                S = subgroup_closure(G, S.generators + (x,))
                grown = True
                break
        if not grown:
            raise ContractError(f"Sylow {p}-subgroup search stalled at order {S.order}")
    logger.debug(f"Sylow {p}-subgroup of {G.name}: order {S.order}, cyclic={S.is_cyclic}")
    return S


def normalizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    """{g : g S g^-1 = S}."""
    members = [g for g in range(G.order)
               if all(G.conjugate(s, g) in S.members for s in S.generators)]
    return subgroup_from_members(G, members)


def centralizer_order(G: FiniteGroup, g: Element) -> int:
    return G.centralizer_order(g)


def quotient_classes(G: FiniteGroup, kernel: Subgroup) -> List[QuotientClass]:
    """Conjugacy classes of G/K as merged G-classes, sorted by size, order, first class."""
    parent = list(range(len(G.classes)))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k, cls in enumerate(G.classes):
        for x in kernel.members:
            other = G.class_index[G.mul(cls.rep_index, x)]
            ra, rb = find(k), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: Dict[int, List[int]] = {}
    for k in range(len(G.classes)):
        groups.setdefault(find(k), []).append(k)
    result = []
    for members in groups.values():
        size = sum(G.classes[k].size for k in members) // kernel.order
        rep = G.classes[members[0]].rep_index
        order, current = 1, rep
        while current not in kernel.members:
            current = G.mul(current, rep)
            order += 1
        result.append(QuotientClass(tuple(members), size, order))
    result.sort(key=lambda q: (q.size, q.order, q.classes[0]))
    return result
