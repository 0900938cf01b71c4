"""
Exact character theory.

Complex character tables are computed with the Dixon-Schneider modular
method: common eigenvectors of the class multiplication matrices over GF(p),
p = 1 mod exponent(G), lifted back to exact cyclotomic values through the
power maps. Galois orbits then give the rational irreducible characters that
the rest of the toolkit works with.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import nextprime, primitive_root, sqrt_mod

from config.settings import config
from services.group_catalog import CATALOG_SPECS, catalog_group
from services.group_core import FiniteGroup, Subgroup, quotient_classes, subgroup_from_members
from utils.cyclotomic import Cyclotomic
from utils.errors import (
    CatalogMismatchError,
    CharacterTableError,
    ContractError,
    GroupMismatchError,
    NotACharacterError,
)
from utils.models import CharacterMultiset

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """One value per conjugacy class of group, in class order."""
    group: FiniteGroup
    values: Tuple[Cyclotomic, ...]

    @classmethod
    def from_integers(cls, group: FiniteGroup, values: Iterable[int]) -> "ClassFunction":
        return cls(group, tuple(Cyclotomic.rational(v) for v in values))

    def __post_init__(self):
        if len(self.values) != len(self.group.classes):
            raise ContractError(
                f"Class function has {len(self.values)} values for {len(self.group.classes)} classes"
            )

    @property
    def degree(self) -> int:
        return self.values[0].integer_value()

    def is_integral(self) -> bool:
        return all(v.is_integer() for v in self.values)

    def integer_values(self) -> Tuple[int, ...]:
        if not self.is_integral():
            raise NotACharacterError("Class function has non-integral values")
        return tuple(v.integer_value() for v in self.values)

    def _check(self, other: "ClassFunction") -> None:
        if self.group is not other.group:
            raise GroupMismatchError(f"Class functions on {self.group.name} and {other.group.name}")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def scale(self, k) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v * k for v in self.values))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    def __hash__(self) -> int:
        return hash((id(self.group), self.values))

    def __str__(self) -> str:
        return "[" + ", ".join(str(v) for v in self.values) + "]"


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction.from_integers(G, [1] * len(G.classes))


def zero_function(G: FiniteGroup) -> ClassFunction:
    return ClassFunction.from_integers(G, [0] * len(G.classes))


def regular_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction.from_integers(G, [G.order] + [0] * (len(G.classes) - 1))


def direct_sum(*chis: ClassFunction) -> ClassFunction:
    if not chis:
        raise ContractError("direct_sum needs at least one summand")
    total = chis[0]
    for chi in chis[1:]:
        total = total + chi
    return total


def scale(chi: ClassFunction, k: int) -> ClassFunction:
    return chi.scale(k)


def inner_product(alpha: ClassFunction, beta: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum over g of alpha(g) * conj(beta(g))."""
    alpha._check(beta)
    G = alpha.group
    total = Cyclotomic.zero()
    for cls, a, b in zip(G.classes, alpha.values, beta.values):
        if a.is_zero() or b.is_zero():
            continue
        total = total + a * b.conjugate() * cls.size
    return total / G.order


def _power_values(chi: ClassFunction, k: int) -> Tuple[Cyclotomic, ...]:
    pm = chi.group.power_map(k)
    return tuple(chi.values[pm[c]] for c in range(len(pm)))


def exterior_square(chi: ClassFunction) -> ClassFunction:
    """(chi(g)^2 - chi(g^2)) / 2."""
    squares = _power_values(chi, 2)
    return ClassFunction(chi.group, tuple((v * v - s) / 2 for v, s in zip(chi.values, squares)))


def symmetric_square(chi: ClassFunction) -> ClassFunction:
    """(chi(g)^2 + chi(g^2)) / 2."""
    squares = _power_values(chi, 2)
    return ClassFunction(chi.group, tuple((v * v + s) / 2 for v, s in zip(chi.values, squares)))


def tensor(chi: ClassFunction, psi: ClassFunction) -> ClassFunction:
    return chi * psi


def lie_power(chi: ClassFunction, k: int) -> ClassFunction:
    """Character of the degree-k layer of the free Lie algebra on chi, k in {1, 2, 3}."""
    if k == 1:
        return chi
    if k == 2:
        return exterior_square(chi)
    if k == 3:
        cubes = _power_values(chi, 3)
        return ClassFunction(chi.group, tuple((v * v * v - c) / 3 for v, c in zip(chi.values, cubes)))
    raise ContractError(f"Lie powers are supported for k in 1..3, got {k}")


@dataclass(frozen=True)
class CharacterTable:
    """Complete list of irreducible complex characters of a group."""
    group: FiniteGroup = field(repr=False)
    characters: Tuple[ClassFunction, ...]
    prime: int

    def __len__(self) -> int:
        return len(self.characters)


class _ModularFailure(Exception):
    """The chosen prime did not split the class algebra cleanly."""


def dixon_primes(order: int, exponent: int) -> Iterable[int]:
    """Primes p with p = 1 mod exponent and p > 2 sqrt(order), increasing."""
    p = 2 * isqrt(order)
    while True:
        p = nextprime(p)
        if p % exponent == 1 % exponent and p * p > 4 * order:
            yield p


def _nullspace_mod(rows: List[List[int]], p: int) -> List[List[int]]:
    """Basis of {x : A x = 0} over GF(p)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    A = [[x % p for x in r] for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(n_rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        v = [0] * n_cols
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = (-A[i][free]) % p
        basis.append(v)
    return basis


def _rref_mod(vectors: List[List[int]], p: int) -> List[List[int]]:
    rows = [list(v) for v in vectors]
    n_cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


def _class_matrices(G: FiniteGroup) -> List[List[List[int]]]:
    """M_i[j][k] = #{x in C_i : x^-1 z_k in C_j} for class representatives z_k."""
    r = len(G.classes)
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    cls_of = G.class_index
    for k, cls in enumerate(G.classes):
        z = cls.rep_index
        for x in range(G.order):
            a[cls_of[x]][cls_of[G.mul(G.inv(x), z)]][k] += 1
    return a


def _split_spaces(spaces: List[List[List[int]]], M: List[List[int]], p: int) -> List[List[List[int]]]:
    refined = []
    for S in spaces:
        if len(S) == 1:
            refined.append(S)
            continue
        pivots = [next(c for c, x in enumerate(b) if x) for b in S]
        images = [[sum(M[j][k] * b[k] for k in range(len(b))) % p for j in range(len(b))] for b in S]
        X = [[images[t][pivots[u]] for t in range(len(S))] for u in range(len(S))]
        found = 0
        for lam in range(p):
            shifted = [[(X[u][t] - (lam if u == t else 0)) % p for t in range(len(S))] for u in range(len(S))]
            null = _nullspace_mod(shifted, p)
            if not null:
                continue
            vectors = [[sum(n[t] * S[t][c] for t in range(len(S))) % p for c in range(len(S[0]))] for n in null]
            refined.append(_rref_mod(vectors, p))
            found += len(null)
            if found == len(S):
                break
        if found != len(S):
            raise _ModularFailure(f"class matrix is not diagonalizable mod {p}")
    return refined


def _dixon_attempt(G: FiniteGroup, p: int, structure: List[List[List[int]]]) -> List[ClassFunction]:
    r = len(G.classes)
    sizes = [c.size for c in G.classes]
    inverse_class = G.inverse_classes
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for i in range(1, r):
        if all(len(S) == 1 for S in spaces):
            break
        spaces = _split_spaces(spaces, structure[i], p)
    if len(spaces) != r:
        raise _ModularFailure(f"only {len(spaces)} common eigenspaces mod {p}")

    root = primitive_root(p)
    power_classes = []
    for cls in G.classes:
        chain = [0]
        current = cls.rep_index
        while current != 0:
            chain.append(G.class_index[current])
            current = G.mul(current, cls.rep_index)
        # chain[j] is the class of rep^j
        power_classes.append(chain)

    characters = []
    for S in spaces:
        v = S[0]
        if v[0] % p == 0:
            raise _ModularFailure("eigenvector vanishes on the identity class")
        inv0 = pow(v[0], p - 2, p)
        u = [(x * inv0 * pow(h, p - 2, p)) % p for x, h in zip(v, sizes)]
        norm = sum(h * u[k] * u[inverse_class[k]] for k, h in enumerate(sizes)) % p
        if norm == 0:
            raise _ModularFailure("zero norm")
        square = (G.order * pow(norm, p - 2, p)) % p
        roots = sqrt_mod(square, p, all_roots=True) or []
        degrees = [d for d in roots if 0 < d <= isqrt(G.order) and G.order % d == 0]
        if len(degrees) != 1:
            raise _ModularFailure(f"no admissible degree among square roots {roots}")
        d = degrees[0]
        residues = [(d * x) % p for x in u]
        values = []
        for k, chain in enumerate(power_classes):
            o = len(chain)
            z = pow(root, (p - 1) // o, p)
            inv_o = pow(o, p - 2, p)
            multiplicities = {}
            for t in range(o):
                m = sum(residues[chain[j]] * pow(z, (-t * j) % o, p) for j in range(o)) * inv_o % p
                if m > d:
                    raise _ModularFailure(f"eigenvalue multiplicity {m} exceeds degree {d}")
                if m:
                    multiplicities[t] = m
            if sum(multiplicities.values()) != d:
                raise _ModularFailure("eigenvalue multiplicities do not add up to the degree")
            values.append(Cyclotomic.from_powers(o, multiplicities).normalize())
        characters.append(ClassFunction(G, tuple(values)))
    return characters


def _check_orthonormal(characters: Sequence[ClassFunction]) -> bool:
    for i, chi in enumerate(characters):
        for j in range(i, len(characters)):
            if inner_product(chi, characters[j]) != (1 if i == j else 0):
                return False
    return True


def _table_key(chi: ClassFunction) -> Tuple:
    return (chi.degree, tuple(v.sort_key() for v in chi.values))


@lru_cache(maxsize=None)
def character_table(G: FiniteGroup) -> CharacterTable:
    """Irreducible complex characters of G, sorted by degree then values.

    Raises:
        CharacterTableError: every prime tried failed
    """
    structure = _class_matrices(G)
    attempts = config.character_config.max_prime_attempts
    primes = dixon_primes(G.order, G.exponent)
    for attempt in range(attempts):
        p = next(primes)
        try:
            characters = _dixon_attempt(G, p, structure)
        except _ModularFailure as e:
            logger.warning(f"{G.name}: modular step failed for p={p}: {e}; trying the next prime")
            continue
        if not _check_orthonormal(characters):
            logger.warning(f"{G.name}: lifted table mod {p} is not orthonormal; trying the next prime")
            continue
        characters.sort(key=_table_key)
        logger.info(f"{G.name}: character table with {len(characters)} irreducibles via p={p}")
        return CharacterTable(G, tuple(characters), p)
    raise CharacterTableError(f"{G.name}: modular character table failed for {attempts} primes")


def frobenius_schur(chi: ClassFunction) -> int:
    """(1/|G|) sum over g of chi(g^2), for irreducible chi."""
    if inner_product(chi, chi) != 1:
        raise ContractError("Frobenius-Schur indicator needs an irreducible character")
    G = chi.group
    squares = _power_values(chi, 2)
    total = Cyclotomic.zero()
    for cls, v in zip(G.classes, squares):
        total = total + v * cls.size
    return (total / G.order).integer_value()


@dataclass(frozen=True)
class RationalCharacter:
    """Character of a rational irreducible representation.

    Attributes:
        label: Family letter plus degree and suffix, or "1" for the trivial character
        character: Integer-valued class function
        kernel: Classes on which the character equals its degree
        schur_multiplier: 2 for doubled quaternionic orbits, else 1
        indicator: Frobenius-Schur indicator of the complex constituents
        constituents: Indices into the complex table
        inflated: Whether the character factors through the labelling quotient
    """
    label: str
    character: ClassFunction = field(repr=False)
    degree: int
    kernel: FrozenSet[int]
    schur_multiplier: int
    symplectic: bool
    indicator: int
    constituents: Tuple[int, ...]
    inflated: bool = False

    @property
    def values(self) -> Tuple[int, ...]:
        return self.character.integer_values()

    def is_trivial(self) -> bool:
        return self.label == "1"


def _trivial_multiplicity(values: Sequence[int], G: FiniteGroup) -> Fraction:
    return Fraction(sum(v * c.size for v, c in zip(values, G.classes)), G.order)


def _wedge_values(values: Sequence[int], G: FiniteGroup) -> List[int]:
    pm = G.power_map(2)
    return [(v * v - values[pm[k]]) // 2 for k, v in enumerate(values)]


def _canonical_key(values: Sequence[int], blocks: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    """Values in class order with tied (size, order) blocks sorted descending."""
    key: List[int] = []
    i = 0
    while i < len(values):
        j = i
        while j < len(values) and blocks[j] == blocks[i]:
            j += 1
        key.extend(sorted(values[i:j], reverse=True))
        i = j
    return tuple(key)


def _suffixes(count: int) -> List[str]:
    return [""] if count == 1 else [chr(ord("a") + i) for i in range(count)]


@dataclass
class RationalBasis:
    """The rational irreducible characters of one group, addressable by label."""
    group: FiniteGroup = field(repr=False)
    group_id: str
    characters: Tuple[RationalCharacter, ...]
    table: CharacterTable = field(repr=False)

    def __post_init__(self):
        self._by_label = {c.label: c for c in self.characters}

    def labels(self) -> List[str]:
        return [c.label for c in self.characters]

    def get(self, label: str) -> RationalCharacter:
        try:
            return self._by_label[label]
        except KeyError:
            raise ContractError(
                f"Unknown character '{label}' for {self.group_id}; known: {', '.join(self.labels())}"
            )

    @property
    def trivial(self) -> RationalCharacter:
        return self.characters[0]

    @property
    def degrees(self) -> Dict[str, int]:
        return {c.label: c.degree for c in self.characters}

    def multiset(self, counts: Dict[str, int]) -> CharacterMultiset:
        for label in counts:
            self.get(label)
        return CharacterMultiset.from_counts(self.group_id, counts, self.degrees)

    def class_function(self, W: CharacterMultiset) -> ClassFunction:
        """Character of the representation sum_label mult * label."""
        self._check(W)
        totals = [0] * len(self.group.classes)
        for label, mult in W.counts:
            for k, v in enumerate(self.get(label).values):
                totals[k] += mult * v
        return ClassFunction.from_integers(self.group, totals)

    def _check(self, W: CharacterMultiset) -> None:
        if W.group_id != self.group_id:
            raise GroupMismatchError(f"Multiset over {W.group_id} used with {self.group_id}")

    def nontrivial(self) -> List[RationalCharacter]:
        return [c for c in self.characters if not c.is_trivial()]


def decompose(phi: ClassFunction, basis: RationalBasis) -> CharacterMultiset:
    """Multiplicities of the rational irreducibles in phi.

    Raises:
        GroupMismatchError: phi lives on another group
        NotACharacterError: phi is not integral or a multiplicity is not a
            non-negative integer
    """
    if phi.group is not basis.group:
        raise GroupMismatchError(f"Class function on {phi.group.name} decomposed over {basis.group_id}")
    values = phi.integer_values()
    G = basis.group
    counts: Dict[str, int] = {}
    for chi in basis.characters:
        cv = chi.values
        numerator = Fraction(sum(v * w * c.size for v, w, c in zip(values, cv, G.classes)), G.order)
        norm = Fraction(sum(w * w * c.size for w, c in zip(cv, G.classes)), G.order)
        mult = numerator / norm
        if mult.denominator != 1 or mult < 0:
            raise NotACharacterError(f"Multiplicity {mult} of {chi.label} is not a non-negative integer")
        if mult:
            counts[chi.label] = int(mult)
    result = basis.multiset(counts)
    if basis.class_function(result).integer_values() != values:
        raise NotACharacterError("Class function is not a combination of rational irreducibles")
    return result


def is_symplectic(chi: RationalCharacter) -> bool:
    return chi.symplectic


def symplectic_realizable(W: CharacterMultiset, basis: RationalBasis) -> bool:
    """Every non-symplectic constituent occurs with even multiplicity."""
    if W.is_empty():
        raise ContractError("symplectic_realizable needs a non-empty multiset")
    basis._check(W)
    return all(basis.get(label).symplectic or mult % 2 == 0 for label, mult in W.counts)


def kernel_classes(W: CharacterMultiset, basis: RationalBasis) -> FrozenSet[int]:
    basis._check(W)
    kernel = frozenset(range(len(basis.group.classes)))
    for label, _ in W.counts:
        kernel &= basis.get(label).kernel
    return kernel


def faithful(W: CharacterMultiset, basis: RationalBasis) -> bool:
    """The constituent kernels intersect in the identity class only."""
    return kernel_classes(W, basis) == frozenset({0})


def kernel_subgroup(chi: RationalCharacter) -> Subgroup:
    G = chi.character.group
    members = set()
    for k in chi.kernel:
        members |= G.classes[k].members
    return subgroup_from_members(G, members)


def restriction_fixed_rank(chi: ClassFunction, S: Subgroup) -> int:
    """Dimension of the S-fixed vectors, <Res chi, 1>_S."""
    G = chi.group
    if S.parent is not G:
        raise GroupMismatchError("Subgroup of another group")
    total = Cyclotomic.zero()
    for i in S.members:
        total = total + chi.values[G.class_index[i]]
    return (total / S.order).integer_value()


def _galois_orbits(table: CharacterTable) -> List[List[int]]:
    G = table.group
    lookup = {chi.values: idx for idx, chi in enumerate(table.characters)}
    units = [a for a in range(1, G.exponent) if gcd(a, G.exponent) == 1] or [1]
    maps = [G.power_map(a) for a in units]
    seen = set()
    orbits = []
    for idx, chi in enumerate(table.characters):
        if idx in seen:
            continue
        orbit = set()
        for pm in maps:
            image = tuple(chi.values[pm[k]] for k in range(len(pm)))
            if image not in lookup:
                raise CharacterTableError(f"{G.name}: Galois image of character {idx} is not in the table")
            orbit.add(lookup[image])
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def rationalize(table: CharacterTable, group_id: Optional[str] = None,
                kernel: Optional[Subgroup] = None) -> RationalBasis:
    """Rational irreducible characters from a complete complex table.

    Args:
        table: Complete character table
        group_id: Catalog identifier; selects family letters and validation
        kernel: Normal subgroup whose quotient supplies inflation labels

    Raises:
        CatalogMismatchError: degrees disagree with the catalog
    """
    G = table.group
    spec = CATALOG_SPECS.get(group_id) if group_id else None
    family = spec.family if spec else "chi"
    quotient_family = spec.quotient_family if spec else None

    raw = []
    for orbit in _galois_orbits(table):
        total = direct_sum(*(table.characters[i] for i in orbit))
        if not total.is_integral():
            raise CharacterTableError(f"{G.name}: Galois orbit sum {orbit} is not rational")
        indicator = frobenius_schur(table.characters[orbit[0]])
        multiplier = 2 if indicator == -1 else 1
        values = [multiplier * v for v in total.integer_values()]
        raw.append((values, multiplier, indicator, tuple(orbit)))

    own_blocks = [(c.size, c.order) for c in G.classes]
    quotient = quotient_classes(G, kernel) if kernel is not None and quotient_family else None
    quotient_blocks: List[Tuple[int, int]] = []
    kernel_class_set: set = set()
    if quotient is not None:
        quotient_blocks = [(q.size, q.order) for q in quotient]
        kernel_class_set = {G.class_index[x] for x in kernel.members}

    entries = []
    for values, multiplier, indicator, orbit in raw:
        degree = values[0]
        kernel_set = frozenset(k for k, v in enumerate(values) if v == degree)
        trivial = all(v == degree for v in values) and degree == 1
        inflated = quotient is not None and not trivial and kernel_class_set <= kernel_set
        if inflated:
            key = _canonical_key([values[q.classes[0]] for q in quotient], quotient_blocks)
        else:
            key = _canonical_key(values, own_blocks)
        wedge_trivial = _trivial_multiplicity(_wedge_values(values, G), G)
        symplectic = degree % 2 == 0 and wedge_trivial >= 1
        entries.append(dict(values=values, degree=degree, kernel=kernel_set, trivial=trivial,
                            inflated=inflated, key=key, multiplier=multiplier,
                            indicator=indicator, orbit=orbit, symplectic=symplectic))

    groups: Dict[Tuple[bool, int], List[dict]] = {}
    for e in entries:
        if not e["trivial"]:
            groups.setdefault((e["inflated"], e["degree"]), []).append(e)
    for (inflated, degree), members in groups.items():
        # Letters: sums of complex-conjugate pairs (indicator 0) first, then
        # canonical value keys descending.
        members.sort(key=lambda e: e["key"], reverse=True)
        members.sort(key=lambda e: e["indicator"])
        prefix = quotient_family if inflated else family
        for e, suffix in zip(members, _suffixes(len(members))):
            e["label"] = f"{prefix}{degree}{suffix}" + ("hat" if inflated else "")
    for e in entries:
        if e["trivial"]:
            e["label"] = "1"

    entries.sort(key=lambda e: (not e["trivial"], e["degree"], e["inflated"], e["label"]))
    characters = tuple(
        RationalCharacter(
            label=e["label"],
            character=ClassFunction.from_integers(G, e["values"]),
            degree=e["degree"],
            kernel=e["kernel"],
            schur_multiplier=e["multiplier"],
            symplectic=e["symplectic"],
            indicator=e["indicator"],
            constituents=e["orbit"],
            inflated=e["inflated"],
        )
        for e in entries
    )
    basis = RationalBasis(G, group_id or G.name, characters, table)
    if spec is not None:
        _validate(basis, spec.simple, spec.expected_degrees)
    return basis


def _validate(basis: RationalBasis, simple: bool, expected: Tuple[int, ...]) -> None:
    if simple:
        degrees = sorted(c.degree for c in basis.nontrivial())
    else:
        degrees = sorted(c.degree for c in basis.characters if c.kernel == frozenset({0}) and c.degree <= 10)
    if degrees != sorted(expected):
        raise CatalogMismatchError(
            f"{basis.group_id}: rational degrees {degrees} differ from catalog {sorted(expected)}"
        )


@lru_cache(maxsize=None)
def rational_basis(group_id: str) -> RationalBasis:
    """Validated rational irreducibles of a catalog group."""
    entry = catalog_group(group_id)
    table = character_table(entry.group)
    basis = rationalize(table, group_id, entry.kernel)
    logger.info(f"{group_id}: rational irreducibles {', '.join(basis.labels())}")
    return basis
