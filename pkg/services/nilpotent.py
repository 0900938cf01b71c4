"""
Free nilpotent groups of class at most 3.

Elements carry integer coordinates over a Hall basis of basic commutators.
Products are computed in the rational Lie algebra through the
Baker-Campbell-Hausdorff series, which terminates in class 3, and are then
collected back into ordered powers of basic commutators. Automorphisms given
by generator words induce Lie algebra maps whose graded blocks are the
actions on the lower central layers.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from services.char_theory import ClassFunction, RationalCharacter, decompose, rational_basis
from services.group_catalog import catalog_group
from services.group_core import FiniteGroup, close_group, integer_matrix
from services.lattice_cohomology import LatticeAction
from utils.errors import AutomorphismError, ContractError, GroupMismatchError, ShapeError
from utils.integer_matrix import as_matrix, determinant, identity, kernel_basis, rank, saturation, zeros
from utils.models import CharacterMultiset

logger = logging.getLogger(__name__)

MAX_CLASS = 3
LieVector = Tuple[Fraction, ...]
Word = Tuple[Tuple[int, int], ...]

HALF = Fraction(1, 2)
TWELFTH = Fraction(1, 12)


class HallBasis:
    """Basic commutators of the free nilpotent Lie algebra on m generators.

    Degree 1: e_i. Degree 2: [e_i, e_j] with i < j. Degree 3:
    [[e_i, e_j], e_k] with i < j and k >= i. Labels are index tuples in
    lexicographic order within each degree.
    """

    def __init__(self, m: int, c: int):
        if m < 1:
            raise ContractError(f"Need at least one generator, got m={m}")
        if not 1 <= c <= MAX_CLASS:
            raise ContractError(f"Nilpotency class must be between 1 and {MAX_CLASS}, got {c}")
        self.m = m
        self.c = c
        layers: List[List[Tuple[int, ...]]] = [[(i,) for i in range(m)]]
        if c >= 2:
            layers.append([(i, j) for i in range(m) for j in range(i + 1, m)])
        if c >= 3:
            layers.append([(i, j, k) for i in range(m) for j in range(i + 1, m) for k in range(i, m)])
        self.labels: Tuple[Tuple[int, ...], ...] = tuple(label for layer in layers for label in layer)
        self.index: Dict[Tuple[int, ...], int] = {label: u for u, label in enumerate(self.labels)}
        self.layer_ranks: Tuple[int, ...] = tuple(len(layer) for layer in layers)
        self.dimension = len(self.labels)
        self._structure = self._structure_constants()

    def __repr__(self) -> str:
        return f"HallBasis(m={self.m}, c={self.c}, ranks={self.layer_ranks})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HallBasis) and (self.m, self.c) == (other.m, other.c)

    def __hash__(self) -> int:
        return hash((self.m, self.c))

    @property
    def hirsch_length(self) -> int:
        return self.dimension

    def degree(self, u: int) -> int:
        return len(self.labels[u])

    def layer_slice(self, k: int) -> slice:
        if not 1 <= k <= self.c:
            raise ContractError(f"Layer {k} out of range 1..{self.c}")
        start = sum(self.layer_ranks[:k - 1])
        return slice(start, start + self.layer_ranks[k - 1])

    def _degree_three(self, i: int, j: int, k: int) -> Dict[int, int]:
        """[[e_i, e_j], e_k] for i < j in the basis; Jacobi when k < i."""
        if k >= i:
            return {self.index[(i, j, k)]: 1}
        return {self.index[(k, j, i)]: 1, self.index[(k, i, j)]: -1}

    def _structure_constants(self) -> Dict[Tuple[int, int], Dict[int, int]]:
        table: Dict[Tuple[int, int], Dict[int, int]] = {}
        for u, a in enumerate(self.labels):
            for v, b in enumerate(self.labels):
                if len(a) + len(b) > self.c:
                    continue
                if len(a) == 1 and len(b) == 1:
                    i, j = a[0], b[0]
                    if i < j:
                        table[(u, v)] = {self.index[(i, j)]: 1}
                    elif i > j:
                        table[(u, v)] = {self.index[(j, i)]: -1}
                elif len(a) == 2 and len(b) == 1:
                    table[(u, v)] = self._degree_three(a[0], a[1], b[0])
                elif len(a) == 1 and len(b) == 2:
                    table[(u, v)] = {w: -x for w, x in self._degree_three(b[0], b[1], a[0]).items()}
        return table

    def zero(self) -> LieVector:
        return (Fraction(0),) * self.dimension

    def unit(self, u: int, coefficient=1) -> LieVector:
        vector = [Fraction(0)] * self.dimension
        vector[u] = Fraction(coefficient)
        return tuple(vector)

    def bracket(self, X: LieVector, Y: LieVector) -> LieVector:
        result = [Fraction(0)] * self.dimension
        xs = [(u, x) for u, x in enumerate(X) if x]
        ys = [(v, y) for v, y in enumerate(Y) if y]
        for u, x in xs:
            for v, y in ys:
                for w, coefficient in self._structure.get((u, v), {}).items():
                    result[w] += coefficient * x * y
        return tuple(result)

    def bch(self, X: LieVector, Y: LieVector) -> LieVector:
        """log(exp X exp Y) = X + Y + [X,Y]/2 + ([X,[X,Y]] + [Y,[Y,X]])/12 in class <= 3."""
        XY = self.bracket(X, Y)
        result = _add(X, Y, _scale(XY, HALF))
        if self.c >= 3:
            result = _add(result, _scale(_add(self.bracket(X, XY), self.bracket(Y, self.bracket(Y, X))), TWELFTH))
        return result

    def name(self, u: int, letters: Sequence[str]) -> str:
        label = [letters[i] for i in self.labels[u]]
        if len(label) == 1:
            return label[0]
        text = f"[{label[0]},{label[1]}]"
        return text if len(label) == 2 else f"[{text},{label[2]}]"

    @cached_property
    def _commutator_logs(self) -> Tuple[LieVector, ...]:
        """log of the group commutator attached to each basis label."""
        logs: List[LieVector] = []
        for u, label in enumerate(self.labels):
            if len(label) == 1:
                logs.append(self.unit(u))
            elif len(label) == 2:
                logs.append(_group_commutator(self, self.unit(label[0]), self.unit(label[1])))
            else:
                logs.append(_group_commutator(self, logs[self.index[label[:2]]], self.unit(label[2])))
        return tuple(logs)


def _add(*vectors: LieVector) -> LieVector:
    return tuple(sum(parts, Fraction(0)) for parts in zip(*vectors))


def _scale(X: LieVector, k) -> LieVector:
    return tuple(k * x for x in X)


def _group_commutator(basis: HallBasis, A: LieVector, B: LieVector) -> LieVector:
    """log(a^-1 b^-1 a b) for a = exp A, b = exp B."""
    return basis.bch(basis.bch(_scale(A, -1), _scale(B, -1)), basis.bch(A, B))


@lru_cache(maxsize=None)
def hall_basis(m: int, c: int) -> HallBasis:
    basis = HallBasis(m, c)
    logger.debug(f"Hall basis m={m}, c={c}: layer ranks {basis.layer_ranks}")
    return basis


def witt_count(m: int, k: int) -> int:
    """Rank of the degree-k layer of the free Lie algebra on m generators, k <= 3."""
    return {1: m, 2: (m * m - m) // 2, 3: (m ** 3 - m) // 3}[k]


@dataclass(frozen=True)
class FNElement:
    """Element of the free nilpotent group: x_1^a_1 ... x_m^a_m * prod C_u^b_u in basis order."""
    basis: HallBasis = field(repr=False)
    coordinates: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coordinates) != self.basis.dimension:
            raise ShapeError(f"Expected {self.basis.dimension} coordinates, got {len(self.coordinates)}")

    @classmethod
    def identity(cls, basis: HallBasis) -> "FNElement":
        return cls(basis, (0,) * basis.dimension)

    @classmethod
    def generator(cls, basis: HallBasis, i: int, exponent: int = 1) -> "FNElement":
        coordinates = [0] * basis.dimension
        coordinates[i] = exponent
        return cls(basis, tuple(coordinates))

    def log(self) -> LieVector:
        basis = self.basis
        logs = basis._commutator_logs
        head = basis.zero()
        for i in range(basis.m):
            if self.coordinates[i]:
                head = basis.bch(head, _scale(logs[i], self.coordinates[i]))
        tail = basis.zero()
        for u in range(basis.m, basis.dimension):
            if self.coordinates[u]:
                tail = _add(tail, _scale(logs[u], self.coordinates[u]))
        return basis.bch(head, tail)

    @classmethod
    def from_log(cls, basis: HallBasis, Z: LieVector) -> "FNElement":
        """Collect a Lie algebra element back into basic-commutator coordinates."""
        logs = basis._commutator_logs
        coordinates = [0] * basis.dimension
        head = basis.zero()
        for i in range(basis.m):
            coordinates[i] = _integral(Z[i])
            if coordinates[i]:
                head = basis.bch(head, _scale(logs[i], coordinates[i]))
        rest = basis.bch(_scale(head, -1), Z)
        for k in range(2, basis.c + 1):
            layer = basis.layer_slice(k)
            peeled = basis.zero()
            for u in range(layer.start, layer.stop):
                coordinates[u] = _integral(rest[u])
                if coordinates[u]:
                    peeled = _add(peeled, _scale(logs[u], coordinates[u]))
            rest = basis.bch(_scale(peeled, -1), rest)
        if any(rest):
            raise ContractError("Collection left a non-zero remainder")
        return cls(basis, tuple(coordinates))

    def __mul__(self, other: "FNElement") -> "FNElement":
        return multiply(self, other)

    def inverse(self) -> "FNElement":
        return FNElement.from_log(self.basis, _scale(self.log(), -1))

    def __pow__(self, k: int) -> "FNElement":
        return FNElement.from_log(self.basis, _scale(self.log(), k))

    def is_identity(self) -> bool:
        return not any(self.coordinates)

    def layer(self, k: int) -> Tuple[int, ...]:
        return self.coordinates[self.basis.layer_slice(k)]


def _integral(x: Fraction) -> int:
    if x.denominator != 1:
        raise ContractError(f"Non-integral coordinate {x} during collection")
    return int(x)


def multiply(a: FNElement, b: FNElement) -> FNElement:
    if a.basis != b.basis:
        raise ShapeError(f"Basis mismatch: {a.basis} and {b.basis}")
    return FNElement.from_log(a.basis, a.basis.bch(a.log(), b.log()))


def commutator(a: FNElement, b: FNElement) -> FNElement:
    """a^-1 b^-1 a b."""
    return multiply(multiply(a.inverse(), b.inverse()), multiply(a, b))


def evaluate_word(basis: HallBasis, word: Word) -> FNElement:
    result = FNElement.identity(basis)
    for i, sign in word:
        result = multiply(result, FNElement.generator(basis, i, sign))
    return result


@dataclass(frozen=True)
class EndoSpec:
    """Endomorphism of a free group: one word per generator.

    Words are tuples of (generator index, +1 or -1).
    """
    name: str
    generators: Tuple[str, ...]
    images: Tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != len(self.generators):
            raise ShapeError(f"{self.name}: {len(self.generators)} generators but {len(self.images)} images")
        for word in self.images:
            for i, sign in word:
                if not 0 <= i < len(self.generators) or sign not in (1, -1):
                    raise ShapeError(f"{self.name}: malformed letter ({i}, {sign})")

    @property
    def m(self) -> int:
        return len(self.generators)

    def word_text(self, word: Word) -> str:
        if not word:
            return "1"
        return " ".join(self.generators[i] if s > 0 else self.generators[i].upper() for i, s in word)


@dataclass
class Automorphism:
    """Induced map of an EndoSpec on the free nilpotent quotient.

    Attributes:
        matrix: Rational Lie algebra map, column u = image of basis element u
        abelianization: Integer matrix on layer 1
        determinant: det of the abelianization
        accepted: Whether the map is an automorphism
    """
    basis: HallBasis = field(repr=False)
    name: str
    matrix: np.ndarray = field(repr=False)
    abelianization: np.ndarray = field(repr=False)
    determinant: int
    accepted: bool

    def require_accepted(self) -> None:
        if not self.accepted:
            raise AutomorphismError(
                f"{self.name} is not an automorphism: abelianization determinant {self.determinant}"
            )

    def apply(self, g: FNElement) -> FNElement:
        self.require_accepted()
        image = self.matrix @ np.array(g.log(), dtype=object)
        return FNElement.from_log(self.basis, tuple(Fraction(x) for x in image))


def _lie_matrix(basis: HallBasis, images: Sequence[LieVector]) -> np.ndarray:
    columns: List[LieVector] = []
    for label in basis.labels:
        if len(label) == 1:
            columns.append(images[label[0]])
        elif len(label) == 2:
            columns.append(basis.bracket(images[label[0]], images[label[1]]))
        else:
            inner = basis.bracket(images[label[0]], images[label[1]])
            columns.append(basis.bracket(inner, images[label[2]]))
    matrix = np.zeros((basis.dimension, basis.dimension), dtype=object)
    for u, column in enumerate(columns):
        for w, x in enumerate(column):
            matrix[w, u] = x
    return matrix


def automorphism_from(spec: EndoSpec, basis: HallBasis) -> Automorphism:
    """Induced endomorphism; accepted iff the abelianization has determinant +-1."""
    if spec.m != basis.m:
        raise ShapeError(f"{spec.name} has {spec.m} generators, basis has {basis.m}")
    images = [evaluate_word(basis, word).log() for word in spec.images]
    matrix = _lie_matrix(basis, images)
    ab = as_matrix([[int(matrix[r, i]) for i in range(basis.m)] for r in range(basis.m)])
    det = determinant(ab)
    accepted = abs(det) == 1
    if accepted:
        logger.debug(f"{spec.name}: automorphism of F({basis.m})/gamma_{basis.c + 1}")
    else:
        logger.info(f"{spec.name} rejected: abelianization determinant {det}")
    return Automorphism(basis, spec.name, matrix, ab, det, accepted)


def compose(alpha: Automorphism, beta: Automorphism) -> Automorphism:
    """alpha after beta."""
    if alpha.basis != beta.basis:
        raise ShapeError("Automorphisms over different bases")
    ab = alpha.abelianization @ beta.abelianization
    det = alpha.determinant * beta.determinant
    return Automorphism(alpha.basis, f"{alpha.name}{beta.name}", alpha.matrix @ beta.matrix,
                        ab, det, alpha.accepted and beta.accepted)


def _is_identity(matrix: np.ndarray) -> bool:
    n = matrix.shape[0]
    return all(matrix[i, j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def automorphism_order(alpha: Automorphism, cap: int = 120) -> int:
    """Least k <= cap with alpha^k the identity."""
    alpha.require_accepted()
    current = alpha.matrix
    for k in range(1, cap + 1):
        if _is_identity(current):
            return k
        current = current @ alpha.matrix
    raise AutomorphismError(f"{alpha.name} has no order up to {cap}")


def layer_action(alpha: Automorphism, k: int) -> np.ndarray:
    """Integer matrix of alpha on gamma_k / gamma_{k+1} in the basic-commutator basis."""
    layer = alpha.basis.layer_slice(k)
    block = alpha.matrix[layer, layer]
    return as_matrix([[_integral(Fraction(x)) for x in row] for row in block])


@dataclass(frozen=True)
class PairingTensor:
    """Skew pairing Q^m x Q^m -> Q^n with coefficients[i][j][k] = c_ij^k."""
    m: int
    n: int
    coefficients: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def __post_init__(self):
        c = self.coefficients
        if len(c) != self.m or any(len(row) != self.m or any(len(v) != self.n for v in row) for row in c):
            raise ShapeError(f"Pairing coefficients must be {self.m}x{self.m}x{self.n}")
        for i in range(self.m):
            for j in range(self.m):
                if any(c[i][j][k] != -c[j][i][k] for k in range(self.n)):
                    raise ContractError(f"Pairing is not skew at ({i}, {j})")

    @classmethod
    def from_forms(cls, m: int, forms: Sequence[Dict[Tuple[int, int], int]]) -> "PairingTensor":
        """One skew form per target coordinate, given on pairs i < j."""
        c = [[[0] * len(forms) for _ in range(m)] for _ in range(m)]
        for k, form in enumerate(forms):
            for (i, j), value in form.items():
                c[i][j][k] += value
                c[j][i][k] -= value
        return cls(m, len(forms), tuple(tuple(tuple(v) for v in row) for row in c))

    @classmethod
    def free(cls, m: int) -> "PairingTensor":
        pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
        return cls.from_forms(m, [{pair: 1} for pair in pairs])

    def is_onto(self) -> bool:
        wedge = as_matrix([[self.coefficients[i][j][k] for i in range(self.m) for j in range(i + 1, self.m)]
                           for k in range(self.n)], columns=self.m * (self.m - 1) // 2)
        return rank(wedge) == self.n


def pairing_radical(T: PairingTensor) -> np.ndarray:
    """Columns spanning R = {x : c(x, y) = 0 for all y}."""
    rows = [[T.coefficients[i][j][k] for i in range(T.m)] for j in range(T.m) for k in range(T.n)]
    radical = kernel_basis(as_matrix(rows, columns=T.m))
    logger.debug(f"Pairing radical: dimension {radical.shape[1]} of {T.m}")
    return radical


def isotypic_component(action: LatticeAction, chi: RationalCharacter) -> np.ndarray:
    """Saturated image of the rational isotypic projector sum chi(g^-1) g."""
    G = action.group
    if chi.character.group is not G:
        raise GroupMismatchError(f"Character {chi.label} is not a character of {G.name}")
    values = chi.values
    total = zeros(action.rank, action.rank)
    for g in range(G.order):
        total = total + values[G.class_index[G.inv(g)]] * action.matrices[g]
    if all(x == 0 for x in total.flat):
        return zeros(action.rank, 0)
    return saturation(total)


@dataclass
class ThetaAction:
    """A finite automorphism group identified with the catalog A5.

    Attributes:
        group: Catalog A5
        layers: Action of A5 on each lower central layer
        correspondence: Index in A5 of each element of the generated matrix group
    """
    basis: HallBasis = field(repr=False)
    group: FiniteGroup = field(repr=False)
    layers: Dict[int, LatticeAction] = field(repr=False)
    correspondence: Tuple[int, ...] = field(repr=False)

    def layer_character(self, k: int) -> ClassFunction:
        action = self.layers[k]
        traces = [int(action.matrices[cls.rep_index].trace()) for cls in self.group.classes]
        return ClassFunction.from_integers(self.group, traces)

    def layer_decomposition(self, k: int) -> CharacterMultiset:
        return decompose(self.layer_character(k), rational_basis("A5"))


def _a5_generators(G: FiniteGroup) -> Tuple[int, int]:
    orders = G.element_orders
    for s in range(G.order):
        if orders[s] != 2:
            continue
        for t in range(G.order):
            if orders[t] == 3 and orders[G.mul(s, t)] == 5:
                return s, t
    raise ContractError("No (2,3,5) generating pair in A5")


def identify_with_a5(sigma: Automorphism, tau: Automorphism) -> ThetaAction:
    """Map <sigma, tau> onto the catalog A5 through sigma^2 = tau^3 = (sigma tau)^5 = 1."""
    basis = sigma.basis
    checks = ((sigma, 2), (tau, 3), (compose(sigma, tau), 5))
    for alpha, expected in checks:
        found = automorphism_order(alpha)
        if found != expected:
            raise AutomorphismError(f"{alpha.name} has order {found}, expected {expected}")
    gens = [integer_matrix([[int(x) for x in row] for row in a.abelianization]) for a in (sigma, tau)]
    theta = close_group(gens, cap=60, name="theta")
    A5 = catalog_group("A5").group
    if theta.order != A5.order:
        raise ContractError(f"<sigma, tau> has order {theta.order}, expected 60")
    s, t = _a5_generators(A5)
    blocks = {k: [layer_action(sigma, k), layer_action(tau, k)] for k in range(1, basis.c + 1)}
    moves = list(zip((theta.index_of(g) for g in gens), (s, t), range(2)))
    correspondence = {0: 0}
    matrices = {k: {0: identity(basis.layer_ranks[k - 1])} for k in blocks}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for theta_gen, a5_gen, which in moves:
            y = theta.mul(x, theta_gen)
            image = A5.mul(correspondence[x], a5_gen)
            if y in correspondence:
                if correspondence[y] != image:
                    raise ContractError("sigma and tau do not map to a homomorphism onto A5")
                continue
            correspondence[y] = image
            for k in blocks:
                matrices[k][y] = matrices[k][x] @ blocks[k][which]
            frontier.append(y)
    inverse = {a: th for th, a in correspondence.items()}
    layers = {
        k: LatticeAction(A5, basis.layer_ranks[k - 1], [matrices[k][inverse[a]] for a in range(A5.order)])
        for k in blocks
    }
    logger.info(f"<{sigma.name}, {tau.name}> identified with A5 on {basis.c} layers")
    return ThetaAction(basis, A5, layers, tuple(correspondence[i] for i in range(theta.order)))


def k_quotient_hirsch_length(theta: ThetaAction, label: str = "rho4") -> int:
    """h(F/K) where K sits in layer 3 as the complement of the label-isotypic part."""
    if theta.basis.c < 3:
        raise ContractError("The K subgroup lives in layer 3; need class 3")
    chi = rational_basis("A5").get(label)
    kept = isotypic_component(theta.layers[3], chi).shape[1]
    return theta.basis.layer_ranks[0] + theta.basis.layer_ranks[1] + kept


@dataclass
class NilpotentReport:
    """Summary of the verification of an EndoSpec file."""
    basis: HallBasis
    automorphisms: List[Automorphism]
    orders: Dict[str, Optional[int]]
    theta: Optional[ThetaAction] = None
    layer_decompositions: Dict[int, CharacterMultiset] = field(default_factory=dict)
    k_hirsch_length: Optional[int] = None


def verify_endomorphisms(specs: Sequence[EndoSpec], c: int = MAX_CLASS) -> NilpotentReport:
    """Accept or reject each spec; when a sigma and tau are both present, identify them with A5."""
    if not specs:
        raise ContractError("No endomorphisms to verify")
    basis = hall_basis(specs[0].m, c)
    autos = [automorphism_from(spec, basis) for spec in specs]
    orders: Dict[str, Optional[int]] = {}
    for a in autos:
        try:
            orders[a.name] = automorphism_order(a) if a.accepted else None
        except AutomorphismError:
            logger.info(f"{a.name}: no finite order up to the cap")
            orders[a.name] = None
    report = NilpotentReport(basis, autos, orders)
    named = {a.name: a for a in autos}
    if "sigma" in named and "tau" in named and basis.m == 4:
        sigma, tau = named["sigma"], named["tau"]
        sigma_tau = compose(sigma, tau)
        report.orders[sigma_tau.name] = automorphism_order(sigma_tau)
        theta = identify_with_a5(sigma, tau)
        report.theta = theta
        report.layer_decompositions = {k: theta.layer_decomposition(k) for k in range(1, c + 1)}
        if c >= 3:
            report.k_hirsch_length = k_quotient_hirsch_length(theta)
    return report
