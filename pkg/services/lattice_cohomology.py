"""
Integer lattice actions and cyclic-subgroup cohomology.

An extension of a finite group H by a lattice A is described by an action
H -> GL(A) and a normalized 2-cocycle. Torsion-freeness is decided through
the restrictions of the cocycle class to the cyclic subgroups of prime
order, where H^2(C; A) = A^C / N A for the norm N = sum of the powers of a
generator.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, ZZ, isprime
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form

from config.settings import config
from services.group_core import (
    Element,
    FiniteGroup,
    Subgroup,
    close_group,
    normalizer,
    normally_generates,
    sylow_subgroup,
)
from utils.errors import (
    ContractError,
    DegenerateInputError,
    NotCrystallographicError,
    ShapeError,
)
from utils.integer_matrix import (
    as_matrix,
    identity,
    invariant_factors,
    is_unimodular,
    kernel_basis,
    smith_normal_form,
    solve,
    zeros,
)

logger = logging.getLogger(__name__)

IntegerMatrix = np.ndarray
Vector = Tuple[int, ...]


def _same(a: IntegerMatrix, b: IntegerMatrix) -> bool:
    return a.shape == b.shape and bool((a == b).all())


def _vector(values: Sequence[int]) -> np.ndarray:
    return np.array([int(v) for v in values], dtype=object)


class LatticeAction:
    """A finite group acting on Z^n by unimodular matrices.

    Attributes:
        group: Acting group
        rank: Lattice rank n
        matrices: One n x n matrix per element index
    """

    def __init__(self, group: FiniteGroup, rank: int, matrices: Sequence[IntegerMatrix]):
        if len(matrices) != group.order:
            raise ShapeError(f"Expected {group.order} matrices, got {len(matrices)}")
        if any(m.shape != (rank, rank) for m in matrices):
            raise ShapeError(f"Action matrices must be {rank}x{rank}")
        self.group = group
        self.rank = rank
        self.matrices: Tuple[IntegerMatrix, ...] = tuple(matrices)
        self._verify()

    def _verify(self) -> None:
        G = self.group
        if not _same(self.matrices[0], identity(self.rank)):
            raise ShapeError("The identity element must act trivially")
        for s in G.generator_indices:
            if not is_unimodular(self.matrices[s]):
                raise ShapeError(f"Matrix of generator {G.elements[s]} is not unimodular")
        for i in range(G.order):
            for s in G.generator_indices:
                if not _same(self.matrices[G.mul(i, s)], self.matrices[i] @ self.matrices[s]):
                    raise ShapeError(f"Matrices do not respect the relations of {G.name}")

    @classmethod
    def from_generators(cls, group: FiniteGroup, generators: Sequence[Element],
                        images: Sequence[Sequence[Sequence[int]]]) -> "LatticeAction":
        """Extend generator images multiplicatively over the whole group.

        Args:
            group: Acting group
            generators: Elements of group generating it, in any order
            images: One integer matrix (row lists) per generator

        Raises:
            ShapeError: mismatched shapes, or an assignment that is not a homomorphism
        """
        if len(generators) != len(images):
            raise ShapeError(f"{len(generators)} generators but {len(images)} matrices")
        mats = [as_matrix(rows) for rows in images]
        rank = mats[0].shape[0] if mats else 0
        indices = [group.index_of(g) for g in generators]
        assigned: Dict[int, IntegerMatrix] = {0: identity(rank)}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for s, m in zip(indices, mats):
                y = group.mul(x, s)
                image = assigned[x] @ m
                if y not in assigned:
                    assigned[y] = image
                    frontier.append(y)
                elif not _same(assigned[y], image):
                    raise ShapeError(f"Generator matrices do not define an action of {group.name}")
        if len(assigned) != group.order:
            raise ShapeError(f"Generators span only {len(assigned)} of {group.order} elements")
        return cls(group, rank, [assigned[i] for i in range(group.order)])

    @classmethod
    def trivial(cls, group: FiniteGroup, rank: int) -> "LatticeAction":
        return cls(group, rank, [identity(rank)] * group.order)

    @classmethod
    def natural(cls, group: FiniteGroup) -> "LatticeAction":
        """A group of integer matrices acting on Z^n by itself."""
        n = group.identity.degree
        mats = [as_matrix([e.data[i * n:(i + 1) * n] for i in range(n)]) for e in group.elements]
        return cls(group, n, mats)

    def matrix(self, g: int) -> IntegerMatrix:
        return self.matrices[g]

    def act(self, g: int, v: Sequence[int]) -> Vector:
        return tuple(int(x) for x in self.matrices[g] @ _vector(v))

    def __repr__(self) -> str:
        return f"LatticeAction({self.group.name}, rank={self.rank})"


def permutation_lattice(group: FiniteGroup) -> LatticeAction:
    """Z^d permuted by a permutation group of degree d: g e_i = e_g(i)."""
    d = group.identity.degree
    mats = []
    for e in group.elements:
        m = zeros(d, d)
        for i in range(d):
            m[e.data[i], i] = 1
        mats.append(m)
    return LatticeAction(group, d, mats)


def deleted_permutation_lattice(group: FiniteGroup) -> LatticeAction:
    """The sublattice sum(x_i) = 0 of the permutation lattice, basis e_i - e_d."""
    d = group.identity.degree
    last = d - 1
    mats = []
    for e in group.elements:
        m = zeros(last, last)
        for i in range(last):
            if e.data[i] != last:
                m[e.data[i], i] += 1
            if e.data[last] != last:
                m[e.data[last], i] -= 1
        mats.append(m)
    return LatticeAction(group, last, mats)


def direct_sum(*actions: LatticeAction) -> LatticeAction:
    if not actions:
        raise ContractError("Direct sum of no actions")
    group = actions[0].group
    if any(a.group is not group for a in actions):
        raise ContractError("Direct summands must share the acting group")
    n = sum(a.rank for a in actions)
    mats = []
    for g in range(group.order):
        m = zeros(n, n)
        offset = 0
        for a in actions:
            m[offset:offset + a.rank, offset:offset + a.rank] = a.matrices[g]
            offset += a.rank
        mats.append(m)
    return LatticeAction(group, n, mats)


def restrict_action(action: LatticeAction, S: Subgroup) -> LatticeAction:
    """The action of S, re-indexed as a group of its own."""
    G = action.group
    sub = close_group(S.elements(), identity=G.identity, name=f"subgroup of {G.name}")
    return LatticeAction(sub, action.rank, [action.matrices[G.index_of(e)] for e in sub.elements])


def effective_action(action: LatticeAction) -> bool:
    """True iff only the identity acts as the identity matrix."""
    one = identity(action.rank)
    return not any(_same(action.matrices[g], one) for g in range(1, action.group.order))


def fixed_sublattice(action: LatticeAction, S: Subgroup) -> IntegerMatrix:
    """Columns spanning A^S, the saturated kernel of the stacked (g - I) over generators of S."""
    n = action.rank
    if not S.generators:
        return identity(n)
    one = identity(n)
    stacked = np.vstack([action.matrices[g] - one for g in S.generators])
    return kernel_basis(stacked)


def _cyclic_powers(group: FiniteGroup, c: int) -> List[int]:
    powers = [0]
    current = c
    while current != 0:
        powers.append(current)
        current = group.mul(current, c)
    return powers


def norm_matrix(action: LatticeAction, c: int) -> IntegerMatrix:
    """N = sum of action matrices over the powers of c."""
    total = zeros(action.rank, action.rank)
    for g in _cyclic_powers(action.group, c):
        total = total + action.matrices[g]
    return total


@dataclass(frozen=True)
class CyclicCohomology:
    """A^C / N A for C = <c>, with the change of basis used to read off classes.

    Attributes:
        basis: Columns spanning A^C
        relations: Image of N written in the basis coordinates
        factors: Invariant factors greater than 1
    """
    basis: IntegerMatrix = field(repr=False)
    relations: IntegerMatrix = field(repr=False)
    factors: Tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return not self.factors


def cyclic_cohomology(action: LatticeAction, c: int) -> CyclicCohomology:
    n = action.rank
    C = Subgroup(action.group, (c,) if c else (), frozenset(_cyclic_powers(action.group, c)))
    F = fixed_sublattice(action, C)
    N = norm_matrix(action, c)
    r = F.shape[1]
    X = zeros(r, n)
    for j in range(n):
        column = solve(F, N[:, j])
        if column is None:
            raise ContractError("Norm image is not contained in the fixed sublattice")
        X[:, j] = column
    factors = tuple(d for d in invariant_factors(X) if d != 1) if r else ()
    return CyclicCohomology(F, X, factors)


def h2_cyclic(action: LatticeAction, c: int) -> List[int]:
    """Invariant factors of H^2(<c>; A) = A^C / N A; empty when the group is trivial."""
    return list(cyclic_cohomology(action, c).factors)


class Cocycle2:
    """A normalized 2-cocycle given as a full table f(g, h) in Z^n.

    The cocycle identity g f(h, k) - f(gh, k) + f(g, hk) - f(g, h) = 0 is
    checked over all triples at construction.
    """

    def __init__(self, action: LatticeAction, table: Sequence[Sequence[Sequence[int]]]):
        G = action.group
        n = action.rank
        if len(table) != G.order or any(len(row) != G.order for row in table):
            raise ShapeError(f"Cocycle table must be {G.order}x{G.order}")
        self.action = action
        self.table: Tuple[Tuple[Vector, ...], ...] = tuple(
            tuple(tuple(int(x) for x in value) for value in row) for row in table
        )
        if any(len(v) != n for row in self.table for v in row):
            raise ShapeError(f"Cocycle values must have length {n}")
        zero = (0,) * n
        if any(v != zero for v in self.table[0]) or any(row[0] != zero for row in self.table):
            raise ContractError("Cocycle is not normalized")
        self._verify()

    @classmethod
    def zero(cls, action: LatticeAction) -> "Cocycle2":
        zero = (0,) * action.rank
        size = action.group.order
        return cls(action, [[zero] * size for _ in range(size)])

    @classmethod
    def from_entries(cls, action: LatticeAction, entries: Dict[Tuple[int, int], Sequence[int]]) -> "Cocycle2":
        """Table with the listed (g, h) entries and zeros elsewhere."""
        zero = (0,) * action.rank
        size = action.group.order
        table = [[zero] * size for _ in range(size)]
        for (g, h), value in entries.items():
            if not (0 <= g < size and 0 <= h < size):
                raise ShapeError(f"Element index out of range in cocycle entry ({g}, {h})")
            table[g][h] = tuple(value)
        return cls(action, table)

    def is_zero(self) -> bool:
        return all(not any(v) for row in self.table for v in row)

    def _verify(self) -> None:
        if self.is_zero():
            return
        G = self.action.group
        size = G.order
        mul = [[G.mul(a, b) for b in range(size)] for a in range(size)]
        values = [[_vector(v) for v in row] for row in self.table]
        for g in range(1, size):
            M = self.action.matrices[g]
            for h in range(1, size):
                gh = mul[g][h]
                for k in range(1, size):
                    lhs = M @ values[h][k] - values[gh][k] + values[g][mul[h][k]] - values[g][h]
                    if any(lhs):
                        raise ContractError(
                            f"Cocycle identity fails at ({G.elements[g]}, {G.elements[h]}, {G.elements[k]})"
                        )

    def value(self, g: int, h: int) -> Vector:
        return self.table[g][h]

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        if other.action is not self.action:
            raise ContractError("Cocycles over different actions")
        return Cocycle2(self.action, [
            [tuple(a + b for a, b in zip(u, v)) for u, v in zip(r1, r2)]
            for r1, r2 in zip(self.table, other.table)
        ])


def coboundary(action: LatticeAction, phi: Dict[int, Sequence[int]]) -> Cocycle2:
    """(d phi)(g, h) = g phi(h) - phi(gh) + phi(g), with phi(1) = 0 and missing values 0."""
    G = action.group
    zero = (0,) * action.rank
    values = {g: _vector(phi.get(g, zero)) for g in range(G.order)}
    if any(values[0]):
        raise ContractError("A normalized coboundary needs phi(1) = 0")
    table = [
        [tuple(int(x) for x in action.matrices[g] @ values[h] - values[G.mul(g, h)] + values[g])
         for h in range(G.order)]
        for g in range(G.order)
    ]
    return Cocycle2(action, table)


def cyclic_cocycle(action: LatticeAction, c: int, a: Sequence[int]) -> Cocycle2:
    """For H = <c> of order k: f(c^i, c^j) = a when i + j >= k, else 0.

    a must be fixed by c; the class of this cocycle is the class of a in A^C / N A.
    """
    G = action.group
    powers = _cyclic_powers(G, c)
    k = len(powers)
    if k != G.order:
        raise ContractError(f"{G.elements[c]} does not generate {G.name}")
    if action.act(c, a) != tuple(a):
        raise ContractError(f"{tuple(a)} is not fixed by {G.elements[c]}")
    exponent = {g: i for i, g in enumerate(powers)}
    entries = {
        (g, h): tuple(a)
        for g in powers for h in powers if exponent[g] + exponent[h] >= k
    }
    return Cocycle2.from_entries(action, entries)


@dataclass
class CrystalData:
    """An extension of a finite group by a lattice: action plus cocycle."""
    action: LatticeAction
    cocycle: Cocycle2
    name: str = "crystal"

    def __post_init__(self):
        if self.cocycle.action is not self.action:
            raise ContractError("Cocycle belongs to a different action")

    @property
    def group(self) -> FiniteGroup:
        return self.action.group


@dataclass(frozen=True)
class RestrictionClass:
    """Class of the restricted extension in A^C / N A, coordinates modulo factors."""
    element: int
    order: int
    factors: Tuple[int, ...]
    coordinates: Tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)


def restriction_sum(crystal: CrystalData, c: int) -> np.ndarray:
    """sum_{i<p} f(c^i, c), the translation part of the p-th power of a lift of c."""
    total = _vector((0,) * crystal.action.rank)
    for g in _cyclic_powers(crystal.group, c):
        total = total + _vector(crystal.cocycle.value(g, c))
    return total


def restriction_class(crystal: CrystalData, c: int) -> RestrictionClass:
    """Class of the extension restricted to <c>; zero iff the restriction splits.

    Raises:
        ContractError: c does not have prime order
    """
    G = crystal.group
    p = G.element_orders[c]
    if not isprime(p):
        raise ContractError(f"{G.elements[c]} has order {p}, which is not prime")
    coh = cyclic_cohomology(crystal.action, c)
    s = restriction_sum(crystal, c)
    if coh.basis.shape[1] == 0:
        if any(s):
            raise ContractError("Restriction sum is not fixed by c")
        return RestrictionClass(c, p, (), ())
    y = solve(coh.basis, s)
    if y is None:
        raise ContractError("Restriction sum is not fixed by c")
    U, D, _ = smith_normal_form(coh.relations)
    image = U @ y
    diagonal = [int(D[i, i]) for i in range(min(D.shape))]
    coordinates = tuple(
        int(image[i]) % d for i, d in enumerate(diagonal) if d > 1
    )
    return RestrictionClass(c, p, coh.factors, coordinates)


@dataclass(frozen=True)
class BieberbachVerdict:
    """Outcome of the torsion-freeness test.

    Attributes:
        torsion_free: True iff every prime-order restriction is non-zero
        classes: Restriction class per prime-order conjugacy class checked
        witness: Element index of a torsion witness when torsion_free is False
    """
    torsion_free: bool
    classes: Tuple[RestrictionClass, ...]
    witness: Optional[int] = None


def prime_order_representatives(G: FiniteGroup) -> List[int]:
    """Smallest-index representative of each class of prime-order elements."""
    return [cls.rep_index for cls in G.classes if isprime(cls.order)]


def is_bieberbach(crystal: CrystalData) -> BieberbachVerdict:
    """Torsion-freeness: every cyclic subgroup of prime order has non-zero restriction.

    Raises:
        DegenerateInputError: rank-0 lattice
        NotCrystallographicError: the action is not effective
    """
    action = crystal.action
    if action.rank == 0:
        raise DegenerateInputError("Lattice of rank 0")
    if not effective_action(action):
        raise NotCrystallographicError(f"{action.group.name} does not act effectively on the lattice")
    checked: List[RestrictionClass] = []
    for c in prime_order_representatives(crystal.group):
        cls = restriction_class(crystal, c)
        checked.append(cls)
        if cls.is_zero:
            logger.info(f"{crystal.name}: torsion at {crystal.group.elements[c]} (order {cls.order})")
            return BieberbachVerdict(False, tuple(checked), c)
    logger.info(f"{crystal.name}: torsion-free over {len(checked)} prime-order classes")
    return BieberbachVerdict(True, tuple(checked))


def torsion_search(crystal: CrystalData, c: int, bound: Optional[int] = None) -> Optional[Vector]:
    """Brute-force search for a in [-bound, bound]^n with N a = -sum f(c^i, c).

    A solution gives an element of finite order over c in the extension.
    """
    bound = config.cohomology_config.oracle_bound if bound is None else bound
    N = norm_matrix(crystal.action, c)
    target = -restriction_sum(crystal, c)
    for a in itertools.product(range(-bound, bound + 1), repeat=crystal.action.rank):
        if ((N @ _vector(a)) == target).all():
            return a
    return None


def _nonzero_factors(M: Matrix) -> List[int]:
    D = sympy_smith_normal_form(M, domain=ZZ)
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


def norm_equation_solvable(crystal: CrystalData, c: int) -> bool:
    """Whether N a = -sum f(c^i, c) has an integer solution.

    Uses the criterion that A x = b is solvable over Z iff A and [A | b]
    have the same rank and the same gcd of maximal minors, read off from
    sympy's Smith normal form.
    """
    N = norm_matrix(crystal.action, c)
    s = restriction_sum(crystal, c)
    A = Matrix([[int(x) for x in row] for row in N])
    augmented = A.row_join(Matrix([-int(x) for x in s]))
    plain, extended = _nonzero_factors(A), _nonzero_factors(augmented)
    if len(plain) != len(extended):
        return False
    product = int(abs(np.prod(np.array(plain, dtype=object))))
    return product == int(abs(np.prod(np.array(extended, dtype=object))))


def split_witness(H: FiniteGroup, p: int, action: LatticeAction) -> Optional[Subgroup]:
    """N_H(C) when the Sylow p-subgroup C is cyclic and fixes no non-zero vector."""
    if action.group is not H:
        raise ContractError("Action is not over the given group")
    C = sylow_subgroup(H, p)
    if not C.is_cyclic:
        return None
    if fixed_sublattice(action, C).shape[1] != 0:
        return None
    N = normalizer(H, C)
    logger.debug(f"Split witness for p={p} in {H.name}: normalizer of order {N.order}")
    return N


def central_isolator_applies(p: int, n: int, g: Element, H: FiniteGroup) -> bool:
    """p > n and g normally generates H."""
    return p > n and normally_generates(g, H)
