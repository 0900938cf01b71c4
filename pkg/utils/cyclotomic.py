"""
Exact cyclotomic numbers.

A Cyclotomic is an element of Q(zeta_N) stored by its rational coordinates in
the power basis 1, zeta_N, ..., zeta_N^(phi(N)-1) modulo the cyclotomic
polynomial Phi_N. Values with different orders are compared and combined by
lifting both sides to the lcm of their orders.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple, Union

from sympy import Matrix, Rational, cyclotomic_poly, divisors, totient

from utils.errors import ContractError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _reduction_table(order: int) -> Tuple[Tuple[int, ...], ...]:
    """Coordinates of zeta^k for k = 0..order-1 in the power basis."""
    phi = int(totient(order))
    # sympy gives coefficients high-to-low
    poly = [int(c) for c in reversed(cyclotomic_poly(order, polys=True).all_coeffs())]
    rows: List[Tuple[int, ...]] = []
    current = [0] * phi
    current[0] = 1
    for _ in range(order):
        rows.append(tuple(current))
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            for i in range(phi):
                current[i] -= top * poly[i]
    return tuple(rows)


def _reduce_powers(order: int, powers: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
    table = _reduction_table(order)
    coeffs = [Fraction(0)] * len(table[0])
    for k, c in powers.items():
        if not c:
            continue
        for i, t in enumerate(table[k % order]):
            if t:
                coeffs[i] += c * t
    return tuple(coeffs)


class Cyclotomic:
    """Exact element of a cyclotomic field."""

    __slots__ = ("order", "coeffs", "_normal")

    def __init__(self, order: int, coeffs: Iterable[Scalar]):
        if order < 1:
            raise ContractError(f"Cyclotomic order must be positive, got {order}")
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != int(totient(order)):
            raise ContractError(
                f"Expected {int(totient(order))} coordinates for order {order}, got {len(self.coeffs)}"
            )
        self._normal: Optional["Cyclotomic"] = None

    # construction

    @classmethod
    def rational(cls, value: Scalar) -> "Cyclotomic":
        return cls(1, (value,))

    @classmethod
    def zero(cls) -> "Cyclotomic":
        return cls.rational(0)

    @classmethod
    def one(cls) -> "Cyclotomic":
        return cls.rational(1)

    @classmethod
    def root_of_unity(cls, order: int, k: int = 1) -> "Cyclotomic":
        """zeta_order^k."""
        return cls.from_powers(order, {k % order: Fraction(1)})

    @classmethod
    def from_powers(cls, order: int, powers: Dict[int, Scalar]) -> "Cyclotomic":
        """Sum of c * zeta_order^k over the given exponent map."""
        return cls(order, _reduce_powers(order, {k: Fraction(c) for k, c in powers.items()}))

    @staticmethod
    def coerce(value: Union["Cyclotomic", Scalar]) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclotomic.rational(value)
        raise TypeError(f"Cannot interpret {value!r} as a cyclotomic number")

    # field embeddings

    def lift(self, order: int) -> "Cyclotomic":
        """The same number written in Q(zeta_order); self.order must divide order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ContractError(f"Cannot lift order {self.order} into order {order}")
        step = order // self.order
        return Cyclotomic(order, _reduce_powers(order, {j * step: c for j, c in enumerate(self.coeffs)}))

    def _common(self, other: "Cyclotomic") -> Tuple["Cyclotomic", "Cyclotomic"]:
        order = _lcm(self.order, other.order)
        return self.lift(order), other.lift(order)

    def galois(self, a: int) -> "Cyclotomic":
        """Apply the automorphism zeta -> zeta^a."""
        if gcd(a, self.order) != 1:
            raise ContractError(f"{a} is not a unit modulo {self.order}")
        return Cyclotomic(
            self.order,
            _reduce_powers(self.order, {(a * j) % self.order: c for j, c in enumerate(self.coeffs)}),
        )

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    # predicates

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ContractError(f"{self} is not rational")
        return self.coeffs[0]

    def integer_value(self) -> int:
        if not self.is_integer():
            raise ContractError(f"{self} is not a rational integer")
        return int(self.coeffs[0])

    # normalization

    def normalize(self) -> "Cyclotomic":
        """The same number written over its smallest conductor."""
        if self._normal is not None:
            return self._normal
        if self.is_rational():
            self._normal = Cyclotomic(1, (self.coeffs[0],))
            return self._normal
        units = [a for a in range(1, self.order) if gcd(a, self.order) == 1]
        for d in divisors(self.order):
            if d % 4 == 2:
                # Q(zeta_d) = Q(zeta_{d/2}) and d/2 was already tried
                continue
            fixing = [a for a in units if (a - 1) % d == 0 and a != 1]
            if all(self.galois(a) == self for a in fixing):
                self._normal = self._descend(d)
                return self._normal
        self._normal = self
        return self

    def _descend(self, d: int) -> "Cyclotomic":
        if d == self.order:
            return self
        phi = int(totient(d))
        columns = [Cyclotomic.root_of_unity(d, j).lift(self.order).coeffs for j in range(phi)]
        system = Matrix([[Rational(col[i].numerator, col[i].denominator) for col in columns]
                         for i in range(len(self.coeffs))])
        target = Matrix([Rational(c.numerator, c.denominator) for c in self.coeffs])
        solution, params = system.gauss_jordan_solve(target)
        if params.shape[0]:
            raise ContractError(f"Conductor descent to {d} is not unique")
        return Cyclotomic(d, (Fraction(int(s.p), int(s.q)) for s in solution))

    # arithmetic

    def __add__(self, other: Union["Cyclotomic", Scalar]) -> "Cyclotomic":
        a, b = self._common(Cyclotomic.coerce(other))
        return Cyclotomic(a.order, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, (-x for x in self.coeffs))

    def __sub__(self, other: Union["Cyclotomic", Scalar]) -> "Cyclotomic":
        return self + (-Cyclotomic.coerce(other))

    def __rsub__(self, other: Scalar) -> "Cyclotomic":
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other: Union["Cyclotomic", Scalar]) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, (x * other for x in self.coeffs))
        a, b = self._common(Cyclotomic.coerce(other))
        if a.order == 1:
            return Cyclotomic(1, (a.coeffs[0] * b.coeffs[0],))
        powers: Dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    powers[i + j] = powers.get(i + j, Fraction(0)) + x * y
        return Cyclotomic(a.order, _reduce_powers(a.order, powers))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            other = other.rational_value()
        return Cyclotomic(self.order, (x / other for x in self.coeffs))

    def __pow__(self, exponent: int) -> "Cyclotomic":
        if exponent < 0:
            raise ContractError("Negative powers of cyclotomic numbers are not supported")
        result = Cyclotomic.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        normal = self.normalize()
        if normal.order == 1:
            return hash(normal.coeffs[0])
        return hash((normal.order, normal.coeffs))

    def sort_key(self) -> Tuple:
        normal = self.normalize()
        return (normal.order, normal.coeffs)

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        normal = self.normalize()
        if normal.order == 1:
            return str(normal.coeffs[0])
        terms = []
        for k, c in enumerate(normal.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            power = f"z{normal.order}" if k == 1 else f"z{normal.order}^{k}"
            if c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f"-{power}")
            else:
                terms.append(f"{c}*{power}")
        return " + ".join(terms).replace("+ -", "- ")
