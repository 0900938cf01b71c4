"""
Finite fields GF(q) for the small prime powers used by the group catalog.

Elements are plain ints 0..q-1; for q = p^k the base-p digits of an element
are the coefficients of a polynomial in the field generator x, reduced modulo
a fixed irreducible polynomial.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from sympy import factorint

from utils.errors import ContractError

logger = logging.getLogger(__name__)

# low-to-high coefficients of the defining polynomial (monic, degree k)
IRREDUCIBLE_POLYNOMIALS: Dict[int, Tuple[int, ...]] = {
    4: (1, 1, 1),        # x^2 + x + 1
    8: (1, 1, 0, 1),     # x^3 + x + 1
    9: (1, 0, 1),        # x^2 + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    25: (2, 4, 1),       # x^2 + 4x + 2
    27: (1, 2, 0, 1),    # x^3 + 2x + 1
}


class GaloisField:
    """Arithmetic in GF(q) with precomputed tables."""

    def __init__(self, q: int):
        factors = factorint(q)
        if len(factors) != 1:
            raise ContractError(f"GF({q}) requires a prime power order")
        (self.p, self.k), = factors.items()
        self.q = q
        if self.k > 1 and q not in IRREDUCIBLE_POLYNOMIALS:
            raise ContractError(f"No defining polynomial registered for GF({q})")
        self._modulus = IRREDUCIBLE_POLYNOMIALS.get(q, (0, 1))
        self._add = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
        logger.debug(f"Built GF({q}) tables")

    def _digits(self, a: int) -> List[int]:
        digits = []
        for _ in range(self.k):
            digits.append(a % self.p)
            a //= self.p
        return digits

    def _from_digits(self, digits: List[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + (d % self.p)
        return value

    def _slow_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._from_digits([x + y for x, y in zip(self._digits(a), self._digits(b))])

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce by the monic modulus from the top degree down
        for deg in range(len(prod) - 1, self.k - 1, -1):
            c = prod[deg]
            if c:
                for i, m in enumerate(self._modulus):
                    prod[deg - self.k + i] = (prod[deg - self.k + i] - c * m) % self.p
        return self._from_digits(prod[: self.k])

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._from_digits([-d for d in self._digits(a)]) if self.k > 1 else (-a) % self.p

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.neg(b)]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return self._inv[a]

    def element(self, value: int) -> int:
        """Embed an integer into the prime subfield."""
        return value % self.p

    def generator_power(self, e: int) -> int:
        """x^e where x is the class of the polynomial generator."""
        x = 1 if self.k == 1 else self.p
        result = 1
        for _ in range(e):
            result = self.mul(result, x)
        return result

    def __repr__(self) -> str:
        return f"GaloisField({self.q})"


@lru_cache(maxsize=None)
def galois_field(q: int) -> GaloisField:
    """Shared field instance per order."""
    return GaloisField(q)
