"""
Number-theoretic bounds on finite subgroups of GL(n, Q).
"""
import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import List, Tuple

from sympy import factorint, isprime, nextprime, primerange, totient

from utils.errors import ContractError, OutOfScopeError
from utils.models import PPartBound, SimpleCandidate

logger = logging.getLogger(__name__)

MAX_DIMENSION = 14
TABLE_PRIMES = tuple(primerange(2, 18))

# Finite groups outside GL(10, Q) that still matter sit inside Sp(12, Q).
SYMPLECTIC_FALLBACK_DIMENSION = 12


def e_bound(n: int, p: int) -> int:
    """Exponent bound sum_{j>=0} floor(n / (p^j (p-1))) for the p-part of |G|, G < GL(n, Q)."""
    if n < 1:
        raise ContractError(f"Dimension must be positive, got {n}")
    if not isprime(p):
        raise ContractError(f"{p} is not prime")
    total, step = 0, p - 1
    while step <= n:
        total += n // step
        step *= p
    return total


def e_bound_table(max_n: int = MAX_DIMENSION, primes: Tuple[int, ...] = TABLE_PRIMES) -> List[PPartBound]:
    return [PPartBound(n, p, e_bound(n, p)) for n in range(1, max_n + 1) for p in primes]


def min_degree_cyclic(m: int) -> int:
    """Smallest n such that the cyclic group of order m embeds in GL(n, Q)."""
    if m < 1:
        raise ContractError(f"Cyclic order must be positive, got {m}")
    if m <= 2:
        return 0
    total = sum(int(totient(p ** k)) for p, k in factorint(m).items())
    return total - 1 if m % 4 == 2 else total


def sl_order(d: int, p: int) -> int:
    """|SL(d, p)| = p^(d(d-1)/2) * prod_{i=2..d} (p^i - 1)."""
    if d < 1:
        raise ContractError(f"Degree must be positive, got {d}")
    return p ** (d * (d - 1) // 2) * reduce(lambda acc, i: acc * (p ** i - 1), range(2, d + 1), 1)


@dataclass(frozen=True)
class GcdReport:
    """gcd of |SL(d, p)| over sampled primes with a stabilization check."""
    d: int
    m: int
    primes: Tuple[int, ...]
    gcd: int
    half_gcd: int

    @property
    def stable(self) -> bool:
        return self.gcd == self.half_gcd


def gcd_sl_orders(d: int, m: int, count: int) -> GcdReport:
    """gcd of |SL(d, p)| over the first count odd primes p > m.

    The gcd over the first half of the primes is kept so callers can see
    whether the value had already settled.
    """
    if count < 2:
        raise ContractError(f"Need at least two primes, got count={count}")
    primes: List[int] = []
    p = max(m, 2)
    while len(primes) < count:
        p = nextprime(p)
        primes.append(p)
    half = (count + 1) // 2
    half_gcd = reduce(gcd, (sl_order(d, q) for q in primes[:half]))
    total = reduce(gcd, (sl_order(d, q) for q in primes[half:]), half_gcd)
    logger.debug(f"gcd |SL({d},p)| over {count} primes > {m}: {total} (first half {half_gcd})")
    return GcdReport(d, m, tuple(primes), total, half_gcd)


def _prime_power_parts(n: int) -> List[int]:
    return [p ** k for p, k in factorint(n).items()]


def _psl2(q: int, family: str, parameter: int, name: str) -> SimpleCandidate:
    (r, _), = factorint(q).items()
    d = gcd(2, q - 1)
    orders = {r}
    for torus in ((q - 1) // d, (q + 1) // d):
        orders.update(_prime_power_parts(torus))
    return _candidate(family, parameter, name, orders)


def _suzuki(p: int) -> SimpleCandidate:
    q = 2 ** p
    s = (p + 1) // 2
    r = 2 ** s
    orders = {4}
    for torus in (q - 1, q + r + 1, q - r + 1):
        orders.update(_prime_power_parts(torus))
    return _candidate("Sz(2^p)", p, f"Sz({q})", orders)


def _candidate(family: str, parameter: int, name: str, orders) -> SimpleCandidate:
    orders = tuple(sorted(o for o in orders if o > 1))
    return SimpleCandidate(
        family=family,
        parameter=parameter,
        name=name,
        cyclic_orders=orders,
        min_dimension=max(min_degree_cyclic(o) for o in orders),
        has_order_13=any(o % 13 == 0 for o in orders),
    )


def minimal_simple_candidates() -> List[SimpleCandidate]:
    """Members of the minimal simple families small enough to matter for n <= 14."""
    candidates = []
    for p in primerange(2, 8):
        q = 2 ** p
        name = "A5" if q == 4 else ("SL(2,8)" if q == 8 else f"PSL(2,{q})")
        candidates.append(_psl2(q, "PSL(2,2^p)", p, name))
    for ell in (3, 5):
        candidates.append(_psl2(3 ** ell, "PSL(2,3^l)", ell, f"PSL(2,{3 ** ell})"))
    for p in primerange(5, 30):
        if (p * p) % 5 == 4:
            candidates.append(_psl2(p, "PSL(2,p)", p, f"PSL(2,{p})"))
    for p in (3, 5):
        candidates.append(_suzuki(p))
    candidates.append(_candidate("PSL(3,3)", 3, "PSL(3,3)", {3, 8, 13}))
    return candidates


def _family_rank(c: SimpleCandidate) -> Tuple[int, int]:
    if c.family.startswith("PSL(2"):
        q = 2 ** c.parameter if c.family == "PSL(2,2^p)" else (
            3 ** c.parameter if c.family == "PSL(2,3^l)" else c.parameter)
        return (0, q)
    return (1, c.parameter) if c.family == "Sz(2^p)" else (2, c.parameter)


def filter_minimal_simple(n: int) -> List[SimpleCandidate]:
    """Minimal simple groups whose forced cyclic orders fit in dimension n.

    From dimension 10 on, orders are tested against dimension 12 as well,
    since the remaining groups only need to embed in Sp(12, Q); those
    survivors are the ones carrying the order-13 flag.

    Raises:
        OutOfScopeError: n > 14
    """
    if n > MAX_DIMENSION:
        raise OutOfScopeError(f"Bounds are tabulated only through dimension {MAX_DIMENSION}, got {n}")
    if n < 1:
        raise ContractError(f"Dimension must be positive, got {n}")
    effective = n if n < 10 else max(n, SYMPLECTIC_FALLBACK_DIMENSION)
    survivors = [c for c in minimal_simple_candidates() if c.min_dimension <= effective]
    survivors.sort(key=lambda c: (c.has_order_13, _family_rank(c)))
    logger.debug(f"Minimal simple survivors in dimension {n}: {[c.name for c in survivors]}")
    return survivors
