"""
Unit tests for the number-theoretic bounds.
"""
import pytest

from services.bounds import (
    MAX_DIMENSION,
    TABLE_PRIMES,
    e_bound,
    e_bound_table,
    filter_minimal_simple,
    gcd_sl_orders,
    min_degree_cyclic,
    sl_order,
)
from utils.errors import ContractError, OutOfScopeError


class TestExponentBound:
    """p-part exponent bounds for finite subgroups of GL(n, Q)."""

    @pytest.mark.parametrize("n,p,expected", [(4, 2, 7), (4, 3, 2), (6, 7, 1), (6, 5, 1), (12, 13, 1), (1, 3, 0)])
    def test_values(self, n, p, expected):
        assert e_bound(n, p) == expected

    def test_rejects_composite(self):
        with pytest.raises(ContractError):
            e_bound(4, 9)

    def test_table_shape(self):
        rows = e_bound_table()
        assert len(rows) == MAX_DIMENSION * len(TABLE_PRIMES)
        assert rows[0].n == 1 and rows[0].p == 2


class TestCyclicDegree:
    """Minimal rational degree of a cyclic group."""

    @pytest.mark.parametrize("m,expected", [(1, 0), (2, 0), (5, 4), (6, 2), (7, 6), (12, 4), (13, 12)])
    def test_values(self, m, expected):
        assert min_degree_cyclic(m) == expected


class TestSLOrders:
    """|SL(d, p)| and their gcd over many primes."""

    def test_sl_order(self):
        assert sl_order(2, 5) == 120
        assert sl_order(2, 7) == 336

    def test_gcd_stabilizes(self):
        report = gcd_sl_orders(2, 3, 10)
        assert report.gcd == 24
        assert report.stable
        assert report.primes[0] == 5

    @pytest.mark.parametrize("d,expected", [(3, 48), (5, 23040)])
    def test_gcd_from_three(self, d, expected):
        report = gcd_sl_orders(d, 1, 50)
        assert report.primes[0] == 3
        assert report.gcd == expected
        assert report.stable
        assert gcd_sl_orders(d, 1, 100).gcd == expected

    def test_degree_five_two_part_comes_from_three(self):
        # |SL(5,3)| has 2-part 2^9, so 2^10 cannot divide the gcd.
        assert sl_order(5, 3) % 2 ** 9 == 0
        assert sl_order(5, 3) % 2 ** 10 != 0
        assert 46080 % gcd_sl_orders(5, 1, 50).gcd == 0

    def test_needs_two_primes(self):
        with pytest.raises(ContractError):
            gcd_sl_orders(2, 3, 1)


class TestMinimalSimple:
    """Filtering the minimal simple groups by forced cyclic orders."""

    def test_dimension_four(self):
        assert [c.name for c in filter_minimal_simple(4)] == ["A5"]

    def test_dimension_six(self):
        assert [c.name for c in filter_minimal_simple(6)] == ["A5", "PSL(2,7)", "SL(2,8)"]

    def test_order_thirteen_flag_sorts_last(self):
        survivors = filter_minimal_simple(12)
        flags = [c.has_order_13 for c in survivors]
        assert flags == sorted(flags)
        assert "PSL(3,3)" in [c.name for c in survivors if c.has_order_13]

    def test_symplectic_fallback(self):
        assert "PSL(3,3)" in [c.name for c in filter_minimal_simple(10)]
        assert "PSL(3,3)" not in [c.name for c in filter_minimal_simple(9)]

    def test_out_of_scope(self):
        with pytest.raises(OutOfScopeError):
            filter_minimal_simple(MAX_DIMENSION + 1)
