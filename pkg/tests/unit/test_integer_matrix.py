"""
Unit tests for exact integer linear algebra.
"""
import random

import numpy as np
import pytest

from utils.integer_matrix import (
    as_matrix,
    determinant,
    exgcd,
    invariant_factors,
    is_unimodular,
    kernel_basis,
    rank,
    saturation,
    smith_normal_form,
    solve,
)
from utils.errors import ShapeError


class TestSmithNormalForm:
    """Diagonalization by unimodular row and column moves."""

    def test_decomposition_holds(self):
        A = as_matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        U, D, V = smith_normal_form(A)
        assert (U @ A @ V == D).all()
        assert is_unimodular(U) and is_unimodular(V)
        assert [int(D[i, i]) for i in range(3)] == [2, 6, 12]

    def test_random_matrices(self):
        rng = random.Random(1729)
        for _ in range(1000):
            rows, columns = rng.randint(1, 8), rng.randint(1, 8)
            A = as_matrix([[rng.choice((0, 0, rng.randint(-9, 9))) for _ in range(columns)]
                           for _ in range(rows)])
            U, D, V = smith_normal_form(A)
            assert (U @ A @ V == D).all()
            assert is_unimodular(U) and is_unimodular(V)
            size = min(rows, columns)
            assert all(D[i, j] == 0 for i in range(rows) for j in range(columns) if i != j)
            diagonal = [int(D[i, i]) for i in range(size)]
            nonzero = [d for d in diagonal if d]
            assert diagonal == nonzero + [0] * (size - len(nonzero))
            assert all(d > 0 for d in nonzero)
            assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))

    def test_invariant_factors(self):
        assert invariant_factors(as_matrix([[2, 4], [6, 8]])) == [2, 4]
        assert rank(as_matrix([[1, 2], [2, 4]])) == 1

    def test_exgcd(self):
        M = exgcd(12, 18)
        assert list(M @ np.array([12, 18], dtype=object)) == [6, 0]
        assert determinant(M) == 1

    def test_ragged(self):
        with pytest.raises(ShapeError):
            as_matrix([[1, 2], [3]])


class TestLattices:
    """Kernels, saturation and integral solving."""

    def test_kernel_basis(self):
        K = kernel_basis(as_matrix([[1, 1, 0]]))
        assert K.shape == (3, 2)
        assert not (as_matrix([[1, 1, 0]]) @ K).any()

    def test_saturation(self):
        S = saturation(as_matrix([[2], [4]]))
        assert S.shape == (2, 1)
        assert sorted(abs(int(x)) for x in S[:, 0]) == [1, 2]

    def test_solve(self):
        A = as_matrix([[2, 0], [0, 3]])
        assert list(A @ solve(A, [4, 9])) == [4, 9]
        assert solve(A, [3, 0]) is None

    def test_empty_determinant(self):
        assert determinant(as_matrix([], columns=0)) == 1
