"""
Exact integer linear algebra on numpy object arrays.

The Smith normal form drives every kernel, saturation and quotient
computation on lattices. Row and column operations are 2x2 determinant-one
moves built from the extended Euclidean algorithm, tracked together with
their inverses.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix

from utils.errors import ShapeError

logger = logging.getLogger(__name__)


def as_matrix(rows: Sequence[Sequence[int]], columns: Optional[int] = None) -> np.ndarray:
    """Build an integer matrix with Python int entries.

    Args:
        rows: Row-major entries
        columns: Column count, needed only when rows is empty

    Returns:
        numpy object array
    """
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, columns or 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ShapeError("Ragged integer matrix")
    matrix = np.zeros((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            matrix[i, j] = int(value)
    return matrix


def identity(n: int) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def zeros(rows: int, columns: int) -> np.ndarray:
    return np.zeros((rows, columns), dtype=object)


def to_rows(matrix: np.ndarray) -> List[List[int]]:
    return [[int(x) for x in row] for row in matrix]


def determinant(matrix: np.ndarray) -> int:
    if matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f"Determinant of non-square {matrix.shape} matrix")
    if matrix.shape[0] == 0:
        return 1
    return int(Matrix(to_rows(matrix)).det())


def is_unimodular(matrix: np.ndarray) -> bool:
    return matrix.shape[0] == matrix.shape[1] and abs(determinant(matrix)) == 1


def exgcd(a: int, b: int) -> np.ndarray:
    """2x2 determinant-one M with M @ [a, b] = [gcd(a, b), 0].

    If a divides b, M[0, 1] is 0.
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign
    M = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1].copy()
    g = M[0, 0]
    M = M[:, 1:]
    M[:, 0] *= a_sign
    M[:, 1] *= b_sign
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    return M


def _inverse_2x2(M: np.ndarray) -> np.ndarray:
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=object)


class _Reduction:
    """In-place diagonalization state: U @ A @ V == D, with tracked inverses."""

    def __init__(self, A: np.ndarray):
        rows, columns = A.shape
        self.D = A.copy().astype(object)
        self.U, self.Uinv = identity(rows), identity(rows)
        self.V, self.Vinv = identity(columns), identity(columns)

    def row_op(self, i: int, j: int, M: np.ndarray) -> None:
        self.D[[i, j]] = M @ self.D[[i, j]]
        self.U[[i, j]] = M @ self.U[[i, j]]
        self.Uinv[:, [i, j]] = self.Uinv[:, [i, j]] @ _inverse_2x2(M)

    def col_op(self, i: int, j: int, M: np.ndarray) -> None:
        self.D[:, [i, j]] = self.D[:, [i, j]] @ M
        self.V[:, [i, j]] = self.V[:, [i, j]] @ M
        self.Vinv[[i, j]] = _inverse_2x2(M) @ self.Vinv[[i, j]]

    def clear_col(self, i: int) -> bool:
        if all(self.D[k, i] == 0 for k in range(i + 1, self.D.shape[0])):
            return False
        for k in range(i + 1, self.D.shape[0]):
            if self.D[k, i] != 0:
                self.row_op(i, k, exgcd(self.D[i, i], self.D[k, i]))
        return True

    def clear_row(self, i: int) -> bool:
        if all(self.D[i, k] == 0 for k in range(i + 1, self.D.shape[1])):
            return False
        for k in range(i + 1, self.D.shape[1]):
            if self.D[i, k] != 0:
                self.col_op(i, k, exgcd(self.D[i, i], self.D[i, k]).T)
        return True

    def pivot(self, i: int) -> None:
        self.clear_col(i)
        while self.clear_row(i) and self.clear_col(i):
            pass

    def permute(self, order: List[int]) -> None:
        rows, columns = self.D.shape
        row_perm = order + list(range(len(order), rows))
        col_perm = order + list(range(len(order), columns))
        self.D = self.D[row_perm][:, col_perm]
        self.U = self.U[row_perm]
        self.Uinv = self.Uinv[:, row_perm]
        self.V = self.V[:, col_perm]
        self.Vinv = self.Vinv[col_perm]

    def negate_row(self, i: int) -> None:
        self.D[i] = -self.D[i]
        self.U[i] = -self.U[i]
        self.Uinv[:, i] = -self.Uinv[:, i]


def _smith(A: np.ndarray) -> _Reduction:
    if A.ndim != 2:
        raise ShapeError(f"Expected a 2-dimensional matrix, got shape {A.shape}")
    red = _Reduction(A)
    size = min(A.shape)
    for i in range(size):
        red.pivot(i)
    # nonzero diagonal entries first
    diagonal = [red.D[i, i] for i in range(size)]
    order = [i for i in range(size) if diagonal[i] != 0] + [i for i in range(size) if diagonal[i] == 0]
    red.permute(order)
    rank = sum(1 for d in diagonal if d != 0)
    # divisibility chain
    for i in range(rank):
        for j in range(i + 1, rank):
            if red.D[j, j] % red.D[i, i] != 0:
                red.D[:, i] += red.D[:, j]
                red.V[:, i] += red.V[:, j]
                red.Vinv[j] -= red.Vinv[i]
                red.pivot(i)
    for i in range(rank):
        if red.D[i, i] < 0:
            red.negate_row(i)
    return red


def smith_normal_form(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form.

    Args:
        A: Integer matrix

    Returns:
        (U, D, V) with U @ A @ V == D, U and V unimodular, D diagonal with
        non-negative entries d_1 | d_2 | ... followed by zeros
    """
    red = _smith(A)
    return red.U, red.D, red.V


def invariant_factors(A: np.ndarray) -> List[int]:
    """Non-zero diagonal entries of the Smith form, in divisibility order."""
    D = _smith(A).D
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


def rank(A: np.ndarray) -> int:
    return len(invariant_factors(A))


def kernel_basis(A: np.ndarray) -> np.ndarray:
    """Columns spanning {x in Z^c : A x = 0}; the span is saturated."""
    red = _smith(A)
    r = sum(1 for i in range(min(red.D.shape)) if red.D[i, i] != 0)
    return red.V[:, r:]


def saturation(B: np.ndarray) -> np.ndarray:
    """Columns spanning the saturation (Q-span intersected with Z^n) of the columns of B."""
    red = _smith(B)
    r = sum(1 for i in range(min(red.D.shape)) if red.D[i, i] != 0)
    return red.Uinv[:, :r]


def solve(A: np.ndarray, b: Sequence[int]) -> Optional[np.ndarray]:
    """An integer x with A x = b, or None when none exists."""
    red = _smith(A)
    rows, columns = A.shape
    target = red.U @ np.array([int(v) for v in b], dtype=object)
    y = np.zeros(columns, dtype=object)
    for i in range(rows):
        d = red.D[i, i] if i < columns else 0
        if d == 0:
            if target[i] != 0:
                return None
            continue
        if target[i] % d != 0:
            return None
        y[i] = target[i] // d
    return red.V @ y
