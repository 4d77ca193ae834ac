"""Exact integer and rational matrix routines for the frequency matrix.

Matrices are tuples of row tuples. Everything that feeds a decision is
computed with Python ints or ``Fraction``; the single float routine,
:func:`inverse_norm_estimate`, is for reporting only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .words import Morphism, ParikhVector, parikh

IntMatrix = tuple[tuple[int, ...], ...]
RationalMatrix = tuple[tuple[Fraction, ...], ...]


class SingularMatrixError(ValueError):
    pass


def frequency_matrix(mu: Morphism) -> IntMatrix:
    """Row ``i`` is the Parikh vector of the image of letter ``i + 1``."""
    return tuple(parikh(img, mu.m) for img in mu.images)


def transpose(A: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*A))


def matmul(A, B):
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def det(A: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    a = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(A: Sequence[Sequence[int]]) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def adjugate(A: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer adjugate, ``adj(A) = det(A) * A^-1``."""
    d = det(A)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    inv = inverse(A)
    out = []
    for row in inv:
        vals = [x * d for x in row]
        assert all(v.denominator == 1 for v in vals)
        out.append(tuple(int(v) for v in vals))
    return tuple(out)


def leading_minors(A: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(det([row[:j] for row in A[:j]]) for j in range(1, len(A) + 1))


def gram_minus_identity(M: Sequence[Sequence[int]]) -> IntMatrix:
    """``M^T M - I``."""
    G = matmul(transpose(M), M)
    return tuple(tuple(g - int(i == j) for j, g in enumerate(row)) for i, row in enumerate(G))


def sylvester_minors(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Leading principal minors of ``M^T M - I``."""
    return leading_minors(gram_minus_identity(M))


def inverse_norm_lt_one(M: Sequence[Sequence[int]]) -> bool:
    """Exact test of ``|M^-1| < 1`` in the spectral norm.

    ``|M^-1| < 1`` iff the smallest singular value of M exceeds 1 iff
    ``M^T M - I`` is positive definite, which Sylvester's criterion decides
    from integer minors.
    """
    if det(M) == 0:
        raise SingularMatrixError("matrix is singular")
    return all(x > 0 for x in sylvester_minors(M))


def inverse_norm_estimate(M: Sequence[Sequence[int]]) -> float:
    """Float estimate of the spectral norm of ``M^-1``; reporting only."""
    if det(M) == 0:
        raise SingularMatrixError("matrix is singular")
    sv = np.linalg.svd(np.array(M, dtype=float), compute_uv=False)
    return float(1.0 / sv.min())


class RowSolver:
    """Solves ``D M = v`` for integral ``D`` using the integer adjugate.

    ``D = v adj(M) / det(M)``, so integrality is a divisibility check and no
    rationals are needed in the hot loop of parent enumeration.
    """

    def __init__(self, M: Sequence[Sequence[int]]):
        self.M = tuple(tuple(r) for r in M)
        self.det = det(self.M)
        if self.det == 0:
            raise SingularMatrixError("matrix is singular")
        self.adj_cols = transpose(adjugate(self.M))

    def solve(self, v: Sequence[int]) -> ParikhVector | None:
        d = self.det
        out = []
        for col in self.adj_cols:
            num = sum(x * y for x, y in zip(v, col))
            q, r = divmod(num, d)
            if r:
                return None
            out.append(q)
        return tuple(out)


def solve_row_rational(v: Sequence[int], M: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    inv = inverse(M)
    return tuple(sum((Fraction(x) * row[j] for x, row in zip(v, inv)), Fraction(0))
                 for j in range(len(M)))


def solve_row_integer(v: Sequence[int], M: Sequence[Sequence[int]]) -> ParikhVector | None:
    """The row ``D`` with ``D M = v`` if it is integral, else ``None``."""
    return RowSolver(M).solve(v)
