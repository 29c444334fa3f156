"""Tiny exact linear algebra on lists of lists (field elements or Fractions)."""

from __future__ import annotations

from typing import Sequence


def det(M: Sequence[Sequence]):
    """Determinant by Gaussian elimination with nonzero-pivot search."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    result = None
    for k in range(n):
        piv = next((r for r in range(k, n) if A[r][k]), None)
        if piv is None:
            return A[0][0] * 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        result = p if result is None else result * p
        for r in range(k + 1, n):
            if A[r][k]:
                t = A[r][k] / p
                for c in range(k + 1, n):
                    A[r][c] = A[r][c] - t * A[k][c]
    return result if sign == 1 else -result


def solve(M: Sequence[Sequence], rhs: Sequence):
    """Solve M x = rhs for square invertible M."""
    n = len(M)
    A = [list(M[r]) + [rhs[r]] for r in range(n)]
    for k in range(n):
        piv = next((r for r in range(k, n) if A[r][k]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        A[k], A[piv] = A[piv], A[k]
        p = A[k][k]
        A[k] = [x / p for x in A[k]]
        for r in range(n):
            if r != k and A[r][k]:
                t = A[r][k]
                A[r] = [x - t * y for x, y in zip(A[r], A[k])]
    return [A[r][n] for r in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), A[i][0] * 0)
             for j in range(len(B[0]))] for i in range(len(A))]


def transpose(A: Sequence[Sequence]):
    return [list(col) for col in zip(*A)]


def inverse(M: Sequence[Sequence]):
    n = len(M)
    cols = [solve(M, [1 if r == c else 0 for r in range(n)]) for c in range(n)]
    return transpose(cols)
