"""Dense Gaussian elimination over a prime field.

Matrices are lists of rows of ints; inputs are never mutated.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def rref(M: Sequence[Sequence[int]], q: int) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form of ``M`` mod q and its pivot columns."""
    R = [[x % q for x in row] for row in M]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if R[i][c]), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = pow(R[r][c], q - 2, q)
        R[r] = [x * inv % q for x in R[r]]
        prow = R[r]
        for i in range(rows):
            f = R[i][c]
            if i != r and f:
                R[i] = [(x - f * y) % q for x, y in zip(R[i], prow)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Sequence[Sequence[int]], q: int) -> int:
    return len(rref(M, q)[1])


def nullspace(M: Sequence[Sequence[int]], q: int, ncols: int | None = None) -> Matrix:
    """Basis of {v : M v = 0}, one vector per free column in increasing order.

    Each basis vector has a 1 in its own free column and zeros in the other
    free columns.  ``ncols`` is required when ``M`` has no rows.
    """
    if ncols is None:
        if not M:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(M[0])
    if not M:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(M, q)
    pivot_set = set(pivots)
    basis: Matrix = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[free] % q
        basis.append(v)
    return basis


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], q: int) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) % q for col in Bt] for row in A]


def identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]
