"""Integer column reduction for small weight matrices.

Only what the toric bookkeeping needs: integer kernels (relations among
weight columns) and integer solutions of ``W e = c``.
"""

from __future__ import annotations

from typing import Sequence


def column_echelon(W: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Return ``(A, V, pivot_rows)`` with ``A = W V`` in column echelon form.

    ``V`` is unimodular (n x n).  Columns ``len(pivot_rows):`` of ``A`` are
    zero, so the matching columns of ``V`` are a basis of the integer kernel.
    """
    k = len(W)
    n = len(W[0]) if k else 0
    A = [list(map(int, row)) for row in W]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i: int, j: int) -> None:
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def addmul(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        for M in (A, V):
            for row in M:
                row[dst] -= q * row[src]

    p = 0
    pivots: list[int] = []
    for i in range(k):
        if p >= n:
            break
        while True:
            nz = [j for j in range(p, n) if A[i][j] != 0]
            if not nz:
                break
            j_min = min(nz, key=lambda j: abs(A[i][j]))
            if j_min != p:
                swap(p, j_min)
            done = True
            for j in range(p + 1, n):
                if A[i][j]:
                    addmul(j, p, A[i][j] // A[i][p])
                    if A[i][j]:
                        done = False
            if done:
                break
        if A[i][p] != 0:
            pivots.append(i)
            p += 1
    return A, V, pivots


def integer_kernel(W: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of ``{u in Z^n : W u = 0}``."""
    if not W:
        return []
    A, V, pivots = column_echelon(W)
    n = len(V)
    r = len(pivots)
    return [tuple(V[i][j] for i in range(n)) for j in range(r, n)]


def integer_solve(W: Sequence[Sequence[int]], c: Sequence[int]) -> tuple[int, ...] | None:
    """Some integer ``e`` with ``W e = c``, or ``None`` if there is none."""
    A, V, pivots = column_echelon(W)
    n = len(V)
    y = [0] * n
    for col, row in enumerate(pivots):
        acc = c[row] - sum(A[row][j] * y[j] for j in range(col))
        if acc % A[row][col]:
            return None
        y[col] = acc // A[row][col]
    e = tuple(sum(V[i][j] * y[j] for j in range(n)) for i in range(n))
    if any(sum(W[i][j] * e[j] for j in range(n)) != c[i] for i in range(len(W))):
        return None
    return e
