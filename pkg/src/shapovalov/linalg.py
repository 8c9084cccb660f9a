"""Exact linear algebra over the scalar rings.

Matrices are lists of rows of ring elements.  Over a field the workhorse is
reduced row echelon form; over the Laurent ring (an integral domain without
general division) rank and determinant use Bareiss fraction-free elimination.
"""
from __future__ import annotations

from typing import Sequence


class MatrixTooLarge(ValueError):
    pass


Matrix = list  # list[list[scalar]]


def zeros(ring, rows: int, cols: int) -> Matrix:
    return [[ring.zero] * cols for _ in range(rows)]


def identity(ring, n: int) -> Matrix:
    out = zeros(ring, n, n)
    for i in range(n):
        out[i][i] = ring.one
    return out


def shape(M: Matrix, cols: int | None = None) -> tuple[int, int]:
    if not M:
        return 0, cols or 0
    return len(M), len(M[0])


def matmul(ring, A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    if not A:
        return []
    n = len(B) if inner is None else inner
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ring.zero] * m
        for k in range(n):
            a = row[k]
            if a:
                Bk = B[k]
                for j in range(m):
                    b = Bk[j]
                    if b:
                        acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def transpose(M: Matrix, cols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def is_zero_matrix(M: Matrix) -> bool:
    return all(not x for row in M for x in row)


def sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(ring, c, M: Matrix) -> Matrix:
    return [[c * x for x in row] for row in M]


def kron(ring, A: Matrix, B: Matrix) -> Matrix:
    out = []
    for ra in A:
        for rb in B:
            out.append([a * b for a in ra for b in rb])
    return out


def block_diag(ring, blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    m = sum(len(b[0]) if b else 0 for b in blocks)
    out = zeros(ring, n, m)
    r = c = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[r + i][c : c + len(row)] = row
        r += len(b)
        c += len(b[0]) if b else 0
    return out


# ---------------------------------------------------------------------------
# field elimination
# ---------------------------------------------------------------------------


def rref(ring, M: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (field only)."""
    if not ring.is_field:
        raise TypeError("rref needs a field; use bareiss_rank over the Laurent ring")
    A = [list(row) for row in M]
    rows = len(A)
    cols = len(A[0]) if A else (ncols or 0)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv if x else x for x in A[r]]
        pr = A[r]
        for i in range(rows):
            if i != r:
                f = A[i][c]
                if f:
                    Ai = A[i]
                    A[i] = [a - f * b if b else a for a, b in zip(Ai, pr)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(ring, M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    if ring.is_field:
        return _field_rank(ring, M)
    return bareiss_rank(ring, M)


def _field_rank(ring, M: Matrix) -> int:
    A = [list(row) for row in M]
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        pr = [x * inv if x else x for x in A[r]]
        for i in range(r + 1, rows):
            f = A[i][c]
            if f:
                A[i] = [a - f * b if b else a for a, b in zip(A[i], pr)]
        r += 1
    return r


def nullspace(ring, M: Matrix, ncols: int | None = None) -> list[list]:
    """Basis of ``{x : M x = 0}`` (field only)."""
    cols = len(M[0]) if M else (ncols or 0)
    R, pivots = rref(ring, M, cols)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ring.zero] * cols
        v[f] = ring.one
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# fraction-free elimination
# ---------------------------------------------------------------------------


def _exact_div(ring, a, b):
    if ring.is_field:
        return a / b
    return a.divexact(b)


def bareiss_rank(ring, M: Matrix) -> int:
    A = [list(row) for row in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    prev = ring.one
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, rows):
            f = A[i][c]
            for j in range(c + 1, cols):
                A[i][j] = _exact_div(ring, A[i][j] * p - f * A[r][j], prev)
            A[i][c] = ring.zero
        prev = p
        r += 1
    return r


def det(ring, M: Matrix, max_dim: int | None = None):
    """Determinant by Bareiss elimination (exact divisions only)."""
    n = len(M)
    if max_dim is not None and n > max_dim:
        raise MatrixTooLarge(f"{n}x{n} exceeds the configured cap {max_dim}")
    if n == 0:
        return ring.one
    A = [list(row) for row in M]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not A[k][k]:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return ring.zero
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        for i in range(k + 1, n):
            f = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = _exact_div(ring, A[i][j] * p - f * A[k][j], prev)
        prev = p
    out = A[n - 1][n - 1]
    return out if sign > 0 else -out
