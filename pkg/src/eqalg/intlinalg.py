"""Exact integer linear algebra: Smith form, echelon bases, kernels, solving.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so no
result is ever rounded or wrapped. Work is routed to the int64 kernels in
:mod:`eqalg._kernels` whenever the input is small enough, and falls back to
the pure-Python routines below when a kernel reports possible overflow.
Both routes run the same pivoting rule and produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels

ECHELON_CHUNK = 256


def imat(rows, ncols: int | None = None) -> np.ndarray:
    """Object-dtype integer matrix; ``ncols`` fixes the width of empty input."""
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        out = np.empty(rows.shape, dtype=object)
        out.flat[:] = [int(x) for x in rows.flat]
        return out
    rows = [[int(x) for x in r] for r in rows]
    m = len(rows)
    n = len(rows[0]) if rows else (ncols or 0)
    out = np.empty((m, n), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError("ragged integer matrix")
        out[i, :] = r
    return out


def ivec(values) -> np.ndarray:
    return np.array([int(v) for v in values], dtype=object)


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=object)


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def _fits(a: np.ndarray) -> bool:
    if a.size == 0:
        return True
    return max(abs(int(x)) for x in a.flat) < _kernels.INPUT_BOUND


def _to_int64(a: np.ndarray) -> np.ndarray:
    return np.array(a, dtype=np.int64).reshape(a.shape)


def _to_obj(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    out.flat[:] = [int(x) for x in a.flat]
    return out


# ---------------------------------------------------------------------------
# pure Python reference routines (arbitrary precision)


def _nearest(a: int, p: int) -> int:
    return (a + p // 2) // p


def _smith_exact(A: list[list[int]], m: int, n: int):
    D = [row[:] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        best = 0
        bi = bj = -1
        # row-major scan, first minimum wins (matches numpy argmin)
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = abs(row[j])
                if v and (best == 0 or v < best):
                    best, bi, bj = v, i, j
        if best == 0:
            break
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            if D[t][t] < 0:
                D[t] = [-x for x in D[t]]
                U[t] = [-x for x in U[t]]
            p = D[t][t]
            for i in range(t + 1, m):
                q = _nearest(D[i][t], p)
                if q:
                    D[i] = [x - q * y for x, y in zip(D[i], D[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
            for j in range(t + 1, n):
                q = _nearest(D[t][j], p)
                if q:
                    for row in D:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
            bv = 0
            bi = bj = -1
            for i in range(t + 1, m):
                v = abs(D[i][t])
                if v and (bv == 0 or v < bv):
                    bv, bi, bj = v, i, -1
            for j in range(t + 1, n):
                v = abs(D[t][j])
                if v and (bv == 0 or v < bv):
                    bv, bi, bj = v, -1, j
            if bi >= 0:
                swap_rows(t, bi)
                continue
            if bj >= 0:
                swap_cols(t, bj)
                continue
            fi = -1
            for i in range(t + 1, m):
                if any(D[i][j] % p for j in range(t + 1, n)):
                    fi = i
                    break
            if fi < 0:
                break
            D[t] = [x + y for x, y in zip(D[t], D[fi])]
            U[t] = [x + y for x, y in zip(U[t], U[fi])]
        t += 1
    return D, U, V


def _echelon_exact(A: list[list[int]], m: int, n: int) -> list[list[int]]:
    D = [row[:] for row in A]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            best = 0
            bi = -1
            for i in range(r, m):
                v = abs(D[i][c])
                if v and (best == 0 or v < best):
                    best, bi = v, i
            if bi < 0:
                break
            if bi != r:
                D[r], D[bi] = D[bi], D[r]
            if D[r][c] < 0:
                D[r] = [-x for x in D[r]]
            p = D[r][c]
            clean = True
            for i in range(r + 1, m):
                q = _nearest(D[i][c], p)
                if q:
                    D[i] = [x - q * y for x, y in zip(D[i], D[r])]
                if D[i][c]:
                    clean = False
            if clean:
                for i in range(r):
                    q = D[i][c] // p
                    if q:
                        D[i] = [x - q * y for x, y in zip(D[i], D[r])]
                r += 1
                break
    return D[:r]


# ---------------------------------------------------------------------------
# dispatching front ends


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal, ``diag[0] | diag[1] | ...``."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    diag: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


def smith(A) -> SmithForm:
    A = imat(A) if not isinstance(A, np.ndarray) else A
    m, n = A.shape
    if _kernels.BACKEND != "python" and m and n and _fits(A):
        D, U, V, status = _kernels.smith_int64(_to_int64(A))
        if status == 0:
            D, U, V = _to_obj(D), _to_obj(U), _to_obj(V)
            return SmithForm(U, D, V, tuple(int(D[i, i]) for i in range(min(m, n))))
    D, U, V = _smith_exact([[int(x) for x in row] for row in A], m, n)
    D, U, V = imat(D, n), imat(U, m), imat(V, n)
    D = D.reshape(m, n)
    U = U.reshape(m, m)
    V = V.reshape(n, n)
    return SmithForm(U, D, V, tuple(int(D[i, i]) for i in range(min(m, n))))


def _echelon_block(A: np.ndarray) -> np.ndarray:
    m, n = A.shape
    if _kernels.BACKEND != "python" and m and n and _fits(A):
        H, r, status = _kernels.echelon_int64(_to_int64(A))
        if status == 0:
            return _to_obj(H[:r])
    rows = _echelon_exact([[int(x) for x in row] for row in A], m, n)
    return imat(rows, n).reshape(len(rows), n)


def row_basis(A) -> np.ndarray:
    """Echelon basis of the lattice spanned by the rows of ``A``.

    Rows are fed in chunks so tall relation matrices never need more than
    ``ncols + ECHELON_CHUNK`` rows of working space.
    """
    A = imat(A) if not isinstance(A, np.ndarray) else A
    m, n = A.shape
    basis = zeros(0, n)
    for start in range(0, m, ECHELON_CHUNK):
        block = np.vstack([basis, A[start:start + ECHELON_CHUNK]])
        basis = _echelon_block(block)
    return basis


def right_kernel(A) -> np.ndarray:
    """Columns form a basis of ``{x : A @ x == 0}`` over the integers."""
    A = imat(A) if not isinstance(A, np.ndarray) else A
    m, n = A.shape
    if m == 0:
        return identity(n)
    snf = smith(A)
    return snf.V[:, snf.rank:]


def left_kernel(A) -> np.ndarray:
    """Rows form a basis of ``{y : y @ A == 0}``."""
    A = imat(A) if not isinstance(A, np.ndarray) else A
    return right_kernel(A.T).T


def solve(A, b):
    """An integer solution ``x`` of ``A @ x == b``, or ``None``."""
    A = imat(A) if not isinstance(A, np.ndarray) else A
    b = ivec(b)
    m, n = A.shape
    if m == 0:
        return ivec([0] * n)
    snf = smith(A)
    c = snf.U.dot(b) if m else b
    y = [0] * n
    for i in range(m):
        d = snf.diag[i] if i < len(snf.diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return snf.V.dot(ivec(y)) if n else ivec([])


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    return A.dot(B)
