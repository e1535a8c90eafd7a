"""Hot integer kernels.

Every kernel here works on ``int64`` arrays and is compiled with numba when
available. Set ``EQALG_BACKEND=numpy`` to run the same code uncompiled, or
``EQALG_BACKEND=python`` to bypass these kernels entirely in favour of the
arbitrary-precision routines in :mod:`eqalg.intlinalg`.

The elimination kernels never silently overflow: before each row or column
operation they bound the result and return ``status = 1`` if it could leave
``[-2**62, 2**62]``. Callers then redo the computation with Python integers.
"""

import os

import numpy as np

BACKEND = os.environ.get("EQALG_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy", "python"):
    raise ValueError(f"EQALG_BACKEND must be numba, numpy or python, not {BACKEND!r}")

if BACKEND == "numba":
    try:
        import numba

        jit = numba.njit(cache=True)
    except ImportError:  # pragma: no cover - numba is an optional accelerator
        BACKEND = "numpy"

if BACKEND != "numba":

    def jit(func):
        return func


LIMIT = np.int64(1) << np.int64(62)
# entries above this are not handed to the int64 kernels at all
INPUT_BOUND = 1 << 31


@jit
def _nearest_quotients(a, p):
    # round(a / p) for p > 0, elementwise
    return (a + p // 2) // p


@jit
def _absmax(a):
    if a.size == 0:
        return np.int64(0)
    return np.abs(a).max()


@jit
def _row_update_safe(target, q, source):
    qa = _absmax(q)
    if qa == 0:
        return True
    sa = _absmax(source)
    if sa == 0:
        return True
    if qa > LIMIT // sa:
        return False
    return qa * sa <= LIMIT - _absmax(target)


@jit
def _markowitz_pivot(D, t):
    """Among the entries of smallest absolute value in ``D[t:, t:]``, the
    one with the fewest other nonzeros in its row and column; this keeps
    fill-in, and with it coefficient growth, low on sparse input."""
    m, n = D.shape
    rows = np.zeros(m, dtype=np.int64)
    cols = np.zeros(n, dtype=np.int64)
    best = LIMIT
    for i in range(t, m):
        for j in range(t, n):
            v = abs(D[i, j])
            if v != 0:
                rows[i] += 1
                cols[j] += 1
                if v < best:
                    best = v
    bi, bj = -1, -1
    cost = LIMIT
    if best == LIMIT:
        return bi, bj
    for i in range(t, m):
        for j in range(t, n):
            if abs(D[i, j]) == best:
                c = (rows[i] - 1) * (cols[j] - 1)
                if c < cost:
                    cost = c
                    bi, bj = i, j
    return bi, bj


@jit
def smith_int64(A):
    """Smith normal form ``U @ A @ V = D`` with minimal-absolute-value pivots.

    Returns ``(D, U, V, status)``; ``status == 1`` means an intermediate
    would have overflowed and the outputs are meaningless.
    """
    m, n = A.shape
    D = A.copy()
    U = np.eye(m, dtype=np.int64)
    V = np.eye(n, dtype=np.int64)
    big = LIMIT
    t = 0
    while t < min(m, n):
        bi, bj = _markowitz_pivot(D, t)
        if bi < 0:
            break
        if bi != t:
            tmp = D[t, :].copy()
            D[t, :] = D[bi, :]
            D[bi, :] = tmp
            tmp = U[t, :].copy()
            U[t, :] = U[bi, :]
            U[bi, :] = tmp
        if bj != t:
            tmp = D[:, t].copy()
            D[:, t] = D[:, bj]
            D[:, bj] = tmp
            tmp = V[:, t].copy()
            V[:, t] = V[:, bj]
            V[:, bj] = tmp
        while True:
            if D[t, t] < 0:
                D[t, :] = -D[t, :]
                U[t, :] = -U[t, :]
            p = D[t, t]
            if t + 1 < m:
                q = _nearest_quotients(D[t + 1:, t], p)
                if not _row_update_safe(D[t + 1:, :], q, D[t, :]):
                    return D, U, V, 1
                if not _row_update_safe(U[t + 1:, :], q, U[t, :]):
                    return D, U, V, 1
                D[t + 1:, :] -= np.outer(q, D[t, :])
                U[t + 1:, :] -= np.outer(q, U[t, :])
            if t + 1 < n:
                q = _nearest_quotients(D[t, t + 1:], p)
                if not _row_update_safe(D[:, t + 1:].T, q, D[:, t]):
                    return D, U, V, 1
                if not _row_update_safe(V[:, t + 1:].T, q, V[:, t]):
                    return D, U, V, 1
                D[:, t + 1:] -= np.outer(D[:, t], q)
                V[:, t + 1:] -= np.outer(V[:, t], q)
            # smallest leftover in the pivot row/column becomes the new pivot
            bv = big
            bi = -1
            bj = -1
            for i in range(t + 1, m):
                v = abs(D[i, t])
                if v != 0 and v < bv:
                    bv = v
                    bi = i
                    bj = -1
            for j in range(t + 1, n):
                v = abs(D[t, j])
                if v != 0 and v < bv:
                    bv = v
                    bi = -1
                    bj = j
            if bi >= 0:
                tmp = D[t, :].copy()
                D[t, :] = D[bi, :]
                D[bi, :] = tmp
                tmp = U[t, :].copy()
                U[t, :] = U[bi, :]
                U[bi, :] = tmp
                continue
            if bj >= 0:
                tmp = D[:, t].copy()
                D[:, t] = D[:, bj]
                D[:, bj] = tmp
                tmp = V[:, t].copy()
                V[:, t] = V[:, bj]
                V[:, bj] = tmp
                continue
            # pivot must divide the rest of the block
            fi = -1
            if t + 1 < m and t + 1 < n:
                rem = D[t + 1:, t + 1:] % p
                nz = np.nonzero(rem)
                if nz[0].size > 0:
                    fi = t + 1 + nz[0][0]
            if fi < 0:
                break
            if not _row_update_safe(D[t, :], np.ones(1, dtype=np.int64), D[fi, :]):
                return D, U, V, 1
            if not _row_update_safe(U[t, :], np.ones(1, dtype=np.int64), U[fi, :]):
                return D, U, V, 1
            D[t, :] += D[fi, :]
            U[t, :] += U[fi, :]
        t += 1
    return D, U, V, 0


@jit
def echelon_int64(A):
    """Row echelon basis of the row lattice of ``A`` (Hermite style, pivots
    positive, entries above a pivot reduced into ``[0, pivot)``).

    Returns ``(H, rank, status)`` where the first ``rank`` rows of ``H`` are
    the basis.
    """
    m, n = A.shape
    D = A.copy()
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            col = np.abs(D[r:, c])
            best = LIMIT
            bi = -1
            for i in range(col.size):
                if col[i] != 0 and col[i] < best:
                    best = col[i]
                    bi = r + i
            if bi < 0:
                break
            if bi != r:
                tmp = D[r, :].copy()
                D[r, :] = D[bi, :]
                D[bi, :] = tmp
            if D[r, c] < 0:
                D[r, :] = -D[r, :]
            p = D[r, c]
            if r + 1 < m:
                q = _nearest_quotients(D[r + 1:, c], p)
                if not _row_update_safe(D[r + 1:, :], q, D[r, :]):
                    return D, r, 1
                D[r + 1:, :] -= np.outer(q, D[r, :])
            if r + 1 >= m or not np.any(D[r + 1:, c]):
                if r > 0:
                    q = D[:r, c] // p
                    if not _row_update_safe(D[:r, :], q, D[r, :]):
                        return D, r, 1
                    D[:r, :] -= np.outer(q, D[r, :])
                r += 1
                break
    return D, r, 0


@jit
def count_bidegree_solutions(degs, lo, hi, n, k):
    """Count integer exponent vectors ``e`` with ``lo <= e <= hi`` and
    ``sum(e[i] * degs[i]) == (n, k)`` by depth-first enumeration with
    interval pruning on the remaining degrees."""
    g = degs.shape[0]
    # suffix bounds of the achievable bidegree from generators i..g-1
    smin = np.zeros((g + 1, 2), dtype=np.int64)
    smax = np.zeros((g + 1, 2), dtype=np.int64)
    for i in range(g - 1, -1, -1):
        for c in range(2):
            a = lo[i] * degs[i, c]
            b = hi[i] * degs[i, c]
            smin[i, c] = smin[i + 1, c] + min(a, b)
            smax[i, c] = smax[i + 1, c] + max(a, b)
    count = 0
    e = np.zeros(g, dtype=np.int64)
    acc = np.zeros((g + 1, 2), dtype=np.int64)
    i = 0
    e[0] = lo[0] - 1
    while i >= 0:
        e[i] += 1
        if e[i] > hi[i]:
            i -= 1
            continue
        acc[i + 1, 0] = acc[i, 0] + e[i] * degs[i, 0]
        acc[i + 1, 1] = acc[i, 1] + e[i] * degs[i, 1]
        rn = n - acc[i + 1, 0]
        rk = k - acc[i + 1, 1]
        if rn < smin[i + 1, 0] or rn > smax[i + 1, 0]:
            continue
        if rk < smin[i + 1, 1] or rk > smax[i + 1, 1]:
            continue
        if i == g - 1:
            if rn == 0 and rk == 0:
                count += 1
            continue
        i += 1
        e[i] = lo[i] - 1
    return count


@jit
def conjugation_classes(table):
    """Label elements of a finite monoid by the classes of the equivalence
    relation generated by ``m*n ~ n*m`` (union-find)."""
    size = table.shape[0]
    parent = np.arange(size)
    for a in range(size):
        for b in range(size):
            x = table[a, b]
            y = table[b, a]
            while parent[x] != x:
                x = parent[x]
            while parent[y] != y:
                y = parent[y]
            if x != y:
                if x < y:
                    parent[y] = x
                else:
                    parent[x] = y
    labels = np.empty(size, dtype=np.int64)
    for a in range(size):
        x = a
        while parent[x] != x:
            x = parent[x]
        labels[a] = x
    return labels


@jit
def pair_classes(table, iota, fixed):
    """Union-find labels on ``fixed x fixed`` for the relation
    ``(iota(m) x m, y) ~ (x, m y iota(m))``; ``fixed`` lists the
    iota-fixed elements."""
    f = fixed.shape[0]
    size = table.shape[0]
    pos = -np.ones(size, dtype=np.int64)
    for i in range(f):
        pos[fixed[i]] = i
    parent = np.arange(f * f)
    for m in range(size):
        im = iota[m]
        for xi in range(f):
            x = fixed[xi]
            left = pos[table[table[im, x], m]]
            for yi in range(f):
                y = fixed[yi]
                right = pos[table[table[m, y], im]]
                a = left * f + yi
                b = xi * f + right
                while parent[a] != a:
                    a = parent[a]
                while parent[b] != b:
                    b = parent[b]
                if a != b:
                    if a < b:
                        parent[b] = a
                    else:
                        parent[a] = b
    labels = np.empty(f * f, dtype=np.int64)
    for a in range(f * f):
        x = a
        while parent[x] != x:
            x = parent[x]
        labels[a] = x
    return labels
