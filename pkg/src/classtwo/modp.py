"""Exact linear algebra over GF(p), scalar and numpy-batched.

Everything here works with integer matrices reduced mod an odd prime p.
The batched kernels vectorize Gaussian elimination across the leading
(batch) axis; they are what makes the big scans (millions of small rank
computations) affordable.
"""

from __future__ import annotations

import numpy as np

_INV_CACHE: dict[int, np.ndarray] = {}


def inverse_table(p: int) -> np.ndarray:
    """Table t with t[a] = a^-1 mod p for a in [1, p); t[0] = 0."""
    tab = _INV_CACHE.get(p)
    if tab is None:
        tab = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            tab[a] = pow(a, -1, p)
        _INV_CACHE[p] = tab
    return tab


def inv_mod(a: int, p: int) -> int:
    return pow(a % p, -1, p)


# ---------------------------------------------------------------------------
# scalar (single-matrix) routines


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p); returns (R, pivot_columns).

    Zero rows are kept (trailing); pivots are 1 and their columns cleared.
    """
    A = np.array(mat, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        head = int(A[r, c])
        if head != 1:
            A[r] = A[r] * pow(head, -1, p) % p
        factors = A[:, c].copy()
        factors[r] = 0
        if factors.any():
            A = (A - factors[:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(mat: np.ndarray, p: int) -> int:
    _, piv = rref(mat, p)
    return len(piv)


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : mat @ x = 0 mod p}, rows = basis vectors."""
    A, pivots = rref(mat, p)
    ncols = A.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for r, pc in enumerate(pivots):
            basis[bi, pc] = (-A[r, fc]) % p
    return basis


def solve_affine(
    A: np.ndarray, b: np.ndarray, p: int
) -> tuple[np.ndarray, np.ndarray] | None:
    """Solve A x = b over GF(p).

    Returns (particular, nullspace_basis) or None when inconsistent.
    """
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, pivots = rref(aug, p)
    ncols = A.shape[1]
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, ncols]
    # nullspace straight off the same reduction (its A-part is RREF of A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for r, pc in enumerate(pivots):
            basis[bi, pc] = (-R[r, fc]) % p
    return x, basis


def mat_inv(M: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over GF(p); raises on singular input."""
    M = np.asarray(M, dtype=np.int64) % p
    n = M.shape[0]
    aug = np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref(aug, p)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return R[:, n:]


def is_invertible(M: np.ndarray, p: int) -> bool:
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and rank(M, p) == M.shape[0]


# ---------------------------------------------------------------------------
# batched routines (leading axis = independent matrices)


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks over GF(p) of a stack of matrices, shape (N, r, c) -> (N,)."""
    A = np.ascontiguousarray(mats, dtype=np.int32) % p
    N, nrows, ncols = A.shape
    inv = inverse_table(p).astype(np.int32)
    row = np.zeros(N, dtype=np.int32)
    rows_idx = np.arange(nrows, dtype=np.int32)
    batch_idx = np.arange(N)
    for col in range(ncols):
        if nrows == 0:
            break
        colv = A[:, :, col]
        mask = (colv != 0) & (rows_idx[None, :] >= row[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(mask, axis=1)
        b = batch_idx[has]
        rb = row[b]
        pb = piv[has]
        tmp = A[b, rb, :].copy()
        A[b, rb, :] = A[b, pb, :]
        A[b, pb, :] = tmp
        headv = A[b, rb, col]
        A[b, rb, :] = (A[b, rb, :] * inv[headv][:, None]) % p
        factors = A[b, :, col].copy()
        factors[np.arange(b.size), rb] = 0
        below = rows_idx[None, :] > rb[:, None]
        factors *= below
        A[b] = (A[b] - factors[:, :, None] * A[b, rb, :][:, None, :]) % p
        row[b] = rb + 1
    return row.astype(np.int64)


def batch_rref(mats: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical RREF of a stack of matrices; returns (rref_stack, ranks)."""
    A = np.ascontiguousarray(mats, dtype=np.int32) % p
    N, nrows, ncols = A.shape
    inv = inverse_table(p).astype(np.int32)
    row = np.zeros(N, dtype=np.int32)
    rows_idx = np.arange(nrows, dtype=np.int32)
    batch_idx = np.arange(N)
    for col in range(ncols):
        colv = A[:, :, col]
        mask = (colv != 0) & (rows_idx[None, :] >= row[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(mask, axis=1)
        b = batch_idx[has]
        rb = row[b]
        pb = piv[has]
        tmp = A[b, rb, :].copy()
        A[b, rb, :] = A[b, pb, :]
        A[b, pb, :] = tmp
        headv = A[b, rb, col]
        A[b, rb, :] = (A[b, rb, :] * inv[headv][:, None]) % p
        factors = A[b, :, col].copy()
        factors[np.arange(b.size), rb] = 0
        A[b] = (A[b] - factors[:, :, None] * A[b, rb, :][:, None, :]) % p
        row[b] = rb + 1
    return A, row.astype(np.int64)


def batch_solvable(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Feasibility mask for N systems A[i] x = b[i] over GF(p)."""
    aug = np.concatenate([A, b[:, :, None]], axis=2)
    return batch_rank(A, p) == batch_rank(aug, p)
