"""Batched exact linear algebra over a finite field.

All functions operate on numpy arrays of element indices whose last two
axes are the matrix axes, so a stack of shape (N, m, n) is N matrices
processed in lockstep.  Everything is pure and allocation-local.
"""

from __future__ import annotations

import numpy as np

from .fields import Field


def matmul(field: Field, A, B):
    """(..., m, t) @ (..., t, n) elementwise over the batch."""
    A = np.asarray(A)
    B = np.asarray(B)
    t = A.shape[-1]
    if B.shape[-2] != t:
        raise ValueError("inner dimensions disagree")
    out = field.vmul(A[..., :, 0, None], B[..., None, 0, :])
    for s in range(1, t):
        out = field.vadd(out, field.vmul(A[..., :, s, None], B[..., None, s, :]))
    return out


def identity(field: Field, m: int):
    out = np.zeros((m, m), dtype=field.dtype)
    np.fill_diagonal(out, 1)
    return out


def rref(field: Field, mats):
    """Reduced row echelon form of each matrix in the stack.

    Returns (R, rank) where R has the same shape as the input and rank is
    the per-matrix rank vector.  Pivots are the first nonzero entry of each
    unfinished column, so the result is the canonical RREF.
    """
    M = np.array(mats, dtype=field.dtype, copy=True)
    single = M.ndim == 2
    if single:
        M = M[None]
    N, m, n = M.shape
    rc = np.zeros(N, dtype=np.int64)
    rows = np.arange(m)
    ar = np.arange(N)
    for j in range(n):
        col = M[:, :, j]
        cand = (col != 0) & (rows[None, :] >= rc[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        r0 = rc[idx]
        r1 = np.argmax(cand[idx], axis=1)
        swap = M[idx, r0].copy()
        M[idx, r0] = M[idx, r1]
        M[idx, r1] = swap
        pinv = field.inv_table[M[idx, r0, j]].astype(field.dtype)
        M[idx, r0] = field.vmul(M[idx, r0], pinv[:, None])
        factors = M[idx, :, j].copy()
        factors[np.arange(idx.size), r0] = 0
        piv_rows = M[idx, r0]
        M[idx] = field.vsub(M[idx], field.vmul(factors[:, :, None], piv_rows[:, None, :]))
        rc[idx] += 1
        if (rc == m).all():
            break
    if single:
        return M[0], int(rc[0])
    return M, rc


def rank(field: Field, mats):
    _, r = rref(field, mats)
    return r


def nonzero_mask(mats):
    mats = np.asarray(mats)
    return mats.any(axis=(-2, -1))


def rank_le1_mask(field: Field, mats):
    """True where the matrix has rank <= 1 (every 2x2 minor vanishes)."""
    M = np.asarray(mats)
    m, n = M.shape[-2:]
    ok = np.ones(M.shape[:-2], dtype=bool)
    for i in range(m - 1):
        for i2 in range(i + 1, m):
            for j in range(n - 1):
                for j2 in range(j + 1, n):
                    d = field.vsub(field.vmul(M[..., i, j], M[..., i2, j2]),
                                   field.vmul(M[..., i, j2], M[..., i2, j]))
                    ok &= d == 0
    return ok


def adjacent_mask(field: Field, diffs):
    """True where the difference matrix has rank exactly 1."""
    return rank_le1_mask(field, diffs) & nonzero_mask(diffs)


def det(field: Field, mats):
    """Determinants of a stack of square matrices, cofactor expansion."""
    M = np.asarray(mats)
    m = M.shape[-1]
    if M.shape[-2] != m:
        raise ValueError("determinant needs square matrices")
    if m == 1:
        return M[..., 0, 0]
    if m == 2:
        return field.vsub(field.vmul(M[..., 0, 0], M[..., 1, 1]),
                          field.vmul(M[..., 0, 1], M[..., 1, 0]))
    cols = np.arange(m)
    out = None
    for j in range(m):
        minor = M[..., 1:, :][..., :, cols != j]
        term = field.vmul(M[..., 0, j], det(field, minor))
        if j % 2 == 1:
            term = field.vneg(term)
        out = term if out is None else field.vadd(out, term)
    return out


def invertible_mask(field: Field, mats):
    M = np.asarray(mats)
    if M.shape[-1] <= 4:
        return det(field, M) != 0
    return rank(field, M) == M.shape[-1]


def inverse(field: Field, mats):
    """Inverses of a stack of invertible square matrices via RREF([A | I])."""
    M = np.asarray(mats)
    single = M.ndim == 2
    if single:
        M = M[None]
    N, m, _ = M.shape
    aug = np.concatenate([M, np.broadcast_to(identity(field, m), M.shape)], axis=2)
    R, _ = rref(field, aug)
    # A is invertible iff the reduced left block is the identity
    if np.any(R[:, :, :m] != identity(field, m)):
        raise ZeroDivisionError("singular matrix in inverse()")
    out = R[:, :, m:]
    return out[0] if single else out


# ---------------------------------------------------------------------------
# single-system exact solving (pivot bookkeeping needed)
# ---------------------------------------------------------------------------

def rref_single(field: Field, mat):
    """RREF of one matrix together with its pivot column list."""
    M = np.array(mat, dtype=np.int64, copy=True)
    m, n = M.shape
    pivots = []
    r = 0
    for j in range(n):
        if r == m:
            break
        nz = np.nonzero(M[r:, j])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = field.vmul(M[r], np.int64(field.inv(int(M[r, j]))))
        for t in range(m):
            if t != r and M[t, j] != 0:
                M[t] = field.vsub(M[t], field.vmul(np.int64(M[t, j]), M[r]))
        pivots.append(j)
        r += 1
    return M, pivots


def solve_affine(field: Field, A, b):
    """All solutions of A x = b over the field.

    Returns (particular, basis) where basis rows span the solution space of
    the homogeneous system, or None when the system is inconsistent.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    m, n = A.shape
    R, pivots = rref_single(field, np.concatenate([A, b[:, None]], axis=1))
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, j in enumerate(pivots):
        x[j] = R[r, n]
    free = [j for j in range(n) if j not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, j in enumerate(free):
        basis[t, j] = 1
        for r, pj in enumerate(pivots):
            basis[t, pj] = field.neg(int(R[r, j]))
    return x, basis


# ---------------------------------------------------------------------------
# dense encodings of whole matrix spaces
# ---------------------------------------------------------------------------

def encode(field: Field, mats):
    """Pack matrices into integer codes, big-endian over row-major entries.

    The (0, 0) entry is the most significant digit, so the code order agrees
    with lexicographic order on the row-major entry sequence.
    """
    M = np.asarray(mats, dtype=np.int64)
    m, n = M.shape[-2:]
    w = field.q ** np.arange(m * n - 1, -1, -1, dtype=np.int64)
    return M.reshape(M.shape[:-2] + (m * n,)) @ w


def decode(field: Field, codes, m: int, n: int):
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (m * n,), dtype=field.dtype)
    rem = codes.copy()
    for t in range(m * n - 1, -1, -1):
        out[..., t] = rem % field.q
        rem //= field.q
    return out.reshape(codes.shape + (m, n))


def all_matrices(field: Field, m: int, n: int, limit: int = 1 << 20):
    count = field.q ** (m * n)
    if count > limit:
        raise MemoryError(f"matrix space of size {count} exceeds limit {limit}")
    return decode(field, np.arange(count), m, n)
