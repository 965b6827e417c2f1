"""Dense linear algebra over a prime field F_p on numpy integer arrays."""

import numpy as np


def as_matrix(rows, ncols=None):
    """Coerce a list of row vectors into a 2-d int64 array (empty-safe)."""
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        width = ncols if ncols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        return np.zeros((0, width), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


def rref(A, p):
    """Reduced row echelon form of ``A`` over F_p.

    Returns ``(R, pivots)`` where ``R`` has the nonzero rows first and
    ``pivots`` lists the pivot column of each of those rows.
    """
    R = as_matrix(A).copy() % p
    nrows, ncols = R.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        inv = pow(int(R[row, col]), -1, p)
        R[row] = (R[row] * inv) % p
        others = np.nonzero(R[:, col])[0]
        others = others[others != row]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, col], R[row])) % p
        pivots.append(col)
        row += 1
    return R, pivots


def rank(A, p):
    A = as_matrix(A)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    return len(rref(A, p)[1])


def row_basis(A, p):
    """Rows of the RREF spanning the row space of ``A``."""
    A = as_matrix(A)
    if A.shape[0] == 0:
        return A
    R, pivots = rref(A, p)
    return R[: len(pivots)]


def nullspace(A, p, ncols=None):
    """Basis (as rows) of ``{x : A x = 0}`` over F_p."""
    A = as_matrix(A, ncols)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for idx, f in enumerate(free):
        basis[idx, f] = 1
        for r, pc in enumerate(pivots):
            basis[idx, pc] = (-R[r, f]) % p
    return basis


def inverse(A, p):
    A = as_matrix(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    aug = np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular over F_%d" % p)
    return R[:, n:].copy()


def solve(A, b, p):
    """One solution ``x`` of ``A x = b`` or ``None`` if inconsistent."""
    A = as_matrix(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.concatenate([A % p, b % p], axis=1)
    R, pivots = rref(aug, p)
    ncols = A.shape[1]
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, ncols]
    return x


def in_span(basis, v, p):
    basis = as_matrix(basis, len(v))
    if basis.shape[0] == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([basis, np.asarray(v, dtype=np.int64)]), p) == rank(basis, p)


def same_row_space(A, B, p):
    rA, rB = rank(A, p), rank(B, p)
    if rA != rB:
        return False
    A, B = as_matrix(A), as_matrix(B)
    if rA == 0:
        return True
    return rank(np.vstack([A, B]), p) == rA
