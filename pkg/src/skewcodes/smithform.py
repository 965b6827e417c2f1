"""Smith normal form over F_{q^a}[X; sigma] with tracked unimodular transforms."""

from dataclasses import dataclass, field

from .errors import InvariantViolation, PreconditionError
from .galois import Level
from .skewpoly import (SkewPoly, divmod_skew, is_total_divisor,
                       total_divisor_witness)


class SkewMatrix:
    """Dense immutable matrix of skew polynomials sharing one tower and level."""

    __slots__ = ("tower", "rows", "cols", "level", "entries")

    def __init__(self, tower, rows, cols, entries, level=Level.MIDDLE):
        self.tower = tower
        self.rows = rows
        self.cols = cols
        self.level = Level.parse(level)
        grid = [list(r) for r in entries]
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise PreconditionError("matrix entries do not match %dx%d" % (rows, cols))
        out = []
        for r in grid:
            row = []
            for e in r:
                if isinstance(e, int):
                    e = SkewPoly(tower, [e])
                elif not isinstance(e, SkewPoly):
                    e = SkewPoly(tower, e)
                if e.level > self.level:
                    raise PreconditionError("entry %s exceeds the %s level" % (e, self.level))
                row.append(SkewPoly._make(tower, e.values, self.level))
            out.append(tuple(row))
        self.entries = tuple(out)

    @classmethod
    def identity(cls, tower, n, level=Level.MIDDLE):
        one = SkewPoly.one(tower, level)
        zero = SkewPoly.zero(tower, level)
        return cls(tower, n, n, [[one if i == j else zero for j in range(n)]
                                 for i in range(n)], level)

    @classmethod
    def zeros(cls, tower, rows, cols, level=Level.MIDDLE):
        zero = SkewPoly.zero(tower, level)
        return cls(tower, rows, cols, [[zero] * cols for _ in range(rows)], level)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def to_lists(self):
        return [list(r) for r in self.entries]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise PreconditionError("shape mismatch %dx%d @ %dx%d"
                                    % (self.rows, self.cols, other.rows, other.cols))
        level = max(self.level, other.level)
        zero = SkewPoly.zero(self.tower, level)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SkewMatrix(self.tower, self.rows, other.cols, out, level)

    def __eq__(self, other):
        return (isinstance(other, SkewMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.entries)
        return "SkewMatrix(%dx%d: %s)" % (self.rows, self.cols, body)

    def is_identity(self):
        return self.rows == self.cols and all(
            e == (1 if i == j else 0) for i, r in enumerate(self.entries) for j, e in enumerate(r))


@dataclass(frozen=True)
class SnfResult:
    """``S @ M @ T == J`` with ``J = diag(diagonal) (+ zeros)``.

    ``row_ops`` and ``col_ops`` record the elementary operations in order:
    ``("add", i, j, q)`` is ``row_i += q row_j`` (resp. ``col_j += col_i q``),
    ``("swap", i, j)`` and ``("scale", i, u)`` with ``u`` a unit constant.
    """

    S: SkewMatrix
    T: SkewMatrix
    J: SkewMatrix
    S_inv: SkewMatrix
    T_inv: SkewMatrix
    diagonal: tuple
    row_ops: tuple = field(default=(), repr=False)
    col_ops: tuple = field(default=(), repr=False)


class _Work:
    """Mutable SNF state: the matrix and the four transforms in lockstep."""

    def __init__(self, M):
        T = M.tower
        self.tower = T
        self.level = M.level
        self.A = M.to_lists()
        self.S = SkewMatrix.identity(T, M.rows, M.level).to_lists()
        self.S_inv = SkewMatrix.identity(T, M.rows, M.level).to_lists()
        self.T = SkewMatrix.identity(T, M.cols, M.level).to_lists()
        self.T_inv = SkewMatrix.identity(T, M.cols, M.level).to_lists()
        self.row_ops = []
        self.col_ops = []

    @staticmethod
    def _row_add(mat, i, j, q):
        mat[i] = [x + q * y for x, y in zip(mat[i], mat[j])]

    @staticmethod
    def _col_add(mat, i, j, q):
        for r in mat:
            r[j] = r[j] + r[i] * q

    # row operations: S <- E S, S_inv <- S_inv E^-1
    def row_add(self, i, j, q):
        if not q:
            return
        self._row_add(self.A, i, j, q)
        self._row_add(self.S, i, j, q)
        self._col_add(self.S_inv, i, j, -q)
        self.row_ops.append(("add", i, j, q))

    def row_swap(self, i, j):
        if i == j:
            return
        for mat in (self.A, self.S):
            mat[i], mat[j] = mat[j], mat[i]
        for r in self.S_inv:
            r[i], r[j] = r[j], r[i]
        self.row_ops.append(("swap", i, j))

    def row_scale(self, i, u):
        if u == 1:
            return
        U = SkewPoly._make(self.tower, (u,), self.level)
        Uinv = SkewPoly._make(self.tower, (self.tower.inv(u),), self.level)
        self.A[i] = [U * x for x in self.A[i]]
        self.S[i] = [U * x for x in self.S[i]]
        for r in self.S_inv:
            r[i] = r[i] * Uinv
        self.row_ops.append(("scale", i, U))

    # column operations: T <- T F, T_inv <- F^-1 T_inv
    def col_add(self, i, j, q):
        if not q:
            return
        self._col_add(self.A, i, j, q)
        self._col_add(self.T, i, j, q)
        self._row_add(self.T_inv, i, j, -q)
        self.col_ops.append(("add", i, j, q))

    def col_swap(self, i, j):
        if i == j:
            return
        for mat in (self.A, self.T):
            for r in mat:
                r[i], r[j] = r[j], r[i]
        self.T_inv[i], self.T_inv[j] = self.T_inv[j], self.T_inv[i]
        self.col_ops.append(("swap", i, j))


def _min_entry(A, t):
    best = None
    for i in range(t, len(A)):
        for j in range(t, len(A[0])):
            e = A[i][j]
            if e and (best is None or e.degree < best[0]):
                best = (e.degree, i, j)
    return best


def _probe(s, t, level):
    """Failure ``(side, u)`` of ``s || t`` as a multiplier polynomial, or None."""
    w = total_divisor_witness(s, t, level)
    if w is None:
        return None
    side, alpha, k = w
    return side, SkewPoly._make(s.tower, [0] * k + [alpha], level)


def smith_normal_form(M):
    """Diagonalize ``M`` by elementary operations; returns an :class:`SnfResult`.

    Each pivot is the minimal-degree entry of the remaining block.  Its row and
    column are cleared by one-sided division; if the pivot then fails to be a
    total divisor of some remaining entry ``b`` the failing multiple ``b u``
    (or ``u b``) is folded into the pivot column (row), which forces a
    smaller-degree pivot on the next pass.
    """
    W = _Work(M)
    A = W.A
    rows, cols = M.rows, M.cols
    level = M.level
    diag = []
    for t in range(min(rows, cols)):
        best = _min_entry(A, t)
        if best is None:
            break
        while True:
            _, i, j = best
            W.row_swap(t, i)
            W.col_swap(t, j)
            e = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q, r = divmod_skew(A[i][t], e, "right")
                    W.row_add(i, t, -q)
                    dirty = dirty or bool(r)
            for j in range(t + 1, cols):
                if A[t][j]:
                    q, r = divmod_skew(A[t][j], e, "left")
                    W.col_add(t, j, -q)
                    dirty = dirty or bool(r)
            if not dirty:
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        b = A[i][j]
                        if not b:
                            continue
                        fail = _probe(e, b, level)
                        if fail is None:
                            continue
                        side, u = fail
                        if side == "right":
                            W.col_add(j, t, u)
                        else:
                            W.row_add(t, i, u)
                        dirty = True
                        break
                    if dirty:
                        break
            if not dirty:
                break
            best = _min_entry(A, t)
        W.row_scale(t, W.tower.inv(A[t][t].values[-1]))
        diag.append(A[t][t])

    T = M.tower
    mk = lambda mat, r, c: SkewMatrix(T, r, c, mat, level)  # noqa: E731
    return SnfResult(S=mk(W.S, rows, rows), T=mk(W.T, cols, cols), J=mk(A, rows, cols),
                     S_inv=mk(W.S_inv, rows, rows), T_inv=mk(W.T_inv, cols, cols),
                     diagonal=tuple(diag), row_ops=tuple(W.row_ops), col_ops=tuple(W.col_ops))


def replay_ops(tower, size, ops, side, level=Level.MIDDLE):
    """Apply recorded elementary operations to the identity matrix."""
    W = _Work(SkewMatrix.identity(tower, size, level))
    mat = W.A
    for op in ops:
        if op[0] == "swap":
            _, i, j = op
            if side == "row":
                mat[i], mat[j] = mat[j], mat[i]
            else:
                for r in mat:
                    r[i], r[j] = r[j], r[i]
        elif op[0] == "add":
            _, i, j, q = op
            (W._row_add if side == "row" else W._col_add)(mat, i, j, q)
        elif op[0] == "scale":
            _, i, u = op
            mat[i] = [u * x for x in mat[i]]
        else:
            raise PreconditionError("unknown operation %r" % (op[0],))
    return SkewMatrix(tower, size, size, mat, level)


def snf_violations(M, res):
    """List of human-readable failures of the SNF certificate (empty if valid)."""
    out = []
    if res.S.rows != M.rows or res.T.cols != M.cols:
        return ["transform shapes do not match the input"]
    if res.S @ M @ res.T != res.J:
        out.append("reconstruction S*M*T != J")
    if not (res.S @ res.S_inv).is_identity() or not (res.S_inv @ res.S).is_identity():
        out.append("S_inv is not the inverse of S")
    if not (res.T @ res.T_inv).is_identity() or not (res.T_inv @ res.T).is_identity():
        out.append("T_inv is not the inverse of T")
    J = res.J
    r = len(res.diagonal)
    for i in range(J.rows):
        for j in range(J.cols):
            e = J[i, j]
            if i == j and i < r:
                if e != res.diagonal[i]:
                    out.append("diagonal entry %d disagrees with J" % i)
                if not e.is_monic():
                    out.append("diagonal entry %d is not monic" % i)
            elif e:
                out.append("J has a nonzero off-pattern entry at (%d, %d)" % (i, j))
    for i in range(r - 1):
        a, b = res.diagonal[i], res.diagonal[i + 1]
        if a and not is_total_divisor(a, b, M.level):
            out.append("chain violation: e_%d is not a total divisor of e_%d" % (i, i + 1))
    return out


def verify_snf(M, res):
    return not snf_violations(M, res)


@dataclass(frozen=True)
class StackedBasis:
    """Basis ``q_i`` (rows of ``Q``) with invariant factors ``h_i`` and ``d_i``.

    The row module of the stacked matrix is spanned by ``h_i q_i`` and
    ``X^n - 1 = d_i h_i = h_i d_i``.  ``Q_inv`` is the tracked inverse of ``Q``.
    """

    n: int
    q_list: tuple
    h_list: tuple
    d_list: tuple
    Q: SkewMatrix
    Q_inv: SkewMatrix
    snf: SnfResult = field(repr=False)


def stack_with_ideal(A, n, width=None):
    """``[A ; (X^n - 1) I]`` for ``A`` with ``width`` columns."""
    T = A.tower
    width = A.cols if width is None else width
    level = A.level
    xn1 = SkewPoly.x_power_minus_one(T, n, level)
    zero = SkewPoly.zero(T, level)
    rows = [list(r) for r in A.entries]
    rows += [[xn1 if i == j else zero for j in range(width)] for i in range(width)]
    return SkewMatrix(T, len(rows), width, rows, level)


def stacked_basis_mod_ideal(A, n):
    """Run SNF on ``[A ; (X^n - 1) I]`` and read off ``q_i``, ``h_i``, ``d_i``.

    Raises :class:`InvariantViolation` if some ``h_i`` is not a total divisor
    of ``X^n - 1`` or the cofactor identity fails.
    """
    T = A.tower
    if n % T.m or n % T.a:
        raise PreconditionError("need m | n and a | n, got n=%d, m=%d, a=%d" % (n, T.m, T.a))
    M = stack_with_ideal(A, n)
    res = smith_normal_form(M)
    width = A.cols
    level = A.level
    xn1 = SkewPoly.x_power_minus_one(T, n, level)
    if len(res.diagonal) != width:
        raise InvariantViolation("stacked matrix has rank %d, expected %d"
                                 % (len(res.diagonal), width))
    h_list, d_list = [], []
    for i, h in enumerate(res.diagonal):
        d, rem = divmod_skew(xn1, h, "right")
        if rem or h * d != xn1:
            raise InvariantViolation("h_%d = %s does not split X^%d - 1" % (i, h, n))
        if not is_total_divisor(h, xn1, level):
            raise InvariantViolation("h_%d = %s is not a total divisor of X^%d - 1" % (i, h, n))
        h_list.append(h)
        d_list.append(d)
    q_list = tuple(tuple(r) for r in res.T_inv.entries)
    return StackedBasis(n=n, q_list=q_list, h_list=tuple(h_list), d_list=tuple(d_list),
                        Q=res.T_inv, Q_inv=res.T, snf=res)
