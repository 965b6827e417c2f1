"""Skew quasi-cyclic codes as left submodules of R_n^ell, R_n = F_{q^m}[X; sigma]/(X^n - 1).

Words of length ``n * ell`` use the canonical layout: position ``i * ell + j``
is row ``i``, column ``j``; column ``j`` corresponds to the polynomial
``sum_i c_{i*ell+j} X^i``.
"""

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import fplinalg
from .errors import EnumerationCapError, InvariantViolation, PreconditionError
from .galois import ENUMERATION_CAP, FieldElement, Level, find_normal_basis
from .nrscode import fp_to_word, word_to_fp
from .skewpoly import (SkewPoly, divmod_skew, gcrd, module_decompose,
                       module_recombine, two_sided_generator)
from .smithform import SkewMatrix, stacked_basis_mod_ideal


def _values(word):
    return [c.value if isinstance(c, FieldElement) else c for c in word]


def phi(tower, word, ell):
    """``ell`` polynomials of R_n read column-wise from a word of length ``n*ell``."""
    if ell < 1 or len(word) % ell:
        raise PreconditionError("word length %d is not a multiple of %d" % (len(word), ell))
    vals = _values(word)
    return tuple(SkewPoly._make(tower, vals[j::ell], Level.TOP) for j in range(ell))


def phi_inv(polys, n):
    """Inverse of :func:`phi`; polynomials must have degree below ``n``."""
    ell = len(polys)
    out = [0] * (n * ell)
    for j, f in enumerate(polys):
        if len(f.values) > n:
            raise PreconditionError("coordinate %d has degree >= n = %d" % (j, n))
        for i, v in enumerate(f.values):
            out[i * ell + j] = v
    return tuple(out)


def skew_shift(tower, word, ell):
    """``sigma(s(c))``: move every row down by one (cyclically) and apply sigma."""
    vals = _values(word)
    N = len(vals)
    return tuple(tower.frob(vals[(t - ell) % N], 1) for t in range(N))


def x_times(vec, n):
    """``X * v`` in R_n^ell."""
    T = vec[0].tower
    X = SkewPoly._make(T, (0, 1), Level.TOP)
    return tuple((X * f).reduce_mod_xn1(n) for f in vec)


def vector_to_fp(vec, n):
    T = vec[0].tower
    return word_to_fp(T, phi_inv(vec, n))


def fp_to_vector(tower, v, n, ell):
    return phi(tower, fp_to_word(tower, v), ell)


def _const(tower, value, level=Level.TOP):
    return SkewPoly._make(tower, (value,), level)


def scalar_span_rows(vectors, n, level):
    """F_p-expansions of ``beta * v`` for ``beta`` an F_p-basis of the level field."""
    T = vectors[0][0].tower
    rows = []
    for v in vectors:
        for beta in T.level_basis(level):
            b = _const(T, beta)
            rows.append(vector_to_fp(tuple(b * f for f in v), n))
    return rows


def module_span_rows(vectors, n, level):
    """F_p-spanning rows of the left P-module generated by ``vectors``."""
    rows = []
    if not vectors:
        return rows
    for v in vectors:
        cur = v
        for _ in range(n):
            rows.extend(scalar_span_rows([cur], n, level))
            cur = x_times(cur, n)
    return rows


def is_sqc(generators, tower, n, ell, level=Level.MIDDLE):
    """Is the F_{q^a}-span (``level``) of the generators closed under the skew shift?

    Generators may be words of length ``n*ell`` or vectors of ``ell``
    polynomials.  Only invariance for this ``ell`` is checked; a smaller index
    is not ruled out.
    """
    if n % tower.m:
        raise PreconditionError("need m | n, got n=%d m=%d" % (n, tower.m))
    vecs = [_as_vector(tower, g, n, ell) for g in generators]
    if not vecs:
        return True
    span = fplinalg.row_basis(scalar_span_rows(vecs, n, level), tower.p)
    for v in vecs:
        if not fplinalg.in_span(span, vector_to_fp(x_times(v, n), n), tower.p):
            return False
    return True


def _as_vector(tower, g, n, ell):
    if g and isinstance(g[0], SkewPoly):
        if len(g) != ell:
            raise PreconditionError("generator has %d coordinates, expected %d" % (len(g), ell))
        return tuple(SkewPoly._make(tower, f.reduce_mod_xn1(n).values, Level.TOP) for f in g)
    if len(g) != n * ell:
        raise PreconditionError("word has length %d, expected %d" % (len(g), n * ell))
    return phi(tower, g, ell)


# ---------------------------------------------------------------------------
# codes and their module structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SqcCode:
    """Left P_n-submodule of R_n^ell generated by ``generators`` (P_n over F_{q^a})."""

    tower: object
    n: int
    ell: int
    generators: tuple

    def __post_init__(self):
        T = self.tower
        if self.n % T.m or self.n % T.a:
            raise PreconditionError("need m | n and a | n, got n=%d" % self.n)
        gens = tuple(_as_vector(T, g, self.n, self.ell) for g in self.generators)
        object.__setattr__(self, "generators", gens)

    @cached_property
    def fp_basis(self):
        rows = module_span_rows(list(self.generators), self.n, Level.MIDDLE)
        width = self.n * self.ell * self.tower.m
        return fplinalg.row_basis(fplinalg.as_matrix(rows, width), self.tower.p)

    @property
    def fp_dimension(self):
        return self.fp_basis.shape[0]

    @property
    def cardinality(self):
        return self.tower.p ** self.fp_dimension

    def contains(self, vec):
        return fplinalg.in_span(self.fp_basis, vector_to_fp(vec, self.n), self.tower.p)


def enumerate_module(code, cap=ENUMERATION_CAP):
    """All words ``sum_g p_g * g`` for ``p_g`` ranging over P_n (brute force)."""
    T = code.tower
    n = code.n
    mids = [v for v in range(T.order) if T.in_level(v, Level.MIDDLE)]
    total = (len(mids) ** n) ** len(code.generators)
    if total > cap:
        raise EnumerationCapError("%d module combinations exceed cap %d" % (total, cap))
    units = [SkewPoly._make(T, c, Level.TOP) for c in itertools.product(mids, repeat=n)]
    multiples = []
    for g in code.generators:
        multiples.append({phi_inv(tuple((u * f).reduce_mod_xn1(n) for f in g), n)
                          for u in units})
    words = {tuple([0] * (n * code.ell))}
    for mult in multiples:
        words = {tuple(T.add(a, b) for a, b in zip(w, x)) for w in words for x in mult}
    return words


def lift_generators(code, basis=None):
    """``[decomposed generators ; (X^n - 1) I]`` over F_{q^a}[X; sigma]."""
    T = code.tower
    basis = find_normal_basis(T) if basis is None else basis
    rows = []
    for g in code.generators:
        row = []
        for f in g:
            row.extend(module_decompose(f, basis))
        rows.append(row)
    width = basis.r * code.ell
    return SkewMatrix(T, len(rows), width, rows, Level.MIDDLE), basis


def lifted_to_vector(row, basis, n):
    """Coordinates over F_{q^a}[X; sigma]^{r ell} back to R_n^ell."""
    r = basis.r
    out = []
    for j in range(len(row) // r):
        comps = [f.reduce_mod_xn1(n) for f in row[j * r:(j + 1) * r]]
        out.append(module_recombine(comps, basis).reduce_mod_xn1(n))
    return tuple(out)


def _row_mul(c, row):
    return tuple(c * x for x in row)


@dataclass(frozen=True)
class SqcStructure:
    """Module structure of a code relative to the basis ``q_i`` (rows of ``Q``).

    ``c_i = h_i q_i`` generate the lifted code, ``c_i' = d_i q_i`` its *-dual.
    """

    code: SqcCode
    basis: object
    q_list: tuple
    h_list: tuple
    d_list: tuple
    Q: SkewMatrix
    Q_inv: SkewMatrix

    @property
    def n(self):
        return self.code.n

    @cached_property
    def c_list(self):
        return tuple(_row_mul(h, q) for h, q in zip(self.h_list, self.q_list))

    @cached_property
    def cdual_list(self):
        return tuple(_row_mul(d, q) for d, q in zip(self.d_list, self.q_list))

    @property
    def dimension(self):
        """Dimension over F_{q^a}."""
        return sum(int(d.degree) for d in self.d_list)

    @property
    def cardinality(self):
        return self.code.tower.p ** (self.code.tower.a * self.dimension)

    def code_generators(self):
        """``c_i`` mapped back to R_n^ell."""
        return [lifted_to_vector(c, self.basis, self.n) for c in self.c_list]


def module_structure(code, basis=None):
    """Single-SNF decomposition ``C = ⊕ F_{q^a}[X; sigma] / F_{q^a}[X; sigma] d_i``."""
    A, basis = lift_generators(code, basis)
    if not code.generators:
        A = SkewMatrix(code.tower, 0, basis.r * code.ell, [], Level.MIDDLE)
    sb = stacked_basis_mod_ideal(A, code.n)
    st = SqcStructure(code, basis, sb.q_list, sb.h_list, sb.d_list, sb.Q, sb.Q_inv)
    T = code.tower
    if T.a * st.dimension != code.fp_dimension:
        raise InvariantViolation("structure predicts q^%d words, span has q^%d"
                                 % (T.a * st.dimension, code.fp_dimension))
    return st


def _row_times_matrix(row, M):
    T = M.tower
    out = []
    for j in range(M.cols):
        acc = SkewPoly.zero(T, M.level)
        for i, x in enumerate(row):
            if x:
                acc = acc + x * M[i, j]
        out.append(acc)
    return out


def q_inner_product(a_vec, b_vec, Q_inv, n=None, literal=False):
    """Q-inner product ``sum_k (a Q^-1)_k (b Q^-1)_k``.

    With ``literal=True`` the product ``a Q^-1 (Q^-1)^T b^T`` is evaluated with
    a plain transpose, i.e. ``sum_k (a Q^-1)_k sum_l (Q^-1)_{lk} b_l``; over a
    noncommutative ring this differs from the default and is not symmetric.
    Returns the exact polynomial, or its residue mod ``X^n - 1`` when ``n``
    is given.
    """
    if len(a_vec) != Q_inv.rows or len(b_vec) != Q_inv.rows:
        raise PreconditionError("vectors of length %d, %d against a %dx%d matrix"
                                % (len(a_vec), len(b_vec), Q_inv.rows, Q_inv.cols))
    T = Q_inv.tower
    aq = _row_times_matrix(a_vec, Q_inv)
    if literal:
        bq = []
        for k in range(Q_inv.cols):
            acc = SkewPoly.zero(T, Q_inv.level)
            for l, b in enumerate(b_vec):
                acc = acc + Q_inv[l, k] * b
            bq.append(acc)
    else:
        bq = _row_times_matrix(b_vec, Q_inv)
    acc = SkewPoly.zero(T, Q_inv.level)
    for x, y in zip(aq, bq):
        acc = acc + x * y
    return acc if n is None else acc.reduce_mod_xn1(n)


def star_dual(structure):
    """Generators ``c_i' mod (X^n - 1)`` of the *-dual, as lifted rows and in R_n^ell."""
    n = structure.n
    lifted = tuple(tuple(f.reduce_mod_xn1(n) for f in c) for c in structure.cdual_list)
    vectors = tuple(lifted_to_vector(c, structure.basis, n) for c in lifted)
    return lifted, vectors


@dataclass(frozen=True)
class DualStructure:
    h_list: tuple
    d_list: tuple
    c_list: tuple
    cdual_list: tuple


def dual_structure(structure):
    """Re-derive the *-dual's structure on the same ``q_i`` basis.

    Coordinates of the dual generators are read off as ``c_i' Q^-1`` and must
    be diagonal; ``h_i' = gcrd(coordinate, X^n - 1)`` and ``d_i'`` is the right
    cofactor.  The dual of the result is ``d_i' q_i``.
    """
    T = structure.code.tower
    n = structure.n
    xn1 = SkewPoly.x_power_minus_one(T, n, Level.MIDDLE)
    h2, d2 = [], []
    for i, c in enumerate(structure.cdual_list):
        coords = _row_times_matrix(c, structure.Q_inv)
        for j, x in enumerate(coords):
            if j != i and x:
                raise InvariantViolation("dual generator %d has off-diagonal coordinate %d" % (i, j))
        h = gcrd(coords[i], xn1) if coords[i] else xn1
        d, rem = divmod_skew(xn1, h, "right")
        if rem or h * d != xn1:
            raise InvariantViolation("dual factor %d does not split X^n - 1" % i)
        h2.append(h)
        d2.append(d)
    qs = structure.q_list
    return DualStructure(tuple(h2), tuple(d2),
                         tuple(_row_mul(h, q) for h, q in zip(h2, qs)),
                         tuple(_row_mul(d, q) for d, q in zip(d2, qs)))


def dual_code(structure):
    """The *-dual as an :class:`SqcCode`."""
    _, vectors = star_dual(structure)
    code = structure.code
    gens = [v for v in vectors if any(f for f in v)]
    return SqcCode(code.tower, code.n, code.ell, tuple(gens))


# ---------------------------------------------------------------------------
# R_m and matrices over F_q
# ---------------------------------------------------------------------------

def _rm_fp(f, m):
    return word_to_fp(f.tower, list(f.values) + [0] * (m - len(f.values)))


def _rm_from_fp(tower, v):
    return SkewPoly._make(tower, fp_to_word(tower, v), Level.TOP)


def _ideal_dimension(t, m, mult_gens):
    """F_p-dimension of the two-sided ideal of R_m generated by ``t``."""
    T = t.tower
    p = T.p
    basis = fplinalg.row_basis(fplinalg.as_matrix([_rm_fp(t, m)]), p)
    frontier = [t]
    while frontier:
        new = []
        for x in frontier:
            for g in mult_gens:
                for y in ((g * x).reduce_mod_xn1(m), (x * g).reduce_mod_xn1(m)):
                    v = _rm_fp(y, m)
                    if not fplinalg.in_span(basis, v, p):
                        basis = fplinalg.row_basis(np.vstack([basis, v]), p)
                        new.append(y)
        frontier = new
    return basis.shape[0]


@dataclass(frozen=True)
class MatrixRingReport:
    m: int
    order_exponent: int
    center_exponent: int
    tested: int
    exhaustive: bool
    failures: tuple

    @property
    def ok(self):
        return (not self.failures and self.order_exponent == self.m**2
                and self.center_exponent == 1)


def matrix_ring_check(tower, m=None, samples=100, seed=0, cap=2**12):
    """Computational evidence that R_m is isomorphic to Mat_m(F_q).

    Checks that R_m has q^{m^2} elements, that its centre has q elements and
    that every tested nonzero ``t`` generates R_m as a two-sided ideal (ideal
    closure under multiplication by X and an F_p-basis of F_{q^m}).  A second
    route checks that the two-sided generator of ``t`` is coprime to X^m - 1.
    """
    T = tower
    m = T.m if m is None else m
    if m != T.m:
        raise PreconditionError("R_m needs the tower degree m = %d, got %d" % (T.m, m))
    p = T.p
    Xp = SkewPoly._make(T, (0, 1), Level.TOP)
    scalars = [_const(T, b) for b in T.level_basis(Level.TOP)]
    gens = scalars + [Xp]
    elem_basis = [SkewPoly._make(T, [0] * j + [b], Level.TOP)
                  for j in range(m) for b in T.level_basis(Level.TOP)]
    order_exp = fplinalg.rank([_rm_fp(e, m) for e in elem_basis], p)

    rows = []
    for g in gens:
        cols = [_rm_fp((g * e - e * g).reduce_mod_xn1(m), m) for e in elem_basis]
        rows.append(np.array(cols, dtype=np.int64).T)
    center_exp = fplinalg.nullspace(np.vstack(rows) % p, p, len(elem_basis)).shape[0]

    total = p ** (m * m)
    exhaustive = total <= cap
    if exhaustive:
        idxs = range(1, total)
    else:
        rng = random.Random(seed)
        idxs = [rng.randrange(1, total) for _ in range(samples)]
    xm1 = SkewPoly.x_power_minus_one(T, m, Level.TOP)
    failures = []
    tested = 0
    for idx in idxs:
        digits = [(idx // p**i) % p for i in range(m * m)]
        t = _rm_from_fp(T, digits)
        tested += 1
        if _ideal_dimension(t, m, gens) != m * m:
            failures.append(("closure", str(t)))
            continue
        g = two_sided_generator(t, Level.TOP)
        if gcrd(g.c, xm1) != 1:
            failures.append(("two-sided generator", str(t)))
    return MatrixRingReport(m, order_exp, center_exp, tested, exhaustive, tuple(failures))


def circulant_repr(g, tower, basis=None):
    """Matrix over F_q of ``x -> sum_i g_i sigma^i(x)`` in a normal basis.

    Column ``j`` holds the coordinates of the image of ``b_j``.  Needs a = 1
    and ``deg g < m``.
    """
    T = tower
    if T.a != 1:
        raise PreconditionError("circulant representation needs a = 1")
    m = T.m
    g = g.reduce_mod_xn1(m)
    basis = find_normal_basis(T) if basis is None else basis
    M = np.zeros((m, m), dtype=np.int64)
    for j, b in enumerate(basis.elements):
        img = 0
        for i, gi in enumerate(g.values):
            img = T.add(img, T.mul(gi, T.frob(b.value, i)))
        for r, c in enumerate(basis.coordinates(img)):
            M[r, j] = c
    return M


def is_circulant(M):
    n = M.shape[0]
    return all(M[r, c] == M[(r - c) % n, 0] for r in range(n) for c in range(n))
