"""Nonlinear Reed-Solomon codes: evaluations at extension-field points of
polynomials with prime-field coefficients, their parameters and duals."""

import math
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import fplinalg
from .errors import EnumerationCapError, InvariantViolation, PreconditionError
from .galois import (FieldElement, Level, cyclotomic_coset, eval_commutative,
                     minimal_polynomial)

#: Largest number of codewords a brute-force distance computation will visit.
DISTANCE_CAP = 2**22
_CHUNK = 1 << 15


# ---------------------------------------------------------------------------
# F_p expansion of words
# ---------------------------------------------------------------------------

def word_to_fp(tower, word):
    """Concatenated polynomial-basis digits of a word (packed values or elements)."""
    out = []
    for c in word:
        out.extend(tower.digits(c.value if isinstance(c, FieldElement) else c))
    return np.array(out, dtype=np.int64)


def fp_to_word(tower, vec):
    m = tower.m
    vec = [int(x) for x in vec]
    return tuple(tower.from_digits(vec[i:i + m]) for i in range(0, len(vec), m))


def enumerate_span(basis, p, cap=DISTANCE_CAP):
    """Every F_p-combination of the rows of ``basis`` (row-reduced first)."""
    B = fplinalg.row_basis(basis, p)
    dim = B.shape[0]
    if p**dim > cap:
        raise EnumerationCapError("span has %d^%d elements, cap is %d" % (p, dim, cap))
    width = B.shape[1] if B.ndim == 2 else 0
    if dim == 0:
        return np.zeros((1, width), dtype=np.int64)
    idx = np.arange(p**dim, dtype=np.int64)
    coeffs = (idx[:, None] // (p ** np.arange(dim, dtype=np.int64))) % p
    return (coeffs @ B) % p


def span_word_set(tower, basis, cap=DISTANCE_CAP):
    """The span of F_p-expanded rows as a set of words (tuples of packed values)."""
    return {fp_to_word(tower, v) for v in enumerate_span(basis, tower.p, cap)}


def symbol_weights(vectors, m):
    """Hamming weights over F_{q^m} of F_p-expanded words (rows)."""
    V = np.asarray(vectors)
    return np.any(V.reshape(V.shape[0], -1, m) != 0, axis=2).sum(axis=1)


# ---------------------------------------------------------------------------
# orbit layouts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitLayout:
    """Reordering exhibiting ``c_{t + ell} = sigma(c_t)`` on canonical positions.

    Canonical position ``t = i * ell + j`` (row ``i``, column ``j``) holds the
    original coordinate ``permutation[t]``.
    """

    ell: int
    n_rows: int
    permutation: tuple

    @property
    def length(self):
        return len(self.permutation)

    def to_canonical(self, word):
        return tuple(word[i] for i in self.permutation)

    def from_canonical(self, word):
        out = [None] * len(word)
        for t, i in enumerate(self.permutation):
            out[i] = word[t]
        return tuple(out)

    def successor(self):
        """Original index of ``t + ell`` for each original index of ``t``."""
        N = self.length
        succ = [0] * N
        for t, i in enumerate(self.permutation):
            succ[i] = self.permutation[(t + self.ell) % N]
        return succ

    def is_orbit_word(self, tower, word):
        vals = [c.value if isinstance(c, FieldElement) else c for c in word]
        succ = self.successor()
        return all(vals[succ[i]] == tower.frob(vals[i], 1) for i in range(len(vals)))


def detect_orbit_layout(c, ell):
    """Find a column-major layout making ``c`` a (sigma, ell)-orbit vector.

    Columns are grown greedily: the first unused coordinate seeds a column and
    each next row takes an unused coordinate equal to sigma of the previous.
    Equal values are interchangeable, so a failure means no layout exists.
    Returns None when the word is not an orbit vector.
    """
    if not c:
        return None
    T = c[0].tower
    N = len(c)
    if ell < 1 or N % ell:
        raise PreconditionError("index %d does not divide length %d" % (ell, N))
    n = N // ell
    if n % T.m:
        return None
    vals = [x.value for x in c]
    unused = {}
    for i, v in enumerate(vals):
        unused.setdefault(v, []).append(i)
    columns = []
    for i0 in range(N):
        if i0 not in unused.get(vals[i0], ()):
            continue
        col = []
        v = vals[i0]
        for _ in range(n):
            bucket = unused.get(v)
            if not bucket:
                return None
            col.append(bucket.pop(0))
            v = T.frob(v, 1)
        if v != vals[col[0]]:
            return None
        columns.append(col)
    if len(columns) != ell:
        return None
    perm = tuple(columns[j][i] for i in range(n) for j in range(ell))
    return OrbitLayout(ell, n, perm)


def orbit_evaluation_vector(tower, reps):
    """``m x ell`` orbit vector of full cosets, position ``i*ell + j`` = sigma^i(rep_j)."""
    reps = [tower.element(r) for r in reps]
    seen = set()
    for r in reps:
        coset = cyclotomic_coset(r)
        if len(coset) != tower.m:
            raise PreconditionError("coset of %s has size %d < m = %d" % (r, len(coset), tower.m))
        vals = {x.value for x in coset}
        if vals & seen:
            raise PreconditionError("coset of %s overlaps an earlier representative" % r)
        seen |= vals
    ell = len(reps)
    return tuple(reps[j].frobenius(i) for i in range(tower.m) for j in range(ell))


# ---------------------------------------------------------------------------
# the code
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NrsCode:
    """``{(f(alpha_1), ..., f(alpha_N)) : f in F_q[X], deg f < k}``."""

    tower: object
    alpha: tuple
    k: int
    ell: int = 1

    def __post_init__(self):
        alpha = tuple(self.tower.element(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if self.k < 1:
            raise PreconditionError("k must be positive, got %d" % self.k)
        if len({a.value for a in alpha}) != len(alpha):
            raise PreconditionError("evaluation points must be distinct")
        if self.ell < 1 or len(alpha) % self.ell:
            raise PreconditionError("index %d does not divide length %d" % (self.ell, len(alpha)))

    @property
    def n(self):
        return len(self.alpha)

    @cached_property
    def generator_matrix(self):
        """Row ``i``, column ``j`` is ``alpha_j^i``."""
        return tuple(tuple(a ** i for a in self.alpha) for i in range(self.k))

    @cached_property
    def expanded_generator(self):
        T = self.tower
        return fplinalg.as_matrix([word_to_fp(T, row) for row in self.generator_matrix],
                                  self.n * T.m)

    @cached_property
    def fp_basis(self):
        return fplinalg.row_basis(self.expanded_generator, self.tower.p)

    @cached_property
    def orbit_layout(self):
        return detect_orbit_layout(self.alpha, self.ell)

    def words(self, cap=DISTANCE_CAP):
        return span_word_set(self.tower, self.fp_basis, cap)


def nrs_encode(code, f_coeffs):
    """``(f(alpha_1), ..., f(alpha_N))`` for ``f`` given lowest-first over F_q."""
    T = code.tower
    coeffs = [T.element(c) for c in f_coeffs]
    if len(coeffs) > code.k:
        raise PreconditionError("message has %d coefficients, k = %d" % (len(coeffs), code.k))
    for c in coeffs:
        if not T.in_level(c.value, Level.BASE):
            raise PreconditionError("coefficient %s is not in F_q" % c)
    return tuple(eval_commutative(coeffs, a) for a in code.alpha)


def _poly_rem(T, f, g):
    """Commutative remainder with packed-value coefficient lists (g monic)."""
    f = list(f)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1]
        shift = len(f) - 1 - dg
        if c:
            for i, gi in enumerate(g):
                f[shift + i] = T.sub(f[shift + i], T.mul(c, gi))
        f.pop()
    return f


def nrs_encode_residue(code, f_coeffs):
    """Encoder through residues: ``f(alpha_j) = (f mod min(alpha_j; F_q))(alpha_j)``."""
    T = code.tower
    nrs_encode(code, f_coeffs)  # validation
    f = [T.element(c).value for c in f_coeffs]
    out = []
    for a in code.alpha:
        mp = [c.value for c in minimal_polynomial(a)]
        rem = _poly_rem(T, f, mp)
        out.append(eval_commutative([FieldElement(T, v) for v in rem], a))
    return tuple(out)


@dataclass(frozen=True)
class Dimension:
    dimension: int
    blocks: tuple


def nrs_dimension(code):
    """F_q-dimension and column block sizes ``k_i`` (cumulative rank increments)."""
    T = code.tower
    G = code.expanded_generator
    blocks, prev = [], 0
    for j in range(code.n):
        r = fplinalg.rank(G[:, : (j + 1) * T.m], T.p)
        blocks.append(r - prev)
        prev = r
    return Dimension(prev, tuple(blocks))


def singleton_bound(n, k, m):
    if k < 1:
        raise PreconditionError("Singleton bound needs k >= 1")
    return n - math.ceil(k / m) + 1


def min_distance(code, cap=DISTANCE_CAP):
    """Exact minimum distance by enumerating all nonzero codewords."""
    return min_weight_of_span(code.tower, code.fp_basis, cap)


def min_weight_of_span(tower, basis, cap=DISTANCE_CAP):
    p, m = tower.p, tower.m
    B = fplinalg.row_basis(basis, p)
    dim = B.shape[0]
    if dim == 0:
        raise PreconditionError("the zero code has no minimum distance")
    total = p**dim
    if total > cap:
        raise EnumerationCapError("%d^%d codewords exceed the enumeration cap %d" % (p, dim, cap))
    powers = p ** np.arange(dim, dtype=np.int64)
    best = None
    for start in range(1, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        words = ((idx[:, None] // powers) % p) @ B % p
        w = int(symbol_weights(words, m).min())
        best = w if best is None else min(best, w)
    return best


def sampled_min_weight(code, samples=4096, seed=0):
    """Smallest weight among random nonzero codewords: an upper bound on ``d``."""
    T = code.tower
    B = code.fp_basis
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, T.p, size=(samples, B.shape[0]), dtype=np.int64)
    coeffs = coeffs[np.any(coeffs != 0, axis=1)]
    if coeffs.shape[0] == 0:
        return None
    return int(symbol_weights(coeffs @ B % T.p, T.m).min())


@dataclass(frozen=True)
class SingletonReport:
    meets: bool
    reason: str
    distance: object
    bound: int
    exact: bool


def singleton_hypothesis(code):
    """Which sufficient condition for meeting the bound holds, if any."""
    degs = [len(cyclotomic_coset(a)) for a in code.alpha]
    if code.k <= min(degs):
        return "coset-degree"
    m = code.tower.m
    reps = {min(x.value for x in cyclotomic_coset(a)) for a in code.alpha}
    if all(d == m for d in degs) and len(reps) == code.n:
        return "distinct-cosets"
    return None


def meets_singleton(code, cap=DISTANCE_CAP):
    """Compare ``d`` with the Singleton bound.

    The distance is computed by brute force whenever the code is within the
    cap; a known sufficient condition is then cross-checked against it.
    Beyond the cap only the sufficient conditions can decide.
    """
    dim = nrs_dimension(code).dimension
    bound = singleton_bound(code.n, dim, code.tower.m)
    hyp = singleton_hypothesis(code)
    try:
        d = min_distance(code, cap)
    except EnumerationCapError:
        if hyp is None:
            return SingletonReport(False, "undetermined", None, bound, False)
        return SingletonReport(True, hyp, bound, bound, False)
    if d > bound:
        raise InvariantViolation("distance %d exceeds the Singleton bound %d" % (d, bound))
    if hyp is not None and d != bound:
        raise InvariantViolation("%s hypothesis holds but d=%d < %d" % (hyp, d, bound))
    return SingletonReport(d == bound, hyp or "bruteforce", d, bound, True)


# ---------------------------------------------------------------------------
# duals
# ---------------------------------------------------------------------------

def inner_product(x, y):
    acc = x[0].tower.zero() if x else None
    for a, b in zip(x, y):
        acc = acc + a * b
    return acc


@dataclass(frozen=True)
class GrsCode:
    """``{(u_1 g(alpha_1), ..., u_N g(alpha_N)) : deg g < k}`` over F_{q^m}."""

    alpha: tuple
    k: int
    u: tuple

    @property
    def tower(self):
        return self.alpha[0].tower

    def generator_rows(self):
        return [tuple(ui * a ** i for ui, a in zip(self.u, self.alpha)) for i in range(self.k)]

    def encode(self, g_coeffs):
        T = self.tower
        g = [T.element(c) for c in g_coeffs]
        return tuple(ui * eval_commutative(g, a) for ui, a in zip(self.u, self.alpha))


def grs_multipliers(alpha):
    """``u_i = (prod_{j != i} (alpha_i - alpha_j))^-1``."""
    out = []
    for i, ai in enumerate(alpha):
        prod = ai.tower.one()
        for j, aj in enumerate(alpha):
            if j != i:
                prod = prod * (ai - aj)
        out.append(prod.inverse())
    return tuple(out)


def classical_dual(code, samples=1000, seed=0, cap=2**16):
    """The Euclidean dual as ``GRS_u(alpha, N - k)``, with orthogonality certified.

    Pairs are taken exhaustively from ``C x dual`` when that product is at most
    ``cap`` (over F_q and F_{q^m} respectively), otherwise ``samples`` random
    pairs are checked.
    """
    if code.k > code.n:
        raise PreconditionError("classical dual needs k <= n")
    grs = GrsCode(code.alpha, code.n - code.k, grs_multipliers(code.alpha))
    bad = dual_orthogonality_failures(code, grs, samples, seed, cap)
    if bad:
        raise InvariantViolation("%d codeword pairs are not orthogonal" % bad)
    return grs


def dual_orthogonality_failures(code, grs, samples=1000, seed=0, cap=2**16):
    """Number of non-orthogonal pairs in ``C x dual`` (exhaustive or sampled)."""
    T = code.tower
    if grs.k == 0:
        return 0
    n_code = T.p ** nrs_dimension(code).dimension
    n_dual = T.order ** grs.k
    bad = 0
    if n_code * n_dual <= cap:
        C = [tuple(FieldElement(T, v) for v in w) for w in code.words()]
        for idx in range(n_dual):
            g = [T.from_value((idx // T.order**i) % T.order) for i in range(grs.k)]
            x = grs.encode(g)
            bad += sum(1 for c in C if inner_product(c, x))
        return bad
    rng = random.Random(seed)
    for _ in range(samples):
        f = [rng.randrange(T.p) for _ in range(code.k)]
        g = [T.from_value(rng.randrange(T.order)) for _ in range(grs.k)]
        if inner_product(nrs_encode(code, f), grs.encode(g)):
            bad += 1
    return bad


def check_multiplier_orbit(grs, layout):
    """``sigma(u_i) = u_{i'}`` with ``i'`` the successor of ``i`` in the layout."""
    succ = layout.successor()
    return all(grs.u[succ[i]] == grs.u[i].frobenius(1) for i in range(len(grs.u)))


def _require_orbit(code):
    layout = code.orbit_layout
    if layout is None:
        raise PreconditionError("evaluation vector is not a (sigma, %d)-orbit vector" % code.ell)
    if code.k > code.n:
        raise PreconditionError("q-dual needs k <= length")
    return layout


def q_dual(code):
    """F_q-basis (as words) of ``{u * f(alpha) : f in F_q[X], deg f < N - k}``."""
    layout = _require_orbit(code)
    u = grs_multipliers(code.alpha)
    grs = GrsCode(code.alpha, code.n - code.k, u)
    if not check_multiplier_orbit(grs, layout):
        raise InvariantViolation("multipliers u do not follow the orbit layout")
    rows = grs.generator_rows()
    for r in rows:
        if not layout.is_orbit_word(code.tower, r):
            raise InvariantViolation("q-dual generator is not an orbit vector")
    return rows


def q_dual_of_span(tower, words, layout):
    """F_p-basis of ``span(words)^perp  ∩  {orbit vectors for layout}``.

    Computed as an F_p nullspace in the digit expansion: each word gives the
    ``m`` linear conditions of ``sum c_i x_i = 0``; each orbit step
    ``x_{succ(i)} = sigma(x_i)`` gives ``m`` more.
    """
    T = tower
    p, m = T.p, T.m
    N = layout.length
    rows = []
    basis_cols = [T._pw[t] for t in range(m)]
    for w in words:
        vals = [c.value if isinstance(c, FieldElement) else c for c in w]
        block = np.zeros((m, N * m), dtype=np.int64)
        for i, c in enumerate(vals):
            if c:
                for t, b in enumerate(basis_cols):
                    block[:, i * m + t] = T.digits(T.mul(c, b))
        rows.append(block)
    F = T.frobenius_matrix(1)
    eye = np.eye(m, dtype=np.int64)
    for i, s in enumerate(layout.successor()):
        block = np.zeros((m, N * m), dtype=np.int64)
        block[:, s * m:(s + 1) * m] += eye
        block[:, i * m:(i + 1) * m] -= F
        rows.append(block % p)
    A = np.vstack(rows) if rows else np.zeros((0, N * m), dtype=np.int64)
    return fplinalg.row_basis(fplinalg.nullspace(A, p, N * m), p)


def q_dual_by_intersection(code):
    """q-dual computed directly as ``C^perp ∩ S`` (independent of the formula)."""
    layout = _require_orbit(code)
    T = code.tower
    return [fp_to_word(T, v) for v in q_dual_of_span(T, code.generator_matrix, layout)]


def double_q_dual(code):
    """``(C_q^perp)_q^perp`` as an F_p-basis of digit vectors."""
    layout = _require_orbit(code)
    return q_dual_of_span(code.tower, q_dual(code), layout)
