"""Finite field towers F_q <= F_{q^a} <= F_{q^m} with q = p prime.

Elements of F_{q^m} are stored as integers whose base-``p`` digits are the
coordinates in the polynomial basis ``1, w, w^2, ..., w^{m-1}`` where ``w`` is
a root of the defining modulus (lowest degree first).  The middle field
F_{q^a} and the base field F_q are the fixed subsets of ``sigma^a`` and
``sigma`` respectively; they are not separate structures.
"""

from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property

import numpy as np

from . import fplinalg
from .errors import EnumerationCapError, PreconditionError

#: Largest field order for which operations that enumerate the field will run.
ENUMERATION_CAP = 2**20
#: Log/exp and Frobenius tables are built for fields up to this order.
TABLE_CAP = 2**16
#: Full addition/multiplication tables are built up to this order.
_SMALL_TABLE_CAP = 256


class Level(IntEnum):
    """Which field of the tower a coefficient is required to lie in."""

    BASE = 0
    MIDDLE = 1
    TOP = 2

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            aliases = {"base": cls.BASE, "fq": cls.BASE, "f_q": cls.BASE,
                       "middle": cls.MIDDLE, "fqa": cls.MIDDLE, "f_qa": cls.MIDDLE,
                       "top": cls.TOP, "fqm": cls.TOP, "f_qm": cls.TOP}
            if key in aliases:
                return aliases[key]
        if isinstance(value, int) and value in (0, 1, 2):
            return cls(value)
        raise PreconditionError("unknown field level %r" % (value,))

    def __str__(self):
        return self.name.lower()


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# F_p[x] helpers (lists of ints, lowest degree first)
# ---------------------------------------------------------------------------

def _fp_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _fp_sub(f, g, p):
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)]
    return _fp_trim(out)


def _fp_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _fp_trim(out)


def _fp_mod(f, g, p):
    f = _fp_trim(f)
    g = _fp_trim(g)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = (f[-1] * inv) % p
        shift = len(f) - len(g)
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        f = _fp_trim(f)
    return f


def _fp_gcd(f, g, p):
    f, g = _fp_trim(f), _fp_trim(g)
    while g:
        f, g = g, _fp_mod(f, g, p)
    if f:
        inv = pow(f[-1], -1, p)
        f = [(c * inv) % p for c in f]
    return f


def _fp_powmod(base, e, mod, p):
    result = [1]
    base = _fp_mod(base, mod, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), mod, p)
        base = _fp_mod(_fp_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(coeffs, p):
    """Rabin's irreducibility test for a polynomial over F_p (lowest first)."""
    f = _fp_trim([c % p for c in coeffs])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _fp_trim(_fp_sub(_fp_powmod(x, p**m, f, p), x, p)):
        return False
    for r in _prime_factors(m):
        h = _fp_sub(_fp_powmod(x, p ** (m // r), f, p), x, p)
        if len(_fp_gcd(f, h, p)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# The tower
# ---------------------------------------------------------------------------

class FieldTower:
    """The chain F_p <= F_{p^a} <= F_{p^m} in a fixed polynomial basis.

    Use :func:`make_tower` to construct one; the constructor expects an
    already monic modulus but still checks irreducibility.
    """

    def __init__(self, p, a, m, modulus):
        if not is_prime(p):
            raise PreconditionError("characteristic %r is not prime" % (p,))
        if a < 1 or m < 1 or m % a:
            raise PreconditionError("need a | m, got a=%r m=%r" % (a, m))
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise PreconditionError("modulus must be monic of degree %d" % m)
        if not is_irreducible(modulus, p):
            raise PreconditionError("modulus %r is reducible over F_%d" % (list(modulus), p))
        self.p = p
        self.q = p
        self.a = a
        self.m = m
        self.r = m // a
        self.modulus = modulus
        self.order = p**m
        self._pw = [p**i for i in range(m + 1)]
        self._tables = self.order <= TABLE_CAP
        if p == 2:
            self._mod_int = sum(c << i for i, c in enumerate(modulus))
        self._add_tab = None
        self._mul_tab = None
        if self._tables:
            self._build_tables()

    # -- identity --------------------------------------------------------
    def _key(self):
        return (self.p, self.a, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "FieldTower(p=%d, a=%d, m=%d, modulus=%s)" % (
            self.p, self.a, self.m, list(self.modulus))

    # -- digit conversion ------------------------------------------------
    def digits(self, v):
        p = self.p
        out = []
        for _ in range(self.m):
            v, d = divmod(v, p)
            out.append(d)
        return out

    def from_digits(self, digits):
        if len(digits) > self.m:
            raise PreconditionError("element has %d coordinates, field degree is %d"
                                    % (len(digits), self.m))
        p = self.p
        return sum((int(d) % p) * self._pw[i] for i, d in enumerate(digits))

    def vec(self, v):
        return np.array(self.digits(v), dtype=np.int64)

    # -- raw arithmetic on packed values ------------------------------------
    def _raw_add(self, x, y):
        p = self.p
        out, i = 0, 0
        while x or y:
            x, dx = divmod(x, p)
            y, dy = divmod(y, p)
            out += ((dx + dy) % p) * self._pw[i]
            i += 1
        return out

    def _raw_mul(self, x, y):
        if self.p == 2:
            out = 0
            while y:
                if y & 1:
                    out ^= x
                y >>= 1
                x <<= 1
                if x >> self.m:
                    x ^= self._mod_int
            return out
        p, m = self.p, self.m
        prod = _fp_mul(self.digits(x), self.digits(y), p)
        if len(prod) > m:
            prod = _fp_mod(prod, list(self.modulus), p)
        return self.from_digits(prod)

    def _build_tables(self):
        order, p = self.order, self.p
        if order <= _SMALL_TABLE_CAP and p != 2:
            self._add_tab = [[self._raw_add(x, y) for y in range(order)] for x in range(order)]
        n1 = order - 1
        factors = _prime_factors(n1) if n1 > 1 else []
        gen = None
        for cand in range(1, order):
            if all(self._raw_pow(cand, n1 // f) != 1 for f in factors):
                gen = cand
                break
        exp = [0] * (2 * n1)
        log = [0] * order
        v = 1
        for e in range(n1):
            exp[e] = v
            log[v] = e
            v = self._raw_mul(v, gen)
        for e in range(n1, 2 * n1):
            exp[e] = exp[e - n1]
        self._exp, self._log, self._gen = exp, log, gen
        if order <= _SMALL_TABLE_CAP:
            self._mul_tab = [[0] * order] + [
                [0] + [exp[log[x] + log[y]] for y in range(1, order)] for x in range(1, order)]
        frob = []
        for j in range(self.m):
            pj = p**j % n1 if n1 else 0
            frob.append([0] + [exp[(log[x] * pj) % n1] for x in range(1, order)])
        self._frob = frob

    def _raw_pow(self, x, e):
        result = 1
        while e:
            if e & 1:
                result = self._raw_mul(result, x)
            x = self._raw_mul(x, x)
            e >>= 1
        return result

    def add(self, x, y):
        if self.p == 2:
            return x ^ y
        if self._add_tab is not None:
            return self._add_tab[x][y]
        return self._raw_add(x, y)

    def neg(self, x):
        if self.p == 2:
            return x
        return self.from_digits([(-d) % self.p for d in self.digits(x)])

    def sub(self, x, y):
        if self.p == 2:
            return x ^ y
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self._mul_tab is not None:
            return self._mul_tab[x][y]
        if not x or not y:
            return 0
        if self._tables:
            return self._exp[self._log[x] + self._log[y]]
        return self._raw_mul(x, y)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero in %r" % self)
        if self._tables:
            return self._exp[(-self._log[x]) % (self.order - 1)]
        return self._raw_pow(x, self.order - 2)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def power(self, x, e):
        if e < 0:
            return self.power(self.inv(x), -e)
        if e == 0:
            return 1
        if not x:
            return 0
        if self._tables:
            return self._exp[(self._log[x] * e) % (self.order - 1)]
        return self._raw_pow(x, e)

    def frob(self, x, j=1):
        """``x^(q^j)`` with ``j`` taken modulo ``m``."""
        j %= self.m
        if j == 0 or not x:
            return x
        if self._tables:
            return self._frob[j][x]
        return self._raw_pow(x, self.p**j)

    # -- subfields -------------------------------------------------------
    def level_degree(self, level):
        level = Level.parse(level)
        return (1, self.a, self.m)[level]

    def in_level(self, v, level):
        e = self.level_degree(level)
        return e == self.m or self.frob(v, e) == v

    def level_of(self, v):
        for level in (Level.BASE, Level.MIDDLE):
            if self.in_level(v, level):
                return level
        return Level.TOP

    def frobenius_matrix(self, j=1):
        """Matrix over F_p of ``sigma^j`` acting on coordinate column vectors."""
        cols = [self.digits(self.frob(self._pw[i], j)) for i in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def _level_bases(self):
        bases = {}
        for level in Level:
            e = self.level_degree(level)
            if e == self.m:
                basis = [self._pw[i] for i in range(self.m)]
            else:
                A = (self.frobenius_matrix(e) - np.eye(self.m, dtype=np.int64)) % self.p
                kernel = fplinalg.row_basis(fplinalg.nullspace(A, self.p), self.p)
                basis = sorted(self.from_digits(list(row)) for row in kernel)
            if len(basis) != e:
                raise AssertionError("fixed field of sigma^%d has wrong dimension" % e)
            bases[level] = tuple(basis)
        return bases

    def level_basis(self, level):
        """An F_p-basis (packed values) of the subfield at ``level``."""
        return self._level_bases[Level.parse(level)]

    # -- element construction ----------------------------------------------
    def __call__(self, coeffs):
        return self.element(coeffs)

    def element(self, coeffs):
        if isinstance(coeffs, FieldElement):
            if coeffs.tower != self:
                raise PreconditionError("element belongs to a different tower")
            return coeffs
        if isinstance(coeffs, int):
            return FieldElement(self, coeffs % self.p)
        return FieldElement(self, self.from_digits(list(coeffs)))

    def from_value(self, v):
        if not 0 <= v < self.order:
            raise PreconditionError("packed value %r out of range" % (v,))
        return FieldElement(self, v)

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def gen(self):
        """The class of the polynomial variable, a root of the modulus."""
        if self.m == 1:
            return self.from_value(self.from_digits(_fp_trim([(-self.modulus[0]) % self.p])))
        return FieldElement(self, self.p)

    def check_enumerable(self, cap=ENUMERATION_CAP):
        if self.order > cap:
            raise EnumerationCapError("field of order %d exceeds enumeration cap %d"
                                      % (self.order, cap))

    def elements(self, level=Level.TOP, cap=ENUMERATION_CAP):
        self.check_enumerable(cap)
        return [FieldElement(self, v) for v in range(self.order) if self.in_level(v, level)]

    def format_value(self, v, var="w"):
        terms = []
        for i, d in enumerate(self.digits(v)):
            if not d:
                continue
            mono = "" if i == 0 else (var if i == 1 else "%s^%d" % (var, i))
            if i == 0:
                terms.append(str(d))
            else:
                terms.append(mono if d == 1 else "%d%s" % (d, mono))
        return "+".join(terms) if terms else "0"


class FieldElement:
    """An immutable element of the top field of a :class:`FieldTower`."""

    __slots__ = ("tower", "value")

    def __init__(self, tower, value):
        self.tower = tower
        self.value = value

    @property
    def coeffs(self):
        return tuple(self.tower.digits(self.value))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower is not self.tower and other.tower != self.tower:
                raise PreconditionError("elements from different towers")
            return other.value
        if isinstance(other, int):
            return other % self.tower.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower.sub(v, self.value))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower.div(v, self.value))

    def __pow__(self, e):
        return FieldElement(self.tower, self.tower.power(self.value, e))

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv(self.value))

    def frobenius(self, j=1):
        return FieldElement(self.tower, self.tower.frob(self.value, j))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.tower == other.tower
        if isinstance(other, int):
            return self.value == other % self.tower.p
        return NotImplemented

    def __hash__(self):
        return hash((self.tower, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.tower.format_value(self.value)

    def __repr__(self):
        return "FieldElement(%s)" % self


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def make_tower(p, a, m, modulus=None):
    """Build the tower F_p <= F_{p^a} <= F_{p^m}.

    Without an explicit ``modulus`` the first irreducible monic polynomial of
    degree ``m`` is taken, scanning the lower coefficients as base-``p``
    integers in increasing order.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise PreconditionError("characteristic %r is not prime" % (p,))
    if a < 1 or m < 1 or m % a:
        raise PreconditionError("need a | m, got a=%r m=%r" % (a, m))
    if modulus is not None:
        modulus = [int(c) for c in modulus]
        if len(modulus) != m + 1 or modulus[-1] % p != 1:
            raise PreconditionError("modulus must be monic of degree %d" % m)
        return FieldTower(p, a, m, modulus)
    for tail in range(p**m):
        cand = [(tail // p**i) % p for i in range(m)] + [1]
        if is_irreducible(cand, p):
            return FieldTower(p, a, m, cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def frobenius(x, j=1):
    return x.frobenius(j)


def subfield_membership(x, level):
    return x.tower.in_level(x.value, level)


def cyclotomic_coset(x, level=Level.BASE):
    """The orbit ``x, x^q, x^(q^2), ...`` of ``x`` in orbit order.

    With ``level="middle"`` the orbit is taken under ``sigma^a`` instead.
    """
    step = x.tower.level_degree(level)
    orbit = [x]
    y = x.frobenius(step)
    while y != x:
        orbit.append(y)
        y = y.frobenius(step)
    return tuple(orbit)


def minimal_polynomial(x, over_level=Level.BASE):
    """Minimal polynomial of ``x`` over F_q (or F_{q^a}), lowest degree first.

    Computed as the product of ``(X - y)`` over the Frobenius orbit of ``x``.
    """
    T = x.tower
    coeffs = [1]
    for root in cyclotomic_coset(x, over_level):
        nr = T.neg(root.value)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = T.add(nxt[i + 1], c)
            nxt[i] = T.add(nxt[i], T.mul(nr, c))
        coeffs = nxt
    return tuple(FieldElement(T, c) for c in coeffs)


def eval_commutative(coeffs, x):
    """Evaluate a commutative polynomial (lowest first) at ``x`` by Horner."""
    acc = x.tower.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class NormalBasis:
    """Normal basis ``b_j = sigma^(a j)(generator)`` of F_{q^m} over F_{q^a}."""

    tower: FieldTower
    generator: FieldElement
    elements: tuple
    _solve: np.ndarray
    _middle: tuple

    @property
    def r(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, j):
        return self.elements[j]

    def coordinates(self, v):
        """Packed values of the F_{q^a}-coordinates of packed value ``v``."""
        T = self.tower
        lam = (self._solve @ T.vec(v)) % T.p
        a = T.a
        out = []
        for j in range(self.r):
            acc = 0
            for t in range(a):
                c = int(lam[j * a + t])
                if c:
                    acc = T.add(acc, T.mul(c, self._middle[t]))
            out.append(acc)
        return out

    def recombine(self, coords):
        acc = self.tower.zero()
        for k, b in zip(coords, self.elements):
            acc = acc + k * b
        return acc


def _normal_basis_matrix(tower, alpha_value):
    T = tower
    elems = [T.frob(alpha_value, T.a * j) for j in range(T.r)]
    middle = T.level_basis(Level.MIDDLE)
    cols = [T.digits(T.mul(beta, b)) for b in elems for beta in middle]
    return elems, np.array(cols, dtype=np.int64).T


def find_normal_basis(tower):
    """First element (in packed-value order) whose sigma^a-orbit is a basis."""
    T = tower
    for v in range(1, T.order):
        elems, M = _normal_basis_matrix(T, v)
        if fplinalg.rank(M, T.p) == T.m:
            return NormalBasis(T, FieldElement(T, v),
                               tuple(FieldElement(T, e) for e in elems),
                               fplinalg.inverse(M, T.p), T.level_basis(Level.MIDDLE))
    raise AssertionError("no normal basis found")  # pragma: no cover


def normal_basis_from(x):
    """Normal basis generated by ``x``; raises if its orbit is dependent."""
    T = x.tower
    elems, M = _normal_basis_matrix(T, x.value)
    if fplinalg.rank(M, T.p) != T.m:
        raise PreconditionError("%s does not generate a normal basis" % x)
    return NormalBasis(T, x, tuple(FieldElement(T, e) for e in elems),
                       fplinalg.inverse(M, T.p), T.level_basis(Level.MIDDLE))


def decompose(x, basis):
    """Coordinates ``k_j`` in F_{q^a} with ``x = sum_j k_j b_j``."""
    return tuple(FieldElement(basis.tower, v) for v in basis.coordinates(x.value))
