"""Skew polynomials F[X; sigma] over a level of a :class:`FieldTower`.

Multiplication twists by the Frobenius: ``X * c = sigma(c) * X``.  The ring
is treated as right Euclidean: ``f = q * g + r`` is the primary division,
``gcrd``/``lclm`` are the right-sided notions.
"""

import itertools
from dataclasses import dataclass

from .errors import PreconditionError
from .galois import FieldElement, Level

#: Degree of the zero polynomial.
NEG_INF = float("-inf")


class SkewPoly:
    """Immutable skew polynomial; ``coeffs[i]`` is the coefficient of ``X^i``.

    ``level`` names the coefficient field and therefore the ring the
    polynomial is considered in.  It defaults to the smallest level holding
    every coefficient.  Equality ignores the level.
    """

    __slots__ = ("tower", "level", "_c")

    def __init__(self, tower, coeffs=(), level=None):
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.tower != tower:
                    raise PreconditionError("coefficient from a different tower")
                vals.append(c.value)
            elif isinstance(c, int):
                vals.append(c % tower.p)
            else:
                vals.append(tower.element(c).value)
        while vals and vals[-1] == 0:
            vals.pop()
        self.tower = tower
        self._c = tuple(vals)
        if level is None:
            self.level = max((tower.level_of(v) for v in self._c), default=Level.BASE)
        else:
            self.level = Level.parse(level)
            for v in self._c:
                if not tower.in_level(v, self.level):
                    raise PreconditionError("coefficient %s not in the %s field"
                                            % (tower.format_value(v), self.level))

    @classmethod
    def _make(cls, tower, vals, level):
        """Unchecked constructor from packed values (trims trailing zeros)."""
        vals = list(vals)
        while vals and vals[-1] == 0:
            vals.pop()
        obj = cls.__new__(cls)
        obj.tower = tower
        obj.level = level
        obj._c = tuple(vals)
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, tower, level=Level.BASE):
        return cls._make(tower, (), Level.parse(level))

    @classmethod
    def one(cls, tower, level=Level.BASE):
        return cls._make(tower, (1,), Level.parse(level))

    @classmethod
    def constant(cls, c, level=None):
        return cls(c.tower, [c], level)

    @classmethod
    def monomial(cls, tower, k, coeff=1, level=None):
        if isinstance(coeff, FieldElement):
            coeff = coeff.value
        else:
            coeff %= tower.p
        lvl = Level.parse(level) if level is not None else tower.level_of(coeff)
        return cls._make(tower, [0] * k + [coeff], lvl)

    @classmethod
    def x_power_minus_one(cls, tower, n, level=Level.BASE):
        """The central element ``X^n - 1``."""
        return cls._make(tower, [tower.neg(1)] + [0] * (n - 1) + [1], Level.parse(level))

    # -- basic accessors --------------------------------------------------
    @property
    def coeffs(self):
        return tuple(FieldElement(self.tower, v) for v in self._c)

    @property
    def values(self):
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    def deg(self):
        return self.degree

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def coeff(self, i):
        return FieldElement(self.tower, self._c[i] if 0 <= i < len(self._c) else 0)

    def leading_coefficient(self):
        if not self._c:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return FieldElement(self.tower, self._c[-1])

    lc = leading_coefficient

    def is_monic(self):
        return bool(self._c) and self._c[-1] == 1

    def at_level(self, level):
        return SkewPoly(self.tower, self.coeffs, level)

    def _ring_level(self, other):
        return max(self.level, other.level)

    # -- ring operations --------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, SkewPoly):
            if other.tower is not self.tower and other.tower != self.tower:
                raise PreconditionError("skew polynomials over different towers")
            return other
        if isinstance(other, (FieldElement, int)):
            v = other.value if isinstance(other, FieldElement) else other % self.tower.p
            return SkewPoly._make(self.tower, (v,), self.tower.level_of(v))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        T = self.tower
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = T.add(out[i], v)
        return SkewPoly._make(T, out, self._ring_level(other))

    __radd__ = __add__

    def __neg__(self):
        T = self.tower
        return SkewPoly._make(T, [T.neg(v) for v in self._c], self.level)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mul(other, self)

    def __pow__(self, e):
        result = SkewPoly.one(self.tower, self.level)
        for _ in range(e):
            result = result * self
        return result

    def __divmod__(self, other):
        return divmod_skew(self, other, "right")

    def __floordiv__(self, other):
        return divmod_skew(self, other, "right")[0]

    def __mod__(self, other):
        return divmod_skew(self, other, "right")[1]

    def monic(self):
        """Left-scale by the inverse leading coefficient."""
        if not self._c:
            raise PreconditionError("cannot normalize the zero polynomial")
        T = self.tower
        inv = T.inv(self._c[-1])
        return SkewPoly._make(T, [T.mul(inv, v) for v in self._c], self.level)

    def shift_down(self, k):
        """``t'`` with ``t = t' X^k``; requires the low ``k`` coefficients zero."""
        if any(self._c[:k]):
            raise PreconditionError("X^%d does not right-divide %s" % (k, self))
        return SkewPoly._make(self.tower, self._c[k:], self.level)

    def twist(self, j):
        """Apply ``sigma^j`` to every coefficient."""
        T = self.tower
        return SkewPoly._make(T, [T.frob(v, j) for v in self._c], self.level)

    def reduce_mod_xn1(self, n):
        """Remainder modulo ``X^n - 1`` (folds exponents modulo ``n``)."""
        if len(self._c) <= n:
            return self
        T = self.tower
        out = [0] * n
        for i, v in enumerate(self._c):
            out[i % n] = T.add(out[i % n], v)
        return SkewPoly._make(T, out, self.level)

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SkewPoly):
            return self._c == other._c and self.tower == other.tower
        if isinstance(other, (int, FieldElement)):
            o = self._coerce(other)
            return self._c == o._c
        return NotImplemented

    def __hash__(self):
        return hash((self.tower, self._c))

    def __str__(self):
        if not self._c:
            return "0"
        T = self.tower
        terms = []
        for i, v in enumerate(self._c):
            if not v:
                continue
            c = T.format_value(v)
            if i == 0:
                terms.append(c)
                continue
            mono = "X" if i == 1 else "X^%d" % i
            if c == "1":
                terms.append(mono)
            elif "+" in c:
                terms.append("(%s)%s" % (c, mono))
            else:
                terms.append(c + mono)
        return " + ".join(terms)

    def __repr__(self):
        return "SkewPoly(%s)" % self

    def to_json(self):
        T = self.tower
        out = []
        for v in self._c:
            d = T.digits(v)
            while len(d) > 1 and d[-1] == 0:
                d.pop()
            out.append(d)
        return out


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def mul(f, g):
    """Product ``f * g`` with ``(a X^i)(b X^j) = a sigma^i(b) X^(i+j)``."""
    T = f.tower
    a, b = f._c, g._c
    level = max(f.level, g.level)
    if not a or not b:
        return SkewPoly._make(T, (), level)
    out = [0] * (len(a) + len(b) - 1)
    tmul, tadd, frob = T.mul, T.add, T.frob
    # sigma is trivial on F_p, so base-level right factors skip the twist
    twisted = g.level != Level.BASE and T.m > 1
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                bt = frob(bj, i) if twisted else bj
                out[i + j] = tadd(out[i + j], tmul(ai, bt))
    return SkewPoly._make(T, out, level)


def divmod_skew(f, g, side="right"):
    """Euclidean division.

    ``side="right"`` returns ``(q, r)`` with ``f = q*g + r``;
    ``side="left"`` returns ``(q, r)`` with ``f = g*q + r``.
    """
    if not g._c:
        raise ZeroDivisionError("division by the zero skew polynomial")
    T = f.tower
    level = max(f.level, g.level)
    dg = len(g._c) - 1
    rem = list(f._c)
    quot = [0] * max(len(rem) - dg, 0)
    g_lead = g._c[-1]
    gc = g._c
    tmul, tsub, frob, inv = T.mul, T.sub, T.frob, T.inv
    if side == "right":
        # (t X^k) * g has leading term t sigma^k(g_lead) X^(k+dg)
        while len(rem) - 1 >= dg:
            c = rem[-1]
            k = len(rem) - 1 - dg
            if c:
                t = tmul(c, inv(frob(g_lead, k)))
                quot[k] = t
                for j, gj in enumerate(gc):
                    if gj:
                        rem[k + j] = tsub(rem[k + j], tmul(t, frob(gj, k)))
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
    elif side == "left":
        # g * (t X^k) = sum g_j sigma^j(t) X^(j+k)
        inv_lead = inv(g_lead)
        while len(rem) - 1 >= dg:
            c = rem[-1]
            k = len(rem) - 1 - dg
            if c:
                t = frob(tmul(c, inv_lead), -dg)
                quot[k] = t
                for j, gj in enumerate(gc):
                    if gj:
                        rem[k + j] = tsub(rem[k + j], tmul(gj, frob(t, j)))
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
    else:
        raise PreconditionError("side must be 'right' or 'left', got %r" % (side,))
    return SkewPoly._make(T, quot, level), SkewPoly._make(T, rem, level)


# public alias of divmod_skew; shadows the builtin within this module
def divmod(f, g, side="right"):  # noqa: A001
    return divmod_skew(f, g, side)


def right_divides(s, t):
    """``s |_r t``: ``t = u s`` for some ``u``."""
    return not divmod_skew(t, s, "right")[1]


def left_divides(s, t):
    """``s |_l t``: ``t = s u`` for some ``u``."""
    return not divmod_skew(t, s, "left")[1]


def gcrd_extended(f, g):
    """Monic ``d = gcrd(f, g)`` with Bezout cofactors, ``d = a*f + b*g``."""
    if not f and not g:
        raise PreconditionError("gcrd(0, 0) is undefined")
    d, a, b, _, _ = _right_euclid(f, g)
    return d, a, b


def _right_euclid(f, g):
    T = f.tower
    level = max(f.level, g.level)
    one = SkewPoly.one(T, level)
    zero = SkewPoly.zero(T, level)
    r0, r1 = f, g
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = divmod_skew(r0, r1, "right")
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    u = SkewPoly.constant(r0.leading_coefficient().inverse(), level)
    # r0 = s0 f + t0 g ; s1 f + t1 g = 0
    return u * r0, u * s0, u * t0, s1, t1


def gcrd(f, g):
    return gcrd_extended(f, g)[0]


def lclm(f, g):
    """Monic least common left multiple of nonzero ``f`` and ``g``."""
    if not f or not g:
        raise PreconditionError("lclm needs nonzero arguments")
    _, _, _, s1, _ = _right_euclid(f, g)
    return (s1 * f).monic()


# ---------------------------------------------------------------------------
# centre and total divisors
# ---------------------------------------------------------------------------

def _ring(level, *polys):
    """Coefficient level of the ambient ring; at least F_{q^a}."""
    if level is not None:
        return Level.parse(level)
    return max([Level.MIDDLE] + [f.level for f in polys])


def is_central(f, level=None):
    """Does ``f`` lie in the centre F_q[X^e] of its ring (e = level degree)?

    The ring defaults to F_{q^a}[X; sigma] (or the top ring for top-level
    ``f``), so ``X`` is central only when ``a = 1``.
    """
    level = _ring(level, f)
    T = f.tower
    e = T.level_degree(level)
    for i, v in enumerate(f._c):
        if v and (i % e or not T.in_level(v, Level.BASE)):
            return False
    return True


def _alpha_probe_set(tower, level):
    """1 together with an F_p-basis of the coefficient field at ``level``."""
    vals = [1] + [v for v in tower.level_basis(level) if v != 1]
    return vals


def total_divisor_witness(s, t, level=None):
    """First failing condition of the finite total-divisor criterion, or None.

    Checks ``s |_l alpha X^k t`` and ``s |_r t alpha X^k`` for ``alpha`` in a
    spanning set of the coefficient field and ``0 <= k < deg s``.  A witness
    is ``(side, alpha_value, k)`` with ``side`` the divisibility that failed.
    """
    if not s:
        raise PreconditionError("total divisibility by zero is undefined")
    level = _ring(level, s, t)
    T = s.tower
    if not t:
        return None
    for k in range(len(s._c) - 1):
        for alpha in _alpha_probe_set(T, level):
            u = SkewPoly._make(T, [0] * k + [alpha], level)
            if divmod_skew(u * t, s, "left")[1]:
                return ("left", alpha, k)
            if divmod_skew(t * u, s, "right")[1]:
                return ("right", alpha, k)
    return None


def is_total_divisor(s, t, level=None):
    """``s || t``: ``s`` left-divides ``u t`` and right-divides ``t u`` for all ``u``."""
    return total_divisor_witness(s, t, level) is None


def self_total_form(s, level=None):
    """Split ``s = gamma * c * X^k`` with ``c`` monic central, or return None."""
    if not s:
        return None
    level = _ring(level, s)
    T = s.tower
    k = next(i for i, v in enumerate(s._c) if v)
    gamma = s._c[-1]
    ginv = T.inv(gamma)
    c = SkewPoly._make(T, [T.mul(ginv, v) for v in s._c[k:]], level)
    if not is_central(c, level):
        return None
    return FieldElement(T, gamma), c, k


@dataclass(frozen=True)
class TwoSidedGenerator:
    """Monic generator ``g = c X^k`` of the two-sided ideal ``R t R``."""

    c: SkewPoly
    k: int

    @property
    def g(self):
        T = self.c.tower
        return self.c * SkewPoly.monomial(T, self.k, 1, self.c.level)


def central_monic_polys(tower, degree, level):
    """All monic elements of F_q[X^e] of exact degree ``degree``."""
    e = tower.level_degree(level)
    if degree % e:
        return
    slots = degree // e
    for combo in itertools.product(range(tower.p), repeat=slots):
        vals = [0] * (degree + 1)
        vals[degree] = 1
        for idx, c in enumerate(combo):
            vals[idx * e] = c
        yield SkewPoly._make(tower, vals, Level.parse(level))


def two_sided_generator(t, level=None):
    """``c X^k`` generating ``R t R``.

    ``k`` is the largest power of ``X`` right-dividing ``t`` and ``c`` the
    largest-degree monic central polynomial right-dividing ``t / X^k``,
    found by trial division in decreasing degree.
    """
    if not t:
        raise PreconditionError("the zero ideal has no generator")
    level = _ring(level, t)
    T = t.tower
    k = next(i for i, v in enumerate(t._c) if v)
    tp = t.shift_down(k)
    for deg in range(tp.degree, -1, -1):
        for c in central_monic_polys(T, deg, level):
            if right_divides(c, tp):
                return TwoSidedGenerator(c, k)
    raise AssertionError("unreachable: 1 divides everything")  # pragma: no cover


# ---------------------------------------------------------------------------
# normal-basis module decomposition
# ---------------------------------------------------------------------------

def module_decompose(f, basis):
    """Components ``f_j`` over F_{q^a} with ``f = sum_j f_j * b_j``.

    Coefficient ``a_i`` of ``X^i`` is handled through ``sigma^(-i)(a_i)``,
    which is expanded in the normal basis; the ``X^i`` coefficient of ``f_j``
    is then ``sigma^i`` of the ``j``-th coordinate.
    """
    T = f.tower
    r = basis.r
    comps = [[0] * len(f._c) for _ in range(r)]
    for i, v in enumerate(f._c):
        if not v:
            continue
        coords = basis.coordinates(T.frob(v, -i))
        for j, k in enumerate(coords):
            if k:
                comps[j][i] = T.frob(k, i)
    return tuple(SkewPoly._make(T, c, Level.MIDDLE) for c in comps)


def module_recombine(components, basis):
    """Inverse of :func:`module_decompose`: ``sum_j f_j * b_j``."""
    T = basis.tower
    acc = SkewPoly.zero(T, Level.TOP)
    for fj, b in zip(components, basis.elements):
        acc = acc + fj * SkewPoly._make(T, (b.value,), Level.TOP)
    return SkewPoly._make(T, acc._c, Level.TOP)


def parse_skewpoly(tower, data, level=None):
    """Build from the JSON form: list of element coefficient lists."""
    return SkewPoly(tower, [tower.element(list(c)) for c in data], level)
