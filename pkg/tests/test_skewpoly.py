import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import GF, Poly, symbols

from skewcodes.errors import PreconditionError
from skewcodes.galois import Level, find_normal_basis
from skewcodes.skewpoly import (NEG_INF, SkewPoly, divmod_skew, gcrd, gcrd_extended,
                                is_central, is_total_divisor, lclm, left_divides,
                                module_decompose, module_recombine, parse_skewpoly,
                                right_divides, self_total_form, total_divisor_witness,
                                two_sided_generator)

from conftest import level_values, tower
from strategies import polys, skew_towers


def P(T, coeffs, level=Level.MIDDLE):
    return SkewPoly(T, coeffs, level)


@pytest.fixture
def R4(f4_skew):
    """F_4[X; sigma] with z the generator."""
    T = f4_skew
    return T, T.gen()


def test_defining_relation(R4):
    T, z = R4
    X = SkewPoly.monomial(T, 1, 1, Level.MIDDLE)
    zc = SkewPoly.constant(z, Level.MIDDLE)
    assert X * zc == P(T, [0, z + 1])
    assert X * zc != zc * X


def test_multiplication_examples(f4):
    f = P(f4, [1, 1])
    assert f * SkewPoly.one(f4) == f
    assert f * f == P(f4, [1, 0, 1])
    assert SkewPoly.zero(f4).degree == NEG_INF


def test_division_examples(f4, R4):
    f = P(f4, [1, 0, 1])
    assert divmod_skew(f, f) == (SkewPoly.one(f4), SkewPoly.zero(f4))
    assert divmod_skew(f, P(f4, [1, 1])) == (P(f4, [1, 1]), SkewPoly.zero(f4))
    T, z = R4
    g = P(T, [z, 1])
    f = P(T, [1, 0, 1])
    q, r = divmod_skew(f, g)
    assert r.degree <= 0 and q * g + r == f
    with pytest.raises(ZeroDivisionError):
        divmod_skew(f, SkewPoly.zero(T))


def test_gcrd_examples(f4, R4):
    f = P(f4, [1, 0, 1])
    d, a, b = gcrd_extended(f, SkewPoly.zero(f4))
    assert d == f and a == SkewPoly.one(f4) and not b
    assert gcrd(f, P(f4, [1, 1])) == P(f4, [1, 1])
    T, z = R4
    f, g = P(T, [z, 1]), P(T, [z * z, 1])
    d, a, b = gcrd_extended(f, g)
    assert d == 1
    assert a * f + b * g == d
    with pytest.raises(PreconditionError):
        gcrd(SkewPoly.zero(T), SkewPoly.zero(T))


def test_lclm_examples(f4, R4):
    f = P(f4, [1, 1])
    assert lclm(f, f) == f
    assert lclm(f, P(f4, [0, 1])) == P(f4, [0, 1, 1])
    T, z = R4
    f, g = P(T, [z, 1]), P(T, [z * z, 1])
    L = lclm(f, g)
    assert L.degree == 2 and L.is_monic()
    assert right_divides(f, L) and right_divides(g, L)


def test_centrality_examples(R4):
    T, z = R4
    assert is_central(P(T, [0, 0, 1]))
    assert not is_central(P(T, [0, 0, z]))
    assert not is_central(P(T, [0, 1]))
    # a = 1: X is central in F_2[X]
    assert is_central(P(tower(2, 1, 2), [0, 1]))


def test_total_divisor_examples(R4):
    T, z = R4
    t = P(T, [z, 1])
    assert is_total_divisor(SkewPoly.one(T), t)
    assert not is_total_divisor(t, t)
    c = P(T, [1, 0, 1])
    assert is_total_divisor(c, c * t)
    assert total_divisor_witness(c, c * t) is None
    with pytest.raises(PreconditionError):
        is_total_divisor(SkewPoly.zero(T), t)


def test_two_sided_generator_examples(R4):
    T, z = R4
    c = P(T, [1, 0, 1])
    g = two_sided_generator(c)
    assert g.c == c and g.k == 0
    g = two_sided_generator(P(T, [0, 0, 0, 1]))
    assert g.c == 1 and g.k == 3
    g = two_sided_generator(c * P(T, [z, 1]))
    assert g.c == c and g.k == 0
    with pytest.raises(PreconditionError):
        two_sided_generator(SkewPoly.zero(T))


def test_module_decompose_examples(f4):
    nb = find_normal_basis(f4)
    b1 = SkewPoly.constant(nb[0], Level.TOP)
    comps = module_decompose(b1, nb)
    assert comps == (SkewPoly.one(f4), SkewPoly.zero(f4))
    for f in (P(f4, [0, 1], Level.TOP), P(f4, [0, f4.gen()], Level.TOP)):
        comps = module_decompose(f, nb)
        assert all(c.level == Level.MIDDLE for c in comps)
        assert module_recombine(comps, nb) == f


def test_parse_round_trip(R4):
    T, z = R4
    f = P(T, [1, z])
    assert f.to_json() == [[1], [0, 1]]
    assert parse_skewpoly(T, f.to_json()) == f


def test_coefficient_outside_level(R4):
    T, z = R4
    with pytest.raises(PreconditionError):
        SkewPoly(T, [z], Level.BASE)


# -- properties ----------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(st.data())
def test_division_reconstruction(data):
    T = data.draw(skew_towers())
    f = data.draw(polys(T, max_degree=6))
    g = data.draw(polys(T, nonzero=True))
    q, r = divmod_skew(f, g, "right")
    assert q * g + r == f and r.degree < g.degree
    q, r = divmod_skew(f, g, "left")
    assert g * q + r == f and r.degree < g.degree


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_bezout_and_common_divisor(data):
    T = data.draw(skew_towers())
    f = data.draw(polys(T, nonzero=True))
    g = data.draw(polys(T))
    h = data.draw(polys(T, nonzero=True, max_degree=2))
    d, a, b = gcrd_extended(f, g)
    assert d.is_monic()
    assert a * f + b * g == d
    assert right_divides(d, f) and right_divides(d, g)
    # a common right factor survives into the gcrd
    assert right_divides(h.monic(), gcrd(f * h, g * h))


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_lclm_properties(data):
    T = data.draw(skew_towers())
    f = data.draw(polys(T, nonzero=True, max_degree=3))
    g = data.draw(polys(T, nonzero=True, max_degree=3))
    L = lclm(f, g)
    assert L.is_monic()
    assert right_divides(f, L) and right_divides(g, L)
    assert L.degree == f.degree + g.degree - gcrd(f, g).degree
    u = data.draw(polys(T, nonzero=True, max_degree=2))
    assert right_divides(L, u * L)


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_degree_laws(data):
    T = data.draw(skew_towers())
    f, g, h = (data.draw(polys(T)) for _ in range(3))
    if f and g:
        assert (f * g).degree == f.degree + g.degree
    assert (f + g).degree <= max(f.degree, g.degree)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@pytest.mark.parametrize("p", [2, 3])
def test_commutative_case_matches_sympy(p):
    # with a = m = 1 the ring is F_p[X]; compare gcd/lcm against sympy
    T = tower(p, 1, 1)
    x = symbols("x")
    coeffs = list(itertools.product(range(p), repeat=3))
    for cf in coeffs[1:30]:
        for cg in coeffs[1:30:3]:
            f, g = P(T, list(cf)), P(T, list(cg))
            if not f or not g:
                continue
            sf = Poly(list(reversed(cf)), x, domain=GF(p))
            sg = Poly(list(reversed(cg)), x, domain=GF(p))
            expect = [int(c) % p for c in reversed(sf.gcd(sg).monic().all_coeffs())]
            assert list(gcrd(f, g).values) == expect
            expect = [int(c) % p for c in reversed(sf.lcm(sg).monic().all_coeffs())]
            assert list(lclm(f, g).values) == expect


def test_self_total_divisor_characterization_exhaustive():
    # every s of degree <= 3 over F_4[X; sigma]
    T = tower(2, 2, 2)
    vals = level_values(T, Level.MIDDLE)
    for coeffs in itertools.product(vals, repeat=4):
        s = SkewPoly._make(T, coeffs, Level.MIDDLE)
        if not s:
            continue
        assert is_total_divisor(s, s) == (self_total_form(s) is not None), s


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_total_divisor_transitivity(data):
    # central s |_r c |_r t with c central gives s || c and c || t, hence s || t
    T = data.draw(skew_towers([(2, 2, 2), (2, 2, 4), (3, 2, 2)]))
    e = T.a
    base = level_values(T, Level.BASE)
    cen = lambda cs: SkewPoly._make(T, [v if i % e == 0 else 0 for i, v in
                                        enumerate(x for c in cs for x in [c] + [0] * (e - 1))],
                                    Level.MIDDLE)
    s = cen(data.draw(st.lists(st.sampled_from(base), min_size=1, max_size=2)))
    assume(s)
    w = cen(data.draw(st.lists(st.sampled_from(base), min_size=1, max_size=2)))
    assume(w)
    c = w * s
    t = data.draw(polys(T, nonzero=True, max_degree=2)) * c
    assert is_central(s) and is_central(c)
    assert is_total_divisor(s, c) and is_total_divisor(c, t)
    assert is_total_divisor(s, t)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_gcrd_with_xn1_preserves_total_divisibility(data):
    T = data.draw(skew_towers([(2, 1, 2), (2, 2, 2), (2, 2, 4), (3, 2, 2)]))
    n = data.draw(st.sampled_from([k for k in (2, 4) if k % T.m == 0]))
    s, t = _constructed_total_pair(data, T)
    xn1 = SkewPoly.x_power_minus_one(T, n, Level.MIDDLE)
    assert is_total_divisor(s, t)
    assert is_total_divisor(gcrd(s, xn1), gcrd(t, xn1))


def _constructed_total_pair(data, T):
    """s || t via a central c with s |_r c and c |_r t."""
    e = T.a
    base = level_values(T, Level.BASE)
    digits = data.draw(st.lists(st.sampled_from(base), min_size=1, max_size=2))
    vals = [0] * (e * len(digits) + 1)
    for i, d in enumerate(digits):
        vals[i * e] = d
    vals[-1] = 1
    c = SkewPoly._make(T, vals, Level.MIDDLE)
    s = gcrd(data.draw(polys(T, nonzero=True, max_degree=3)), c)
    u = data.draw(polys(T, nonzero=True, max_degree=2))
    v = data.draw(polys(T, nonzero=True, max_degree=2))
    return s, u * c * v


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_two_sided_generator_divides(data):
    T = data.draw(skew_towers([(2, 2, 2), (3, 2, 2), (2, 1, 2)]))
    t = data.draw(polys(T, nonzero=True, max_degree=5))
    g = two_sided_generator(t)
    assert is_central(g.c) and g.c.is_monic()
    assert right_divides(g.g, t)
    assert not right_divides(SkewPoly.monomial(T, g.k + 1, 1, Level.MIDDLE), t)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_module_decompose_round_trip_and_linearity(data):
    T = data.draw(skew_towers([(2, 1, 2), (2, 2, 4), (2, 1, 3), (3, 1, 2)]))
    nb = find_normal_basis(T)
    f = data.draw(polys(T, Level.TOP, max_degree=4))
    g = data.draw(polys(T, Level.MIDDLE, max_degree=3))
    comps = module_decompose(f, nb)
    assert module_recombine(comps, nb) == f
    gf = SkewPoly._make(T, (g * f).values, Level.TOP)
    assert module_decompose(gf, nb) == tuple(g * c for c in comps)


def test_left_divides_and_shift(R4):
    T, z = R4
    g = P(T, [z, 1])
    u = P(T, [1, z, 1])
    assert left_divides(g, g * u)
    assert right_divides(g, u * g)
    X3 = SkewPoly.monomial(T, 3, 1, Level.MIDDLE)
    assert (g * X3).shift_down(3) == g
