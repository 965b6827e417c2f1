import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcodes.errors import PreconditionError
from skewcodes.galois import Level, find_normal_basis
from skewcodes.nrscode import NrsCode, orbit_evaluation_vector
from skewcodes.sampling import random_sqc_code
from skewcodes.skewpoly import SkewPoly, is_total_divisor
from skewcodes.sqccode import (SqcCode, circulant_repr, dual_code, dual_structure,
                               enumerate_module, is_circulant, is_sqc, lift_generators,
                               matrix_ring_check, module_structure, phi, phi_inv,
                               q_inner_product, skew_shift, star_dual, x_times)

from conftest import tower


def top(T, coeffs):
    return SkewPoly(T, coeffs, Level.TOP)


def full_code(T, n, ell):
    gens = []
    for j in range(ell):
        for b in T.level_basis(Level.TOP):
            gens.append(tuple(top(T, [T.from_value(b)]) if i == j else top(T, [])
                              for i in range(ell)))
    return SqcCode(T, n, ell, tuple(gens))


def test_phi_examples(f4):
    z = f4.gen()
    assert phi(f4, (0, 0), 1) == (top(f4, []),)
    assert phi(f4, (z, 1), 1) == (top(f4, [z, 1]),)
    assert phi_inv(phi(f4, (z, 1, 0, z), 2), 2) == (z.value, 1, 0, z.value)
    with pytest.raises(PreconditionError):
        phi(f4, (z, 1, 0), 2)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_phi_intertwines_shift(data):
    T = tower(*data.draw(st.sampled_from([(2, 1, 2), (2, 2, 4), (3, 1, 2)])))
    ell = data.draw(st.integers(1, 2))
    n = T.m * data.draw(st.integers(1, 2))
    word = data.draw(st.lists(st.integers(0, T.order - 1), min_size=n * ell, max_size=n * ell))
    vec = phi(T, word, ell)
    assert phi(T, skew_shift(T, word, ell), ell) == x_times(vec, n)
    assert phi_inv(vec, n) == tuple(word)


def test_is_sqc_examples(f4):
    z = f4.gen()
    units = [tuple(int(i == t) for i in range(4)) for t in range(4)]
    assert is_sqc(units, f4, 2, 2, Level.TOP)
    assert not is_sqc(full_code(f4, 2, 2).generators, f4, 2, 2, Level.TOP)
    # (1, 0) alone: its shift (0, 1) is outside the F_4-span
    assert not is_sqc([(1, 0)], f4, 2, 1, Level.TOP)
    assert is_sqc([(1, 1)], f4, 2, 1, Level.BASE)
    assert not is_sqc([(z, 0, 0, 1)], f4, 2, 2, Level.TOP)


def test_nrs_orbit_code_is_sqc(f16):
    w = f16.gen()
    code = NrsCode(f16, orbit_evaluation_vector(f16, [w, w**3]), 5, 2)
    words = [code.orbit_layout.to_canonical(r) for r in code.generator_matrix]
    assert is_sqc(words, f16, 4, 2, Level.BASE)


def test_lift_examples(f4):
    zero = SqcCode(f4, 2, 1, ())
    A, nb = lift_generators(zero)
    assert A.rows == 0
    code = SqcCode(f4, 2, 1, ((top(f4, [1, 1]),),))
    A, nb = lift_generators(code)
    assert (A.rows, A.cols) == (1, 2)
    from skewcodes.skewpoly import module_recombine
    assert module_recombine(A.entries[0], nb) == top(f4, [1, 1])


def test_structure_of_zero_and_full(f4):
    st_ = module_structure(SqcCode(f4, 2, 1, ()))
    assert all(d == 1 for d in st_.d_list) and st_.cardinality == 1
    st_ = module_structure(full_code(f4, 2, 1))
    assert all(d == SkewPoly.x_power_minus_one(f4, 2) for d in st_.d_list)
    assert st_.cardinality == 2 ** (2 * 2 * 1)


def test_running_example_structure(f4):
    code = SqcCode(f4, 2, 1, ((top(f4, [1, 1]),),))
    st_ = module_structure(code)
    assert st_.cardinality == len(enumerate_module(code))
    xn1 = SkewPoly.x_power_minus_one(f4, 2, Level.MIDDLE)
    for h, d in zip(st_.h_list, st_.d_list):
        assert h * d == xn1 and d * h == xn1 and is_total_divisor(h, xn1)


@pytest.mark.parametrize("params,ell", [((2, 1, 2), 1), ((2, 1, 2), 2), ((2, 2, 2), 1),
                                      ((2, 2, 2), 2)])
def test_random_structures(params, ell):
    T = tower(*params)
    rng = random.Random(ell * 7 + T.a)
    xn1 = SkewPoly.x_power_minus_one(T, 2, Level.MIDDLE)
    for _ in range(8):
        code = random_sqc_code(rng, T, 2, ell, max_generators=2)
        st_ = module_structure(code)
        assert st_.cardinality == len(enumerate_module(code))
        assert st_.cardinality == code.cardinality
        for h, d in zip(st_.h_list, st_.d_list):
            assert h * d == xn1 and d * h == xn1 and is_total_divisor(h, xn1)
        for g in st_.code_generators():
            assert code.contains(g)


def test_q_inner_product_examples(f4_skew):
    T = f4_skew
    code = SqcCode(T, 2, 2, ((top(T, [T.gen(), 1]), top(T, [1])),))
    st_ = module_structure(code)
    n = len(st_.q_list)
    zero = tuple(SkewPoly.zero(T, Level.MIDDLE) for _ in range(n))
    for i, qi in enumerate(st_.q_list):
        assert not q_inner_product(zero, qi, st_.Q_inv)
        for j, qj in enumerate(st_.q_list):
            assert q_inner_product(qi, qj, st_.Q_inv) == (1 if i == j else 0)
    xn1 = SkewPoly.x_power_minus_one(T, 2, Level.MIDDLE)
    for i, c in enumerate(st_.c_list):
        for j, cd in enumerate(st_.cdual_list):
            exact = q_inner_product(c, cd, st_.Q_inv)
            assert exact == (xn1 if i == j else 0)
            assert not q_inner_product(c, cd, st_.Q_inv, n=2)
    with pytest.raises(PreconditionError):
        q_inner_product(zero[:1], zero, st_.Q_inv)


def test_literal_inner_product_agrees_when_commutative(f4):
    code = SqcCode(f4, 2, 1, ((top(f4, [1, 1]),),))
    st_ = module_structure(code)
    for c in st_.c_list:
        for cd in st_.cdual_list:
            assert (q_inner_product(c, cd, st_.Q_inv, literal=True)
                    == q_inner_product(c, cd, st_.Q_inv))


def test_star_dual_examples(f4):
    _, vecs = star_dual(module_structure(full_code(f4, 2, 1)))
    assert all(not f for v in vecs for f in v)
    zero_st = module_structure(SqcCode(f4, 2, 1, ()))
    dual = dual_code(zero_st)
    assert dual.cardinality == 2 ** 4


@pytest.mark.parametrize("params", [(2, 1, 2), (2, 2, 2)])
def test_double_star_dual(params):
    T = tower(*params)
    rng = random.Random(3)
    for _ in range(10):
        st_ = module_structure(random_sqc_code(rng, T, 2, 1, max_generators=2))
        ds = dual_structure(st_)
        assert ds.cdual_list == st_.c_list
        assert dual_code(st_).cardinality * st_.cardinality == T.order ** 2


def test_dimension_matches_linear_algebra(f4_skew):
    rng = random.Random(11)
    for _ in range(10):
        code = random_sqc_code(rng, f4_skew, 2, 2)
        st_ = module_structure(code)
        assert f4_skew.a * st_.dimension == code.fp_dimension


@pytest.mark.parametrize("params,exhaustive", [((2, 1, 1), True), ((2, 1, 2), True),
                                             ((3, 1, 2), False)])
def test_matrix_ring(params, exhaustive):
    T = tower(*params)
    rep = matrix_ring_check(T, samples=40, cap=2**12 if exhaustive else 16)
    assert rep.ok, rep.failures
    assert rep.exhaustive == exhaustive
    assert rep.order_exponent == T.m ** 2


def test_matrix_ring_rejects_other_m(f4):
    with pytest.raises(PreconditionError):
        matrix_ring_check(f4, m=3)


def test_circulant_examples(f4):
    nb = find_normal_basis(f4)
    assert (circulant_repr(top(f4, [1]), f4, nb) == np.eye(2, dtype=int)).all()
    assert (circulant_repr(top(f4, [0, 1]), f4, nb) == np.array([[0, 1], [1, 0]])).all()
    with pytest.raises(PreconditionError):
        circulant_repr(top(tower(2, 2, 2), [1]), tower(2, 2, 2))


@pytest.mark.parametrize("params", [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 1, 4)])
def test_circulant_homomorphism(params):
    T = tower(*params)
    nb = find_normal_basis(T)
    rng = random.Random(2)
    m = T.m
    for _ in range(20):
        g = top(T, [T.from_value(rng.randrange(T.order)) for _ in range(m)])
        h = top(T, [T.from_value(rng.randrange(T.order)) for _ in range(m)])
        Mg, Mh = circulant_repr(g, T, nb), circulant_repr(h, T, nb)
        assert ((Mg @ Mh) % T.p == circulant_repr((g * h).reduce_mod_xn1(m), T, nb)).all()
        base = top(T, [rng.randrange(T.p) for _ in range(m)])
        assert is_circulant(circulant_repr(base, T, nb))
