import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcodes.errors import InvariantViolation, PreconditionError
from skewcodes.galois import Level
from skewcodes.sampling import random_matrix
from skewcodes.skewpoly import SkewPoly, is_total_divisor
from skewcodes.smithform import (SkewMatrix, SnfResult, replay_ops, smith_normal_form,
                                 snf_violations, stacked_basis_mod_ideal, verify_snf)

from conftest import tower
from oracles import snf_matches_determinantal
from strategies import matrices, skew_towers


def P(T, coeffs):
    return SkewPoly(T, coeffs, Level.MIDDLE)


def test_identity(f4):
    I = SkewMatrix.identity(f4, 3)
    res = smith_normal_form(I)
    assert res.J == I and res.S.is_identity() and res.T.is_identity()


def test_already_diagonal(f4):
    e = P(f4, [1, 1])
    z = SkewPoly.zero(f4)
    M = SkewMatrix(f4, 2, 2, [[e, z], [z, e]])
    res = smith_normal_form(M)
    assert list(res.diagonal) == [e, e]
    assert verify_snf(M, res)


def test_two_by_two_example(f4):
    M = SkewMatrix(f4, 2, 2, [[P(f4, [0, 1]), 1], [0, P(f4, [0, 1])]])
    res = smith_normal_form(M)
    assert list(res.diagonal) == [1, P(f4, [0, 0, 1])]
    assert res.S @ M @ res.T == res.J
    assert snf_matches_determinantal(M, res.diagonal, 2)


def test_zero_matrix(f4):
    M = SkewMatrix.zeros(f4, 2, 3)
    res = smith_normal_form(M)
    assert res.diagonal == ()
    assert verify_snf(M, res)


def test_verify_rejects_perturbed_result(f4):
    M = SkewMatrix(f4, 2, 2, [[P(f4, [0, 1]), 1], [0, P(f4, [0, 1])]])
    res = smith_normal_form(M)
    bad = [list(r) for r in res.J.entries]
    bad[0][0] = bad[0][0] + 1
    broken = SnfResult(res.S, res.T, SkewMatrix(f4, 2, 2, bad), res.S_inv, res.T_inv, res.diagonal)
    assert not verify_snf(M, broken)


def test_verify_rejects_swapped_chain(f4_skew):
    T = f4_skew
    z = SkewPoly.zero(T)
    J = SkewMatrix(T, 2, 2, [[P(T, [1, 0, 1]), z], [z, SkewPoly.one(T)]])
    I = SkewMatrix.identity(T, 2)
    res = SnfResult(I, I, J, I, I, tuple(J[i, i] for i in range(2)))
    problems = snf_violations(J, res)
    assert problems and any("chain" in p for p in problems)


def test_non_total_divisor_pair_is_repaired(f4_skew):
    # diag(X + z, X + z) is diagonal but X + z is not a total divisor of itself
    T = f4_skew
    g = P(T, [T.gen(), 1])
    z = SkewPoly.zero(T)
    M = SkewMatrix(T, 2, 2, [[g, z], [z, g]])
    res = smith_normal_form(M)
    assert verify_snf(M, res)
    assert res.diagonal[0] == 1
    assert res.diagonal[1].degree == 2


@pytest.mark.parametrize("params", [(2, 1, 1), (2, 1, 2), (2, 2, 2), (2, 2, 4), (3, 2, 2)])
def test_random_matrices_verify(params):
    T = tower(*params)
    rng = random.Random(hash(params) & 0xFFFF)
    for _ in range(40):
        M = random_matrix(rng, T)
        res = smith_normal_form(M)
        assert snf_violations(M, res) == []
        assert all(e.is_monic() for e in res.diagonal)
        n = len(res.diagonal)
        for i in range(n - 1):
            assert is_total_divisor(res.diagonal[i], res.diagonal[i + 1])


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_operations_replay_to_transforms(data):
    T = data.draw(skew_towers([(2, 2, 2), (2, 1, 2), (3, 2, 2)]))
    M = data.draw(matrices(T))
    res = smith_normal_form(M)
    assert replay_ops(T, M.rows, res.row_ops, "row") == res.S
    assert replay_ops(T, M.cols, res.col_ops, "col") == res.T
    assert (res.S @ res.S_inv).is_identity() and (res.T @ res.T_inv).is_identity()


@pytest.mark.parametrize("p", [2, 3])
def test_determinantal_oracle(p):
    T = tower(p, 1, 1)
    rng = random.Random(p)
    for _ in range(25):
        M = random_matrix(rng, T, max_dim=3, max_degree=2)
        res = smith_normal_form(M)
        assert snf_matches_determinantal(M, res.diagonal, p)


def test_stacked_basis_examples(f4):
    T = f4
    A = SkewMatrix(T, 1, 1, [[P(T, [1, 1])]])
    sb = stacked_basis_mod_ideal(A, 2)
    assert list(sb.h_list) == [P(T, [1, 1])]
    assert list(sb.d_list) == [P(T, [1, 1])]
    sb = stacked_basis_mod_ideal(SkewMatrix.identity(T, 2), 2)
    assert all(h == 1 for h in sb.h_list)
    assert all(d == SkewPoly.x_power_minus_one(T, 2) for d in sb.d_list)
    sb = stacked_basis_mod_ideal(SkewMatrix(T, 0, 2, []), 2)
    assert all(h == SkewPoly.x_power_minus_one(T, 2) for h in sb.h_list)
    assert all(d == 1 for d in sb.d_list)


def test_stacked_basis_needs_divisible_length(f4_skew):
    with pytest.raises(PreconditionError):
        stacked_basis_mod_ideal(SkewMatrix.identity(f4_skew, 1), 3)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_stacked_basis_cofactors(data):
    T = data.draw(skew_towers([(2, 2, 2), (2, 1, 2), (3, 2, 2)]))
    A = data.draw(matrices(T, max_dim=2))
    sb = stacked_basis_mod_ideal(A, 2)
    xn1 = SkewPoly.x_power_minus_one(T, 2, Level.MIDDLE)
    for h, d in zip(sb.h_list, sb.d_list):
        assert h * d == xn1 and d * h == xn1
        assert is_total_divisor(h, xn1)


def test_quotient_cardinality_matches_enumeration():
    # |rowspace([A; (X^n-1)I]) / (X^n-1)| = q^(a * sum deg d_i) on tiny instances
    from skewcodes.sqccode import SqcCode, enumerate_module, module_structure
    T = tower(2, 2, 2)
    rng = random.Random(5)
    for _ in range(15):
        gens = tuple((SkewPoly._make(T, [rng.randrange(T.order) for _ in range(2)], Level.TOP),)
                     for _ in range(rng.randint(0, 2)))
        code = SqcCode(T, 2, 1, gens)
        st_ = module_structure(code)
        assert len(enumerate_module(code)) == T.p ** (T.a * sum(max(d.degree, 0) for d in st_.d_list))
