"""Graded symbol complexes: structure, homotopy calculus, index identities."""

from fractions import Fraction

import numpy as np
import pytest

from distlab.distribution import negation_matrix, smoothing_factor
from distlab.exact_linalg import mat_equal
from distlab.lcomplex import (
    AVERAGE,
    DIFFERENCE,
    KINDS,
    AveragedLevel,
    SparseOp,
    _minus_pair_matrix,
    acyclicity_check,
    build_jcomplex,
    det_check,
    epsilon,
    homotopy_check,
    index_formula_check,
    intertwine_check,
    level_inclusion_check,
    symbol_basis,
)


def test_symbol_basis_bookkeeping():
    sb = symbol_basis(12)
    assert sb.ranks == {0: 12, -1: 10, -2: 2}
    assert sb.blocks == {0: (1,), -1: (2, 3), -2: (6,)}
    # positions are consecutive within a degree, blocks in ascending order
    assert sb.position(2, 0) == 0
    assert sb.position(2, 5) == 5
    assert sb.position(3, 0) == 6
    assert sb.position(3, -1) == 9  # point index wraps modulo the block size
    assert list(sb.symbols(-2)) == [(6, 0), (6, 1)]


def test_epsilon_alternates_over_primes():
    assert epsilon(30, 2) == -1
    assert epsilon(30, 3) == 1
    assert epsilon(30, 5) == -1
    assert epsilon(15, 3) == -1
    assert epsilon(15, 5) == 1
    assert epsilon(15, 2) == 0


def test_sparse_op_algebra():
    a = SparseOp(2, 3, [{0: 1, 2: -1}, {1: 2}])
    i2 = SparseOp.identity(2)
    assert a.compose(i2) == a
    assert a.plus(a.minus(a)).is_zero() is False  # a + 0 = a
    assert a.minus(a).is_zero()
    M = a.to_matrix()
    assert M[0, 0] == 1 and M[2, 0] == -1 and M[1, 1] == 2
    b = SparseOp(3, 1, [{0: 3}, {}, {0: 1}])
    assert b.compose(a).to_matrix().tolist() == [[2, 0]]


def test_complexes_validate_at_three_primes():
    for kind in KINDS:
        jc = build_jcomplex(30, kind)  # constructor checks d^2 = 0, c d = d c
        assert jc.complex.rank(0) == 30
        assert jc.complex.rank(-3) == 1


@pytest.mark.parametrize("m", [3, 4, 9, 12, 16, 18])
def test_acyclic_with_degree_zero_quotients(m):
    assert acyclicity_check(m)["ok"]


def test_degree_zero_cohomology_injects_into_deeper_levels():
    assert level_inclusion_check(4, 3)["ok"]
    assert level_inclusion_check(5, 2)["ok"]


@pytest.mark.parametrize("m", [4, 9, 12, 30])
def test_homotopy_identities(m):
    r = homotopy_check(m)
    for kind in KINDS:
        assert all(r[kind].values()), (m, kind, r[kind])


def test_averaged_differential_matches_symbol_differential():
    # redundant with homotopy_check but pins the change-of-basis contract
    av = AveragedLevel(12, DIFFERENCE)
    from distlab.lcomplex import differentials

    d = differentials(12, DIFFERENCE)
    lhs = d[-1] @ av.change[-1]
    rhs = av.change[0] @ av.full_d(-1).to_matrix()
    assert mat_equal(lhs, rhs)


@pytest.mark.parametrize("m", [12, 20, 27])
def test_smoothing_intertwines_and_commutes(m):
    assert intertwine_check(m)["ok"]


def test_minus_pair_restriction_of_negation():
    R = _minus_pair_matrix(negation_matrix(5))
    assert R.shape == (2, 2)
    assert mat_equal(R, -np.array([[1, 0], [0, 1]], dtype=object))
    # even block size drops the self-negative midpoint
    assert _minus_pair_matrix(negation_matrix(6)).shape == (2, 2)
    assert _minus_pair_matrix(negation_matrix(2)).shape == (0, 0)


def test_minus_pair_restriction_entries():
    F = smoothing_factor(5, 2)
    R = _minus_pair_matrix(F)
    for b, k in enumerate([1, 2]):
        v = F[:, k] - F[:, 5 - k]
        assert v[0] == 0
        for a, i in enumerate([1, 2]):
            assert R[a, b] == v[i]
            assert v[5 - i] == -v[i]


@pytest.mark.parametrize("m", [4, 9, 12, 15, 16, 24, 40])
def test_determinant_identities(m):
    r = det_check(m)
    assert r["ok"], r


@pytest.mark.parametrize(
    "m, i1, i2",
    [(3, 2, 1), (4, 2, 2), (9, 2, 1), (12, 2, 1), (15, 2, 1), (16, 2, 2)],
)
def test_index_formula(m, i1, i2):
    r = index_formula_check(m)
    assert r["equal"], r
    assert r["i_d1"] == i1
    assert r["i_d2"] == i2


def test_index_formula_sides_at_12():
    r = index_formula_check(12)
    assert r["lhs"] == Fraction(1, 4)
    assert r["det_part"] == Fraction(1, 2)
