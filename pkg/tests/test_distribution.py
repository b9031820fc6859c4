"""Level points, averaging bases, the two quotients, smoothing, exp map."""

from fractions import Fraction

import numpy as np
import pytest

from distlab.abgroup import FgAbGroup, tate_group
from distlab.arith import euler_phi
from distlab.distribution import (
    basis_check,
    cohomology_check,
    distribution_lattice,
    distribution_relation_rows,
    exp_kernel_check,
    exp_map_matrix,
    mult_matrix,
    negation_matrix,
    predistribution_lattice,
    predistribution_relation_rows,
    prime_step_relations_suffice,
    restricted_point,
    restricted_points,
    smoothing_check,
    smoothing_factor,
    smoothing_matrix,
    smoothing_matrix_inverse,
    tate_distribution,
    tate_predistribution,
    universal_distribution,
    universal_predistribution,
    x_matrix,
    y_matrix,
)
from distlab.exact_linalg import eye, mat_equal, zeros


def test_x_matrix_shape_and_columns():
    X = x_matrix(12, 3)
    assert X.shape == (12, 4)
    # preimages of 1/4 under *3 are 1/12, 5/12, 9/12
    assert [j for j in range(12) if X[j, 1]] == [1, 5, 9]
    with pytest.raises(ValueError):
        x_matrix(12, 5)


def test_y_matrix_prime_case():
    # for prime p the difference operator is the embedding minus the average
    m, p = 15, 3
    Y = y_matrix(m, p)
    X = x_matrix(m, p)
    for i in range(5):
        emb = zeros(m, 1)[:, 0]
        emb[i * p] = 1
        assert mat_equal((emb - X[:, i]).reshape(-1, 1), Y[:, i].reshape(-1, 1))


def test_y_matrix_prime_power():
    # (1 - X_2)^2 = 1 - 2 X_2 + X_4 on level 4; the embedded X_2 term hits
    # the even rows only while X_4 hits everything
    Y = y_matrix(4, 4)
    expect = zeros(4, 1)
    expect[0, 0] = 1 - 2 + 1
    expect[1, 0] = 1
    expect[2, 0] = -2 + 1
    expect[3, 0] = 1
    assert mat_equal(Y, expect)


def test_restricted_points_count():
    # the count at level m equals the unit count, at every divisor scale
    for m in (1, 2, 4, 9, 12, 30, 60):
        assert len(restricted_points(m)) == euler_phi(m)
    assert restricted_point(0, 1)
    assert not restricted_point(1, 2)  # 1/2 has leading digit 1 = 2 - 1


def test_standard_bases_unimodular():
    for m in (1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 30):
        r = basis_check(m)
        assert r["count_ok"] and r["x_unimodular"] and r["y_unimodular"], r


def test_relation_lattices():
    # level 4: both lattices have rank 2 = 4 - phi(4), and are saturated
    d = distribution_lattice(4)
    o = predistribution_lattice(4)
    assert d.rank == o.rank == 2
    assert universal_distribution(4).group == FgAbGroup(2)
    assert universal_predistribution(4).group == FgAbGroup(2)
    assert prime_step_relations_suffice(12)
    assert prime_step_relations_suffice(8)


def test_quotients_are_free_of_unit_rank():
    for m in (3, 4, 9, 12, 15, 16):
        assert universal_distribution(m).group == FgAbGroup(euler_phi(m))
        assert universal_predistribution(m).group == FgAbGroup(euler_phi(m))


def test_negation_action_tate_groups():
    # the fast free-coordinate route agrees with the presented route
    for m in (3, 4, 9, 12):
        rel = distribution_relation_rows(m)
        for parity in ("odd", "even"):
            slow = tate_group(negation_matrix(m), rel, parity)
            assert tate_distribution(m, parity) == slow


def test_cohomology_closed_forms_small():
    for m in (3, 4, 5, 8, 9, 12, 15, 16, 45):
        assert cohomology_check(m)["ok"], m


def test_cohomology_check_rejects_bad_levels():
    with pytest.raises(ValueError):
        cohomology_check(6)


def test_smoothing_factor_geometric_series():
    # column of 1 at level 4, p = 2: orbit 1 -> 2 -> 0 -> 0 cycle
    F = smoothing_factor(4, 2)
    assert F[1, 1] == 1
    assert F[2, 1] == Fraction(1, 2)
    assert F[0, 1] == Fraction(1, 4) * 2  # tail hit then the fixed cycle at 0
    # defining property, all levels
    for m, p in ((4, 2), (9, 3), (12, 2), (12, 3), (15, 5)):
        lhs = (eye(m) - mult_matrix(m, p) * Fraction(1, p)) @ smoothing_factor(m, p)
        assert mat_equal(lhs, eye(m))


def test_smoothing_inverse_and_relation_transport():
    for m in (1, 4, 9, 12, 24):
        assert smoothing_check(m)["ok"], m


def test_smoothing_against_direct_inverse():
    from distlab.exact_linalg import inverse_exact

    for m in (4, 9, 12):
        assert mat_equal(smoothing_matrix(m), inverse_exact(smoothing_matrix_inverse(m)))


def test_exp_map_kernel_and_image():
    for m in (1, 2, 3, 4, 8, 9, 12, 16, 30):
        assert exp_kernel_check(m)["ok"], m


def test_exp_map_small_example():
    # level 4: x^2 = -1 mod the minimal polynomial
    E = exp_map_matrix(4)
    assert E.shape == (2, 4)
    assert list(E[:, 0]) == [1, 0]
    assert list(E[:, 1]) == [0, 1]
    assert list(E[:, 2]) == [-1, 0]
    assert list(E[:, 3]) == [0, -1]
