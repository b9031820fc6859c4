"""Groups in canonical form, Tate cohomology, regulators, index invariant."""

import random
from fractions import Fraction

import numpy as np
import pytest

from distlab.abgroup import (
    BoundedComplex,
    FgAbGroup,
    JComplex,
    ZQuotient,
    abstract_index_check,
    cohomology_regulators,
    elementary_power,
    euler_regulator_check,
    i_invariant,
    random_regulator_pair,
    regulator,
    regulator_via_subgroups,
    subquotient_group,
    tate_group,
    theta_fixed,
)
from distlab.exact_linalg import Lattice, eye, imat, kernel_basis, qmat, zeros


def test_canonical_form_basics():
    G = FgAbGroup.from_relations(3, imat([[2, 0, 0], [0, 3, 0]]))
    assert G == FgAbGroup(1, (6,))
    assert str(G) == "Z + Z/6"
    assert FgAbGroup.from_invariants(0, [2, 2, 3]).torsion == (2, 6)
    assert FgAbGroup(0, ()).is_trivial
    assert elementary_power(2, 3) == FgAbGroup(0, (2, 2, 2))


def test_direct_sum_renormalizes():
    A = FgAbGroup(1, (2,))
    B = FgAbGroup(0, (3,))
    assert A.direct_sum(B) == FgAbGroup(1, (6,))


def test_zquotient_coordinates():
    # Z^2 / <(2, 0)> = Z/2 + Z
    q = ZQuotient(2, imat([[2, 0]]))
    assert q.group == FgAbGroup(1, (2,))
    P, S = q.P, q.S
    assert (P @ S)[0, 0] == 1
    assert q.stabilizes(imat([[1, 0], [0, 1]]))


def test_subquotient_group():
    num = imat([[1, 0], [0, 1]])
    den = imat([[2, 0]])
    assert subquotient_group(num, den) == FgAbGroup(1, (2,))
    with pytest.raises(ValueError):
        subquotient_group(imat([[2, 0]]), imat([[1, 0]]))


def test_tate_of_swap_action():
    # c swaps the two coordinates of Z^2: free J-module, both groups vanish
    C = imat([[0, 1], [1, 0]])
    none = zeros(0, 2)
    assert tate_group(C, none, "odd").is_trivial
    assert tate_group(C, none, "even").is_trivial


def test_tate_of_trivial_action():
    C = eye(1)
    none = zeros(0, 1)
    assert tate_group(C, none, "odd").is_trivial  # ker(2)/im(0)
    assert tate_group(C, none, "even") == FgAbGroup(0, (2,))  # Z/2Z


def test_tate_of_sign_action():
    C = imat([[-1]])
    none = zeros(0, 1)
    assert tate_group(C, none, "odd") == FgAbGroup(0, (2,))
    assert tate_group(C, none, "even").is_trivial


def test_theta_fixed_lattice():
    # negation on 4 points of level 4: fixed part of 1+c is the odd pair
    C = zeros(4, 4)
    for k in range(4):
        C[(-k) % 4, k] = 1
    lat = theta_fixed(C)
    assert lat.rank == 1
    v = lat.basis[0]
    assert v[0] == 0 and v[2] == 0 and {v[1], v[3]} == {1, -1}


def test_regulator_examples():
    # finite groups, empty matrix: ratio of orders
    A, B = FgAbGroup(0, (4,)), FgAbGroup(0, (2,))
    assert regulator(A, B, zeros(0, 0)) == Fraction(1, 2)
    # Z + Z/2 -> Z by multiplication by 3
    assert regulator(FgAbGroup(1, (2,)), FgAbGroup(1), imat([[3]])) == Fraction(3, 2)


def test_regulator_of_homomorphism_is_coker_over_ker():
    # f: Z -> Z, x -> 3x: coker Z/3, ker 0
    assert regulator(FgAbGroup(1), FgAbGroup(1), imat([[3]])) == 3


def test_regulator_independent_of_subgroup_choice():
    rng = random.Random(5)
    A = FgAbGroup(2, (2, 6))
    B = FgAbGroup(2, (3,))
    lam = qmat([[Fraction(1, 2), 1], [0, 3]])
    expect = regulator(A, B, lam)
    for _ in range(20):
        assert regulator_via_subgroups(A, B, lam, rng) == expect


def test_regulator_chain_rule():
    rng = random.Random(9)
    for _ in range(10):
        A = FgAbGroup(2, (rng.choice([2, 3, 4]),))
        B = FgAbGroup(2, (rng.choice([2, 5]), rng.choice([10, 20])))
        Cg = FgAbGroup(2)
        lam = qmat([[rng.randint(1, 3), rng.randint(0, 2)], [0, rng.randint(1, 3)]])
        mu = qmat([[1, Fraction(rng.randint(0, 3), 2)], [0, 2]])
        assert regulator(A, Cg, mu @ lam) == regulator(B, Cg, mu) * regulator(A, B, lam)


def _two_term(dmat):
    # complex 0 -> Z^a -> Z^b -> 0 in degrees -1, 0
    d = imat(dmat)
    return BoundedComplex({-1: d.shape[1], 0: d.shape[0]}, {-1: d})


def test_cohomology_of_two_term():
    C = _two_term([[2, 0], [0, 3]])
    assert C.cohomology(0) == FgAbGroup(0, (6,))
    assert C.cohomology(-1).is_trivial


def test_euler_regulator_identity_fixed_example():
    # two copies of Z^2 -> Z^2 with the elementary divisors swapped; the
    # induced map on H^0 is zero, so ker and coker both contribute
    CA = _two_term([[2, 0], [0, 1]])
    CB = _two_term([[1, 0], [0, 2]])
    lam = {-1: qmat([[2, 0], [0, 1]]), 0: qmat([[1, 0], [0, 2]])}
    res = euler_regulator_check(CA, CB, lam)
    assert res["equal"]
    assert res["lhs"] == 1


def test_euler_regulator_identity_randomized():
    rng = random.Random(2024)
    for _ in range(25):
        CA, CB, lam = random_regulator_pair(rng)
        res = euler_regulator_check(CA, CB, lam)
        assert res["equal"], (res, CA.ranks)


def _lp_complex(p):
    """Level-p two-term lattice with negation involution (hand-built).

    Degree -1 basis: the single coarse point; degree 0 basis: k/p for
    k = 0..p-1.  The differential sends the coarse point to the sum of its
    preimages minus itself, and the self term cancels against k = 0.
    """
    d = zeros(p, 1)
    for k in range(1, p):
        d[k, 0] = 1
    C = BoundedComplex({-1: 1, 0: p}, {-1: d})
    c0 = zeros(p, p)
    for k in range(p):
        c0[(-k) % p, k] = 1
    return JComplex(C, {0: c0, -1: eye(1)})


def test_i_invariant_prime_level():
    # distribution-style differential at a prime level: invariant is 2
    jc = _lp_complex(3)
    assert i_invariant(jc) == 2
    jc5 = _lp_complex(5)
    assert i_invariant(jc5) == 2


def test_i_invariant_predistribution_prime_level():
    # predistribution-style differential: sum over preimages only
    p = 3
    d = zeros(p, 1)
    for k in range(p):
        d[k, 0] = 1
    C = BoundedComplex({-1: 1, 0: p}, {-1: d})
    c0 = zeros(p, p)
    for k in range(p):
        c0[(-k) % p, k] = 1
    jc = JComplex(C, {0: c0, -1: eye(1)})
    assert i_invariant(jc) == 1


def test_fixed_subcomplex_shapes():
    jc = _lp_complex(5)
    fixed, bases = jc.fixed_subcomplex()
    assert fixed.rank(0) == 2  # pairs [k] - [-k]
    assert fixed.rank(-1) == 0
