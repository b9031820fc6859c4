"""Root-of-unity arithmetic, characters, B_1 values, class numbers."""

from fractions import Fraction
from math import gcd

import pytest

from distlab.arith import (
    crt,
    divisors,
    euler_phi,
    factorize,
    inverse_mod,
    mobius,
    multiplicative_order,
    primitive_root,
    squarefree_divisors,
)
from distlab.cyclotomic import (
    CycNum,
    DirichletChar,
    all_characters,
    bernoulli1,
    character_product_full,
    character_product_minus,
    cyclotomic_poly,
    h_minus,
    l_value_crosscheck,
    odd_characters,
    smoothing_det,
    smoothing_det_minus,
    unit_group,
)


def test_arith_helpers():
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert euler_phi(105) == 48
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert squarefree_divisors(12) == [1, 2, 3, 6]
    assert mobius(30) == -1 and mobius(12) == 0 and mobius(1) == 1
    assert multiplicative_order(3, 8) == 2
    assert primitive_root(9) == 2
    assert crt([(2, 3), (3, 5)]) == 8
    assert inverse_mod(3, 7) == 5
    with pytest.raises(ValueError):
        inverse_mod(6, 9)


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    # degree phi(n), and evaluation at 1 is p for prime powers
    assert len(cyclotomic_poly(105)) == euler_phi(105) + 1
    assert sum(cyclotomic_poly(49)) == 7


def test_cycnum_field_arithmetic():
    z = CycNum.zeta_power(5, 1)
    assert (z**5).as_rational() == 1
    assert (1 - z).norm() == 5  # value of the minimal polynomial at 1
    # Galois twists are ring maps and compose multiplicatively
    a = 2 * z + z**3 * Fraction(1, 2)
    assert a.galois(2).galois(3) == a.galois(6 % 5)
    assert (a * a).galois(2) == a.galois(2) * a.galois(2)


def test_unit_group_structure():
    g = unit_group(40)  # 8 * 5: (-1, 5-part of 8, root mod 5)
    assert sorted(g.orders) == [2, 2, 4]
    assert len(g.units()) == euler_phi(40) == 16
    u = unit_group(12)
    assert u.orders == (2, 2)
    exps = u.exponents_of(11)
    assert exps == (1, 1)  # -1 is the product of both generators


def test_character_basics():
    chars = all_characters(12)
    assert len(chars) == 4
    odd = odd_characters(12)
    assert sorted(c.conductor for c in odd) == [3, 4]
    triv = DirichletChar(12, (0, 0))
    assert triv.conductor == 1 and triv.order == 1
    chi = next(c for c in odd if c.conductor == 4)
    assert chi.value_exponent(5) == 0  # trivial on the conductor-3 leg
    assert chi.value_exponent(6) is None
    assert chi.primitive_at_conductor().modulus == 4


def test_bernoulli_values():
    chi4 = next(c for c in odd_characters(4))
    assert bernoulli1(chi4).as_rational() == Fraction(-1, 2)
    chi3 = next(c for c in odd_characters(3))
    assert bernoulli1(chi3).as_rational() == Fraction(-1, 3)


def test_h_minus_trivial_range():
    for m in (3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 20, 21, 24, 33, 35):
        assert h_minus(m) == 1, m


def test_h_minus_classical_values():
    assert h_minus(23) == 3
    assert h_minus(29) == 8
    assert h_minus(31) == 9
    assert h_minus(37) == 37
    assert h_minus(39) == 2
    assert h_minus(40) == 1


def test_h_minus_rejects_redundant_levels():
    with pytest.raises(ValueError):
        h_minus(6)
    with pytest.raises(ValueError):
        h_minus(2)


def test_smoothing_det_matches_character_product():
    for f in (1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 24):
        for p in (2, 3, 5, 7):
            if gcd(p, f) != 1:
                continue
            assert character_product_full(p, f) * smoothing_det(p, f) == 1
            assert character_product_minus(p, f) * smoothing_det_minus(p, f) == 1


def test_smoothing_det_minus_branch():
    # order of 3 mod 8 is even but 3^(c/2) is not -1: the parity-only rule
    # would give 9/16 here, the character product forces 9/8
    assert smoothing_det_minus(3, 8) == Fraction(9, 8)
    assert character_product_minus(3, 8) == Fraction(8, 9)
    # honest even case: 2 has order 2 mod 3 with 2 = -1
    assert smoothing_det_minus(2, 3) == (1 + Fraction(1, 2)) ** -1


def test_l_value_float_crosscheck():
    for m in (4, 15, 23):
        assert all(r["ok"] for r in l_value_crosscheck(m))
