"""Tests for the involution double complexes and their filtration pages."""

import numpy as np
import pytest

from distlab.abgroup import FgAbGroup, elementary_power
from distlab.exact_linalg import mat_equal, zeros
from distlab.lcomplex import AVERAGE, DIFFERENCE, KINDS
from distlab.spectral import (
    FULL,
    HALF,
    abutment_check,
    build_double,
    degeneration_check,
    e1_page_check,
    e1_row0_rank,
    e2_page_check,
    index_expected,
    index_values_check,
    page_homology_check,
    scaled_rows_check,
    spectral_verify,
    splitting_check,
)


def test_total_differential_squares_to_zero():
    dc = build_double(12, DIFFERENCE, FULL)
    for p in range(-2, 0):
        for q in range(-2, 4):
            a = dc.delta(p, q + 1) @ dc.delta(p, q)
            assert mat_equal(a, zeros(*a.shape))
            b = dc.d(p, q + 1) @ dc.delta(p, q) + dc.delta(p + 1, q) @ dc.d(p, q)
            assert mat_equal(b, zeros(*b.shape))


def test_interior_predicate():
    half = build_double(12, DIFFERENCE, HALF)
    full = build_double(12, DIFFERENCE, FULL)
    assert half.interior(0, 5, 2)
    assert not half.interior(0, 6, 1)  # numerator needs the row above
    assert not half.interior(0, 5, 3)
    assert full.interior(0, -3, 1)
    assert not full.interior(0, -4, 1)
    assert not full.interior(-1, -3, 1)


def test_first_page_bottom_row_ranks():
    assert e1_row0_rank(12, 0) == 5
    assert e1_row0_rank(12, -1) == 3
    assert e1_row0_rank(12, -2) == 0
    assert e1_row0_rank(3, 0) == 1
    assert e1_row0_rank(3, -1) == 0


@pytest.mark.parametrize("m", [3, 4, 9, 12, 15])
@pytest.mark.parametrize("kind", KINDS)
def test_first_page_closed_forms(m, kind):
    assert e1_page_check(m, kind)["ok"]


@pytest.mark.parametrize("m", [3, 4, 8, 9, 12, 15, 16])
@pytest.mark.parametrize("kind", KINDS)
def test_second_page(m, kind):
    res = e2_page_check(m, kind)
    assert res["closed_forms"]
    assert res["row0_fixed_subcomplex"]
    assert res["stable_corner"]


def test_second_page_pinned_values():
    half = build_double(12, DIFFERENCE, HALF)
    assert half.e_term(0, 1, 2) == elementary_power(2, 1)
    assert half.e_term(-1, 1, 2) == elementary_power(2, 2)
    assert half.e_term(-2, 1, 2) == elementary_power(2, 1)
    assert half.e_term(-1, 2, 2).is_trivial
    two = build_double(16, AVERAGE, HALF)
    assert two.e_term(0, 1, 2) == FgAbGroup(0, (2,))
    assert two.e_term(-1, 3, 2) == FgAbGroup(0, (2,))
    assert two.e_term(0, 2, 2).is_trivial
    odd = build_double(15, AVERAGE, HALF)
    assert odd.e_term(0, 1, 2).is_trivial


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("variant", [HALF, FULL])
def test_pages_are_homology_of_previous(kind, variant):
    assert page_homology_check(12, kind, variant)["ok"]


def test_pages_are_homology_of_previous_three_primes_sample():
    # one deeper level keeps the slack-variable route honest at r = 3
    assert page_homology_check(30, DIFFERENCE, HALF, rmax=3)["ok"]


@pytest.mark.parametrize("m", [4, 9, 12, 16])
@pytest.mark.parametrize("kind", KINDS)
def test_full_variant_degenerates_at_page_two(m, kind):
    assert degeneration_check(m, kind)["ok"]


@pytest.mark.parametrize("m", [3, 4, 9, 12, 16])
@pytest.mark.parametrize("kind", KINDS)
def test_abutment_matches_degree_zero_cohomology(m, kind):
    res = abutment_check(m, kind)
    assert res["ok"], res


@pytest.mark.parametrize("m", [3, 4, 9, 12, 15, 16])
@pytest.mark.parametrize("kind", KINDS)
def test_degree_one_abutment_splits_into_page_terms(m, kind):
    assert splitting_check(m, kind)["ok"]


@pytest.mark.parametrize("m", [3, 4, 9, 12, 15, 16])
def test_scaled_fixed_rows_subcomplex(m):
    res = scaled_rows_check(m)
    assert res["column_exact"]
    assert res["maps_integral"]
    assert res["d_stable"]


def test_index_closed_forms():
    assert index_expected(4, DIFFERENCE) == 2
    assert index_expected(15, DIFFERENCE) == 2
    assert index_expected(105, DIFFERENCE) == 4
    assert index_expected(16, AVERAGE) == 2
    assert index_expected(15, AVERAGE) == 1


@pytest.mark.parametrize("m", [3, 4, 8, 9, 12, 15, 16, 24])
def test_index_invariants(m):
    assert index_values_check(m)["ok"]


@pytest.mark.parametrize("m", [4, 12, 16])
def test_index_invariants_as_page_products(m):
    res = index_values_check(m, with_pages=True)
    assert res["ok"]
    for kind in KINDS:
        assert res[kind]["page_product"] == res[kind]["value"]


def test_verify_bundle():
    assert spectral_verify(15)["ok"]
