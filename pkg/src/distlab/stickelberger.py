"""Stickelberger lattices in the group ring and their minus-part indices.

The group ring of (Z/m)^* carries one fractional-part element for every
residue a mod m, with coefficient {a/m * t^{-1}} at the basis vector of t.
Their integral span meets Z[G] in the Stickelberger ideal; its minus part
sits inside the (1+c)-annihilator of Z[G] with finite index equal to the
relative class number up to an explicit power of 2.  The same fractional
parts, antisymmetrized, realize the degree-zero distribution classes as
group-ring vectors, and this module verifies every index identity along
that bridge exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .arith import inverse_mod, primes_of, prime_to_p_part
from .cyclotomic import (
    character_product_minus,
    corrector_q,
    corrector_w,
    h_minus,
    smoothing_det_minus,
)
from .distribution import negation_matrix, universal_distribution, universal_predistribution
from .exact_linalg import (
    Lattice,
    eye,
    image_lattice,
    kernel_basis,
    lattice_index,
    lattice_intersect,
    mat_equal,
    zeros,
)
from .lcomplex import DIFFERENCE, differentials, smoothing_blocks


def _validate_level(m: int) -> None:
    if m < 3 or m % 4 == 2:
        raise ValueError("level must be at least 3 and not twice an odd number")


def units_of(m: int) -> tuple[int, ...]:
    return tuple(t for t in range(1, m) if gcd(t, m) == 1)


def conjugation_matrix(m: int) -> np.ndarray:
    """Permutation of the group-ring basis induced by t -> -t."""
    units = units_of(m)
    idx = {t: i for i, t in enumerate(units)}
    n = len(units)
    C = zeros(n, n)
    for t in units:
        C[idx[(m - t) % m], idx[t]] = 1
    return C


@dataclass(frozen=True)
class GroupRingElem:
    """Rational group-ring vector indexed by the units of Z/m in order."""

    m: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(units_of(self.m)):
            raise ValueError("coefficient count does not match the unit group")

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=object)

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        if not isinstance(other, GroupRingElem) or other.m != self.m:
            return NotImplemented
        units = units_of(self.m)
        idx = {t: i for i, t in enumerate(units)}
        out = [Fraction(0)] * len(units)
        for i, s in enumerate(units):
            if self.coeffs[i] == 0:
                continue
            for j, t in enumerate(units):
                out[idx[s * t % self.m]] += self.coeffs[i] * other.coeffs[j]
        return GroupRingElem(self.m, tuple(out))

    def conjugate(self) -> "GroupRingElem":
        units = units_of(self.m)
        idx = {t: i for i, t in enumerate(units)}
        return GroupRingElem(
            self.m, tuple(self.coeffs[idx[(self.m - t) % self.m]] for t in units)
        )


def theta_element(m: int, a: int = 1) -> GroupRingElem:
    """Fractional-part element: coefficient {a t^{-1} / m} at sigma_t.

    >>> theta_element(3).coeffs
    (Fraction(1, 3), Fraction(2, 3))
    >>> theta_element(5).coeffs
    (Fraction(1, 5), Fraction(3, 5), Fraction(2, 5), Fraction(4, 5))
    """
    _validate_level(m)
    coeffs = tuple(
        Fraction((a * inverse_mod(t, m)) % m, m) for t in units_of(m)
    )
    return GroupRingElem(m, coeffs)


def _theta_rows(m: int) -> np.ndarray:
    return np.array([theta_element(m, a).coeffs for a in range(1, m)], dtype=object)


@dataclass(frozen=True)
class StickelbergerData:
    m: int
    theta: GroupRingElem
    S: Lattice
    R_minus: Lattice
    S_minus: Lattice


def minus_sublattice(m: int) -> Lattice:
    """Annihilator of 1+c inside the integral group ring."""
    n = len(units_of(m))
    return image_lattice(kernel_basis(eye(n) + conjugation_matrix(m)))


def stickelberger_ideal(m: int) -> StickelbergerData:
    """The ideal cut out by all fractional-part elements, with minus parts.

    Spanning over every residue a, not only the invertible ones, is what
    keeps each character component alive at composite levels; the span of
    the unit translates alone collapses whenever a prime factor is 1 modulo
    the conductor of an odd character (see principal_multiples_lattice).
    """
    _validate_level(m)
    n = len(units_of(m))
    span = image_lattice(_theta_rows(m))
    S = lattice_intersect(span, Lattice(n, eye(n)))
    R_minus = minus_sublattice(m)
    S_minus = lattice_intersect(S, R_minus)
    return StickelbergerData(m, theta_element(m), S, R_minus, S_minus)


def principal_multiples_lattice(m: int) -> Lattice:
    """Integral multiples of the single element theta: Z[G]theta meet Z[G]."""
    _validate_level(m)
    n = len(units_of(m))
    rows = np.array([theta_element(m, b).coeffs for b in units_of(m)], dtype=object)
    return lattice_intersect(image_lattice(rows), Lattice(n, eye(n)))


def definition_report(m: int) -> dict:
    """Compare the full fractional-part ideal against the principal variant.

    The report carries the minus-part ranks and, when the principal minus
    part still spans, the index ratio between the two candidates; a rank
    drop or a ratio other than 1 means the principal variant is not the
    ideal the index theorem is about.
    """
    data = stickelberger_ideal(m)
    principal = lattice_intersect(principal_multiples_lattice(m), data.R_minus)
    full_index = lattice_index(data.R_minus, data.S_minus)
    res = {
        "level": m,
        "full_minus_rank": data.S_minus.rank,
        "principal_minus_rank": principal.rank,
        "full_index": full_index,
        "principal_index": None,
        "ratio": None,
        "agree": False,
    }
    if principal.rank == data.R_minus.rank:
        pidx = lattice_index(data.R_minus, principal)
        res["principal_index"] = pidx
        res["ratio"] = pidx / full_index
        res["agree"] = pidx == full_index
    return res


# ---------------------------------------------------------------------------
# the antisymmetrized fractional-part map on distribution classes


def alpha_matrix(m: int) -> np.ndarray:
    """Column k is the group-ring vector of the antisymmetrized class of k/m.

    Entries are 1/2 - {k t^{-1} / m}; the columns of the two self-negative
    points (k = 0, and k = m/2 when present) vanish identically.
    """
    _validate_level(m)
    units = units_of(m)
    A = zeros(len(units), m)
    for k in range(1, m):
        for i, t in enumerate(units):
            A[i, k] = Fraction(1, 2) - Fraction((k * inverse_mod(t, m)) % m, m)
    return A


def alpha_lattice(m: int) -> Lattice:
    return image_lattice(alpha_matrix(m).T)


def alpha_compat_check(m: int) -> dict:
    """Structural facts about the antisymmetrized map.

    It kills the distribution relations (so it is defined on classes), it
    is injective on the antisymmetrized part (full minus rank), and its
    image is spanned by the halved conjugate-differences of the
    fractional-part elements.
    """
    A = alpha_matrix(m)
    d = differentials(m, DIFFERENCE).get(-1)
    relations_killed = True
    if d is not None and d.size:
        prod = A @ d
        relations_killed = mat_equal(prod, zeros(*prod.shape))
    lat = image_lattice(A.T)
    n = len(units_of(m))
    rank_ok = lat.rank == n // 2
    rows = _theta_rows(m)
    half_antisym = (rows - rows @ conjugation_matrix(m).T) / 2
    span_ok = lat == image_lattice(half_antisym)
    return {
        "level": m,
        "relations_killed": relations_killed,
        "rank_ok": rank_ok,
        "spans_antisymmetrized_ideal": span_ok,
        "ok": relations_killed and rank_ok and span_ok,
    }


# ---------------------------------------------------------------------------
# index identities


def _exponent_a(m: int) -> int:
    r = len(primes_of(m))
    return 0 if r == 1 else 2 ** (r - 2) - 1


def antisymmetrization_index_check(m: int) -> dict:
    """Index of the antisymmetrized image inside the full minus part.

    On the degree-zero distribution classes, (ker(1+c) : im(1-c)) is a
    power of 2 with exponent 2^(r-1).
    """
    _validate_level(m)
    qu = universal_distribution(m)
    cu = qu.induced_on_free(negation_matrix(m))
    f = qu.free_rank
    got = lattice_index(
        image_lattice(kernel_basis(eye(f) + cu)),
        image_lattice((eye(f) - cu).T),
    )
    r = len(primes_of(m))
    want = Fraction(2 ** (2 ** (r - 1)))
    return {"level": m, "value": got, "expected": want, "ok": got == want}


def alpha_image_index_check(m: int) -> dict:
    """Index of the antisymmetrized image lattice inside the integral minus part.

    Equals h-minus over w*Q, times 2^(2^(r-2)) when the level has several
    prime factors.
    """
    _validate_level(m)
    got = lattice_index(minus_sublattice(m), alpha_lattice(m))
    r = len(primes_of(m))
    want = Fraction(h_minus(m), corrector_w(m) * corrector_q(m))
    if r > 1:
        want *= 2 ** (2 ** (r - 2))
    return {"level": m, "value": got, "expected": want, "ok": got == want}


def alpha_ideal_index_check(m: int) -> dict:
    """The minus ideal sits inside the antisymmetrized image with index w."""
    _validate_level(m)
    data = stickelberger_ideal(m)
    got = lattice_index(alpha_lattice(m), data.S_minus)
    want = Fraction(corrector_w(m))
    return {"level": m, "value": got, "expected": want, "ok": got == want}


def smoothing_minus_image_check(m: int) -> dict:
    """Index of the smoothed minus classes inside the average-side minus part.

    The closed form is 2^(-2^(r-2)) times the product over p | m of the
    inverse odd-character products of 1 - chi(p)/p at the p-free part of m
    (for several primes; 1/2 at odd prime powers and 1 at powers of two).
    The character products are evaluated two independent ways.
    """
    _validate_level(m)
    qu = universal_distribution(m)
    qo = universal_predistribution(m)
    neg = negation_matrix(m)
    cu = qu.induced_on_free(neg)
    co = qo.induced_on_free(neg)
    phibar = qo.P @ smoothing_blocks(m)[0] @ qu.S
    pushed = kernel_basis(eye(qu.free_rank) + cu) @ phibar.T
    got = lattice_index(
        image_lattice(kernel_basis(eye(qo.free_rank) + co)),
        image_lattice(pushed),
    )
    r = len(primes_of(m))
    if r > 1:
        want = Fraction(1, 2 ** (2 ** (r - 2)))
        alt = want
        for p in primes_of(m):
            f = prime_to_p_part(m, p)
            want /= character_product_minus(p, f)
            alt *= smoothing_det_minus(p, f)
    elif m % 2 == 0:
        want = alt = Fraction(1)
    else:
        want = alt = Fraction(1, 2)
    return {
        "level": m,
        "value": got,
        "expected": want,
        "ok": got == want and got == alt,
    }


def minus_ideal_index_check(m: int) -> dict:
    """Index of the minus ideal in the integral minus part: 2^a h-minus."""
    data = stickelberger_ideal(m)
    got = lattice_index(data.R_minus, data.S_minus)
    want = Fraction(2 ** _exponent_a(m) * h_minus(m))
    return {"level": m, "value": got, "expected": want, "ok": got == want}


def theta_norm_check(m: int) -> bool:
    """(1+c) theta is the norm element: {x} + {-x} = 1 off the integers."""
    units = units_of(m)
    one_plus_c = [Fraction(0)] * len(units)
    one_plus_c[units.index(1)] = Fraction(1)
    one_plus_c[units.index(m - 1)] += Fraction(1)
    prod = GroupRingElem(m, tuple(one_plus_c)) * theta_element(m)
    return all(x == 1 for x in prod.coeffs)


def group_stability_check(m: int) -> bool:
    """Each unit translate permutes the fractional-part span, so the ideal
    and its minus part are stable under the group action."""
    data = stickelberger_ideal(m)
    units = units_of(m)
    idx = {t: i for i, t in enumerate(units)}
    n = len(units)
    for b in units:
        P = zeros(n, n)
        for t in units:
            P[idx[b * t % m], idx[t]] = 1
        for lat in (data.S, data.S_minus):
            if Lattice(n, lat.basis @ P.T) != lat:
                return False
    return True


def stickelberger_verify(m: int) -> dict:
    """Every index identity of the minus-part bridge at one level."""
    data = stickelberger_ideal(m)
    n = len(units_of(m))
    res = {
        "level": m,
        "theta_norm": theta_norm_check(m),
        "ideal_rank": data.S.rank == n // 2 + 1,
        "minus_rank": data.S_minus.rank == n // 2,
        "stability": group_stability_check(m),
        "alpha": alpha_compat_check(m)["ok"],
        "antisymmetrization": antisymmetrization_index_check(m)["ok"],
        "alpha_image": alpha_image_index_check(m)["ok"],
        "alpha_ideal": alpha_ideal_index_check(m)["ok"],
        "smoothing_minus": smoothing_minus_image_check(m)["ok"],
        "minus_ideal": minus_ideal_index_check(m)["ok"],
        "definitions_agree": definition_report(m)["agree"],
    }
    keys = [k for k in res if k not in ("level", "definitions_agree")]
    res["ok"] = all(res[k] for k in keys)
    return res
