"""The universal distribution and predistribution at a fixed level.

Points of level m are the m-torsion of Q/Z, identified with Z^m through
[k/m] <-> k.  Averaging operators, the two relation lattices, their
quotients, the rational smoothing operator between them, and the exponential
comparison with the cyclotomic integer ring all live here.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

import numpy as np

from .abgroup import FgAbGroup, ZQuotient, elementary_power, tate_group
from .arith import divisors, euler_phi, factorize, inverse_mod, p_part, primes_of
from .cyclotomic import _zeta_power_table
from .exact_linalg import (
    Lattice,
    eye,
    hnf_nonzero,
    image_lattice,
    imat,
    inverse_exact,
    is_unimodular,
    kernel_basis,
    mat_equal,
    qmat,
    rank_exact,
    zeros,
)

# ---------------------------------------------------------------------------
# averaging operators on level points


def mult_matrix(m: int, n: int):
    """The map [x] -> [n x] on level-m points."""
    M = zeros(m, m)
    for k in range(m):
        M[(n * k) % m, k] = 1
    return M


def x_matrix(m: int, n: int):
    """Sum over the n preimages of multiplication by n, level m/n -> level m.

    Column i is the element sum of [b] over n b = i/(m/n); all preimages
    exist inside level m exactly when n divides m, so anything else raises.
    """
    if n <= 0 or m % n:
        raise ValueError("averaging needs n dividing the level")
    s = m // n
    M = zeros(m, s)
    for i in range(s):
        for t in range(n):
            M[i + t * s, i] = 1
    return M


def y_matrix(m: int, n: int):
    """The difference-operator analogue of x_matrix, level m/n -> level m."""
    if n <= 0 or m % n:
        raise ValueError("averaging needs n dividing the level")
    fac = factorize(n)
    M = zeros(m, m // n)
    for d in divisors(n):
        coef = 1
        for p, e in fac:
            v = 0
            dd = d
            while dd % p == 0:
                v += 1
                dd //= p
            coef *= (-1) ** v * comb(e, v)
        X = x_matrix(m, d)
        step = n // d
        for i in range(m // n):
            M[:, i] = M[:, i] + coef * X[:, i * step]
    return M


def negation_matrix(m: int):
    return mult_matrix(m, m - 1)


# ---------------------------------------------------------------------------
# the digit-restricted points and the standard bases


def restricted_point(k: int, m: int) -> bool:
    """Whether k/m avoids a maximal leading digit at every prime of m.

    Writing k/m = sum over p of n_p / p^e by partial fractions, the test is
    that the leading base-p digit of n_p never equals p - 1.
    """
    for p, e in factorize(m):
        q = p**e
        n_p = k * inverse_mod(m // q, q) % q
        if n_p // (q // p) == p - 1:
            return False
    return True


def restricted_points(m: int) -> list[int]:
    return [k for k in range(m) if restricted_point(k, m)]


def standard_basis(m: int, difference: bool = False):
    """The averaged restricted points as an m x m matrix of column vectors.

    Columns are X_n (or Y_n when difference is set) applied to restricted
    points of level m/n, over all divisors n of m; the count works out to
    exactly m and the matrix is expected to be unimodular.
    """
    cols = []
    index = []
    for n in divisors(m):
        A = y_matrix(m, n) if difference else x_matrix(m, n)
        for i in restricted_points(m // n):
            cols.append(A[:, i])
            index.append((n, i))
    M = np.stack(cols, axis=1)
    return M, index


def basis_check(m: int) -> dict:
    X, ix = standard_basis(m, difference=False)
    Y, iy = standard_basis(m, difference=True)
    return {
        "level": m,
        "count": len(ix),
        "count_ok": len(ix) == m and len(iy) == m,
        "x_unimodular": X.shape == (m, m) and is_unimodular(X),
        "y_unimodular": Y.shape == (m, m) and is_unimodular(Y),
    }


# ---------------------------------------------------------------------------
# relation lattices and the two quotients


def distribution_relation_rows(m: int):
    """One row per pair (n, a): [a] minus the sum of its n preimages."""
    rows = []
    for n in divisors(m):
        if n == 1:
            continue
        X = x_matrix(m, n)
        s = m // n
        for i in range(s):
            row = -X[:, i]
            row[(i * n) % m] += 1
            rows.append(row)
    return np.stack(rows, axis=0) if rows else zeros(0, m)


def predistribution_relation_rows(m: int):
    """One row per pair (n, a): the bare preimage sum."""
    rows = []
    for n in divisors(m):
        if n == 1:
            continue
        X = x_matrix(m, n)
        for i in range(m // n):
            rows.append(X[:, i].copy())
    return np.stack(rows, axis=0) if rows else zeros(0, m)


def distribution_lattice(m: int) -> Lattice:
    return Lattice(m, distribution_relation_rows(m))


def predistribution_lattice(m: int) -> Lattice:
    return Lattice(m, predistribution_relation_rows(m))


def prime_step_relations_suffice(m: int) -> bool:
    """Relations at prime n already span the full relation lattice."""
    for bare in (False, True):
        rows = []
        for p in primes_of(m):
            X = x_matrix(m, p)
            for i in range(m // p):
                row = X[:, i].copy()
                if not bare:
                    row = -row
                    row[(i * p) % m] += 1
                rows.append(row)
        rows = np.stack(rows, axis=0) if rows else zeros(0, m)
        full = distribution_lattice(m) if not bare else predistribution_lattice(m)
        if m > 1 and Lattice(m, rows) != full:
            return False
    return True


def universal_distribution(m: int) -> ZQuotient:
    rel = hnf_nonzero(distribution_relation_rows(m)) if m > 1 else zeros(0, 1)
    return ZQuotient(m, rel)


def universal_predistribution(m: int) -> ZQuotient:
    rel = hnf_nonzero(predistribution_relation_rows(m)) if m > 1 else zeros(0, 1)
    return ZQuotient(m, rel)


# ---------------------------------------------------------------------------
# Tate cohomology of the negation action


def _free_tate(q: ZQuotient, C, parity: str) -> FgAbGroup:
    # valid shortcut for torsion-free quotients: act on free coordinates
    assert not q.group.torsion, "shortcut needs a free quotient"
    cbar = q.induced_on_free(C)
    return tate_group(cbar, zeros(0, q.free_rank), parity)


def tate_distribution(m: int, parity: str) -> FgAbGroup:
    return _free_tate(universal_distribution(m), negation_matrix(m), parity)


def tate_predistribution(m: int, parity: str) -> FgAbGroup:
    return _free_tate(universal_predistribution(m), negation_matrix(m), parity)


def cohomology_check(m: int) -> dict:
    """Both parities of both quotients against the closed forms.

    Expected: (Z/2)^(2^(r-1)) with r the number of primes of m for the
    distribution, and a single Z/2 exactly at two-power levels for the
    predistribution; levels twice an odd number are rejected upstream.
    """
    if m < 3 or m % 4 == 2:
        raise ValueError("level must be at least 3 and not twice an odd number")
    r = len(factorize(m))
    expect_u = elementary_power(2, 2 ** (r - 1))
    expect_o = elementary_power(2, 1 if len(factorize(m)) == 1 and m % 2 == 0 else 0)
    got = {
        "u_odd": tate_distribution(m, "odd"),
        "u_even": tate_distribution(m, "even"),
        "o_odd": tate_predistribution(m, "odd"),
        "o_even": tate_predistribution(m, "even"),
    }
    return {
        "level": m,
        "primes": r,
        "u_expected": str(expect_u),
        "o_expected": str(expect_o),
        "u_odd": str(got["u_odd"]),
        "u_even": str(got["u_even"]),
        "o_odd": str(got["o_odd"]),
        "o_even": str(got["o_even"]),
        "ok": got["u_odd"] == expect_u
        and got["u_even"] == expect_u
        and got["o_odd"] == expect_o
        and got["o_even"] == expect_o,
    }


# ---------------------------------------------------------------------------
# the rational smoothing operator


def smoothing_factor(m: int, p: int):
    """(1 - S_p/p)^(-1) on level-m points by summing the geometric series.

    Columns follow the forward orbit of multiplication by p, which is a tail
    into a cycle; the tail contributes single hits 1/p^j and the cycle
    contributes a closed geometric sum.
    """
    M = zeros(m, m)
    for k in range(m):
        path = []
        pos = {}
        cur = k
        while cur not in pos:
            pos[cur] = len(path)
            path.append(cur)
            cur = cur * p % m
        start = pos[cur]
        cl = len(path) - start
        cyc = Fraction(p**cl, p**cl - 1)
        for j, node in enumerate(path):
            hit = Fraction(1, p**j)
            if j >= start:
                hit *= cyc
            M[node, k] += hit
    return M


def smoothing_matrix(m: int):
    """prod over p | m of the geometric factors; the identity at m = 1."""
    M = eye(m)
    for p in primes_of(m):
        M = smoothing_factor(m, p) @ M
    return M


def smoothing_matrix_inverse(m: int):
    M = eye(m)
    for p in primes_of(m):
        M = (eye(m) - mult_matrix(m, p) * Fraction(1, p)) @ M
    return M


def smoothing_check(m: int) -> dict:
    """The operator really inverts the finite product, and it carries the
    one relation lattice into the rational span of the other."""
    phi = smoothing_matrix(m)
    inv_ok = mat_equal(phi @ smoothing_matrix_inverse(m), eye(m))
    dist = distribution_relation_rows(m)
    pre = predistribution_lattice(m)
    carried = (phi @ dist.T).T
    span_ok = True
    if m > 1:
        stacked = np.vstack([pre.basis, carried])
        span_ok = rank_exact(stacked) == pre.rank
    return {"level": m, "inverse_ok": inv_ok, "relations_carried": span_ok,
            "ok": inv_ok and span_ok}


# ---------------------------------------------------------------------------
# comparison with the cyclotomic integers


def exp_map_matrix(m: int):
    """[k/m] -> (k-th power of a primitive root) in Z[x]/(level-m minimal poly)."""
    table = _zeta_power_table(m)
    phi = euler_phi(m)
    M = zeros(phi, m)
    for k in range(m):
        M[:, k] = np.array(table[k], dtype=object)
    return M


def exp_kernel_check(m: int) -> dict:
    """The kernel of the exponential map is exactly the bare relation lattice,
    and the map is onto the full integer ring."""
    E = exp_map_matrix(m)
    ker = Lattice(m, kernel_basis(E))
    onto = image_lattice(E.T) == Lattice(euler_phi(m), eye(euler_phi(m)))
    same = ker == predistribution_lattice(m) if m > 1 else ker.rank == 0
    return {"level": m, "kernel_matches": same, "onto": onto, "ok": same and onto}
