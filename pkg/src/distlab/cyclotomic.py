"""Exact cyclotomic arithmetic: roots of unity, Dirichlet characters,
first generalized Bernoulli numbers, and the odd-part class number.

Numbers live in Q[x]/(Phi_N) with Fraction coefficients, so every identity
here is checked without floating point; the only float code is the explicit
digamma cross-check, which is never used as an oracle by the exact layer.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .arith import (
    divisors,
    euler_phi,
    factorize,
    multiplicative_order,
    primitive_root,
    crt,
)

# ---------------------------------------------------------------------------
# integer polynomials, ascending coefficients


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_rem_monic(a: list, m: list) -> list:
    """Remainder of a modulo the monic polynomial m, exact."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c == 0:
            continue
        a[i] = 0
        for j in range(dm):
            a[i - dm + j] -= c * m[j]
    del a[dm:]
    return a


def _poly_divmod_monic(a: list, m: list) -> tuple[list, list]:
    a = list(a)
    dm = len(m) - 1
    q = [0] * max(len(a) - dm, 1)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c == 0:
            continue
        q[i - dm] = c
        a[i] = 0
        for j in range(dm):
            a[i - dm + j] -= c * m[j]
    return q, a[:dm]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n):
        if d < n:
            q, r = _poly_divmod_monic(num, list(cyclotomic_poly(d)))
            assert not any(r), "cyclotomic division must be exact"
            num = q
    return tuple(num)


@lru_cache(maxsize=None)
def _zeta_power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_n for k = 0..n-1, each of length phi(n)."""
    phi = euler_phi(n)
    m = list(cyclotomic_poly(n))
    out = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        out.append(tuple(cur))
        cur = _poly_rem_monic([0] + cur, m)
        cur += [0] * (phi - len(cur))
    return tuple(out)


# ---------------------------------------------------------------------------
# the quotient ring Q(zeta_N)


class CycNum:
    """An element of Q[x]/(Phi_N), stored by its phi(N) Fraction coefficients."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs):
        phi = euler_phi(N)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) != phi:
            raise ValueError("coefficient vector has the wrong length")
        self.N = N
        self.coeffs = tuple(cs)

    @classmethod
    def rational(cls, N: int, value) -> CycNum:
        phi = euler_phi(N)
        return cls(N, [Fraction(value)] + [Fraction(0)] * (phi - 1))

    @classmethod
    def zeta_power(cls, N: int, k: int, scale=1) -> CycNum:
        row = _zeta_power_table(N)[k % N]
        s = Fraction(scale)
        return cls(N, [s * c for c in row])

    def _coerce(self, other) -> CycNum:
        if isinstance(other, CycNum):
            if other.N != self.N:
                raise ValueError("mixed cyclotomic moduli")
            return other
        return CycNum.rational(self.N, other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycNum(self.N, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return CycNum(self.N, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        return CycNum(self.N, [-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            s = Fraction(other)
            return CycNum(self.N, [s * a for a in self.coeffs])
        if other.N != self.N:
            raise ValueError("mixed cyclotomic moduli")
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        rem = _poly_rem_monic(prod, list(cyclotomic_poly(self.N)))
        rem += [Fraction(0)] * (euler_phi(self.N) - len(rem))
        return CycNum(self.N, rem)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CycNum.rational(self.N, 1)
        base = self
        k = int(k)
        if k < 0:
            raise ValueError("negative powers are not supported")
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.coeffs[0]

    def galois(self, t: int) -> CycNum:
        """Image under x -> x^t; t must be a unit modulo N."""
        if gcd(t, self.N) != 1:
            raise ValueError("galois twist needs a unit exponent")
        table = _zeta_power_table(self.N)
        phi = euler_phi(self.N)
        out = [Fraction(0)] * phi
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            row = table[(j * t) % self.N]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
        return CycNum(self.N, out)

    def norm(self) -> Fraction:
        """Product of all Galois conjugates, always rational."""
        out = CycNum.rational(self.N, 1)
        for t in range(1, self.N + 1):
            if gcd(t, self.N) == 1:
                out = out * self.galois(t)
        return out.as_rational()

    def complex_value(self) -> complex:
        z = np.exp(2j * np.pi / self.N)
        return complex(sum(float(c) * z**j for j, c in enumerate(self.coeffs)))

    def __repr__(self):
        return f"CycNum(N={self.N}, {list(self.coeffs)})"


# ---------------------------------------------------------------------------
# the unit group (Z/f)^* with a deterministic generator choice


class UnitGroup:
    """(Z/f)^* as an explicit product of cyclic factors.

    Generators: the smallest primitive root for each odd prime-power factor,
    -1 (and 5 when the exponent allows) for the 2-part, all lifted to units
    modulo f that are 1 on the other factors.  Discrete logs are tabulated,
    which is fine at the moduli this package sweeps.
    """

    def __init__(self, f: int):
        if f <= 0:
            raise ValueError("modulus must be positive")
        self.modulus = f
        gens: list[int] = []
        orders: list[int] = []
        for p, e in factorize(f):
            q = p**e
            rest = f // q
            if p == 2:
                if e == 1:
                    continue
                gens.append(crt([(q - 1, q), (1, rest)]))
                orders.append(2)
                if e >= 3:
                    gens.append(crt([(5, q), (1, rest)]))
                    orders.append(2 ** (e - 2))
            else:
                gens.append(crt([(primitive_root(q), q), (1, rest)]))
                orders.append(euler_phi(q))
        self.gens = tuple(gens)
        self.orders = tuple(orders)
        self.exponent = lcm(*orders) if orders else 1
        table: dict[int, tuple[int, ...]] = {}
        for exps in itertools.product(*(range(d) for d in orders)):
            u = 1 % f
            for g, k in zip(gens, exps):
                u = u * pow(g, k, f) % f
            table[u] = exps
        assert len(table) == euler_phi(f)
        self._dlog = table

    def units(self) -> list[int]:
        return sorted(self._dlog)

    def exponents_of(self, u: int) -> tuple[int, ...]:
        try:
            return self._dlog[u % self.modulus]
        except KeyError:
            raise ValueError(f"{u} is not a unit modulo {self.modulus}") from None


@lru_cache(maxsize=None)
def unit_group(f: int) -> UnitGroup:
    return UnitGroup(f)


# ---------------------------------------------------------------------------
# Dirichlet characters


class DirichletChar:
    """A character of (Z/f)^*, given by exponents against unit_group(f).gens.

    Values are exact: value_exponent(a) is the element t of Q/Z with
    chi(a) = e^(2 pi i t), or None when a shares a factor with the modulus.
    """

    __slots__ = ("modulus", "exponents")

    def __init__(self, modulus: int, exponents):
        g = unit_group(modulus)
        exps = tuple(int(k) % d for k, d in zip(exponents, g.orders))
        if len(exps) != len(g.orders):
            raise ValueError("wrong number of exponents")
        self.modulus = modulus
        self.exponents = exps

    def __eq__(self, other):
        return (
            isinstance(other, DirichletChar)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"DirichletChar({self.modulus}, {self.exponents})"

    @property
    def order(self) -> int:
        g = unit_group(self.modulus)
        return lcm(*(d // gcd(k, d) for k, d in zip(self.exponents, g.orders))) if g.orders else 1

    def value_exponent(self, a: int) -> Fraction | None:
        if gcd(a, self.modulus) != 1:
            return None
        g = unit_group(self.modulus)
        exps = g.exponents_of(a)
        t = sum(Fraction(k * e, d) for k, e, d in zip(self.exponents, exps, g.orders))
        return t - (t.numerator // t.denominator)  # reduce into [0, 1)

    def value(self, a: int, N: int | None = None) -> CycNum:
        """chi(a) as an exact root of unity in Q[x]/(Phi_N); 0 for non-units."""
        if N is None:
            N = self.order
        t = self.value_exponent(a)
        if t is None:
            return CycNum.rational(N, 0)
        k = t * N
        if k.denominator != 1:
            raise ValueError("target ring does not contain this character value")
        return CycNum.zeta_power(N, int(k))

    def is_odd(self) -> bool:
        return self.value_exponent(-1) == Fraction(1, 2)

    @property
    def conductor(self) -> int:
        g = unit_group(self.modulus)
        for f in divisors(self.modulus):
            if all(
                self.value_exponent(u) == 0
                for u in g.units()
                if u % f == 1 % f
            ):
                return f
        raise AssertionError("unreachable")

    def primitive_at_conductor(self) -> DirichletChar:
        f = self.conductor
        g = unit_group(f)
        exps = []
        for gen, d in zip(g.gens, g.orders):
            a = gen
            while gcd(a, self.modulus) != 1:
                a += f
            t = self.value_exponent(a)
            k = t * d
            assert k.denominator == 1, "character does not descend to its conductor"
            exps.append(int(k))
        return DirichletChar(f, exps)


def all_characters(f: int) -> list[DirichletChar]:
    """Every character modulo f, in lexicographic exponent order."""
    g = unit_group(f)
    return [
        DirichletChar(f, exps)
        for exps in itertools.product(*(range(d) for d in g.orders))
    ]


def odd_characters(f: int) -> list[DirichletChar]:
    return [chi for chi in all_characters(f) if chi.is_odd()]


# ---------------------------------------------------------------------------
# first Bernoulli numbers and the odd-part class number


def bernoulli1(chi: DirichletChar) -> CycNum:
    """B_1 of the primitive character attached to chi, in Q[x]/(Phi_order)."""
    prim = chi.primitive_at_conductor()
    f = prim.modulus
    N = chi.order
    out = CycNum.rational(N, 0)
    for a in range(1, f + 1):
        if gcd(a, f) == 1:
            t = prim.value_exponent(a)
            out = out + CycNum.zeta_power(N, int(t * N), scale=a)
    return out * Fraction(1, f)


def _galois_orbits(chars: list[DirichletChar]) -> list[list[DirichletChar]]:
    seen: set[tuple] = set()
    orbits = []
    for chi in chars:
        if chi.exponents in seen:
            continue
        N = chi.order
        orbit = []
        for t in range(1, N + 1):
            if gcd(t, N) != 1:
                continue
            tw = DirichletChar(chi.modulus, [t * k for k in chi.exponents])
            orbit.append(tw)
            seen.add(tw.exponents)
        assert len(orbit) == euler_phi(N)
        orbits.append(orbit)
    return orbits


def corrector_w(m: int) -> int:
    """Number of roots of unity in the full cyclotomic field of level m."""
    return m if m % 2 == 0 else 2 * m


def corrector_q(m: int) -> int:
    """Unit index corrector: 1 at prime-power level, 2 otherwise."""
    return 1 if len(factorize(m)) <= 1 else 2


def h_minus(m: int) -> int:
    """Odd part of the class number of the level-m cyclotomic field.

    Computed as Q * w * prod over odd characters of (-B_1/2), with each
    Galois orbit contributing an exact field norm; the result must come out
    a positive integer and an assertion enforces that.
    """
    if m < 3 or m % 4 == 2:
        raise ValueError("level must be at least 3 and not twice an odd number")
    total = Fraction(corrector_q(m) * corrector_w(m))
    for orbit in _galois_orbits(odd_characters(m)):
        rep = orbit[0]
        total *= (bernoulli1(rep) * Fraction(-1, 2)).norm()
    assert total > 0 and total.denominator == 1, f"h-minus({m}) = {total}"
    return int(total)


def l_value_crosscheck(m: int, tol: float = 1e-6) -> list[dict]:
    """Float sanity net for every odd character at level m.

    Compares |L(1, chi)| from the digamma series against pi*|B_1|/sqrt(f);
    purely diagnostic, the exact layer never consumes these numbers.
    """
    from scipy.special import digamma

    out = []
    for chi in odd_characters(m):
        prim = chi.primitive_at_conductor()
        f = prim.modulus
        s = 0j
        for a in range(1, f):
            t = prim.value_exponent(a)
            if t is None:
                continue
            s += np.exp(2j * np.pi * float(t)) * digamma(a / f)
        lval = abs(-s / f)
        bval = np.pi * abs(bernoulli1(chi).complex_value()) / np.sqrt(f)
        rel = abs(lval - bval) / bval
        out.append(
            {
                "conductor": f,
                "exponents": list(chi.exponents),
                "l_value": float(lval),
                "bernoulli_route": float(bval),
                "rel_err": float(rel),
                "ok": bool(rel <= tol),
            }
        )
    return out


# ---------------------------------------------------------------------------
# local determinant factors of the smoothing operator


def smoothing_det(p: int, f: int) -> Fraction:
    """det of the p-smoothing factor on the full rational algebra of (Z/f)^*."""
    if gcd(p, f) != 1:
        raise ValueError("p must be coprime to the conductor")
    c = multiplicative_order(p, f)
    phi = euler_phi(f)
    assert phi % c == 0
    return (1 - Fraction(1, p**c)) ** (-(phi // c))


def smoothing_det_minus(p: int, f: int) -> Fraction:
    """det of the p-smoothing factor on the odd part of the algebra.

    The case split is on whether -1 lies in the cyclic group generated by p
    modulo f; splitting on the parity of the order alone gives the wrong
    value whenever the order is even but p^(order/2) is not -1.
    """
    if gcd(p, f) != 1:
        raise ValueError("p must be coprime to the conductor")
    if f <= 2:
        return Fraction(1)
    c = multiplicative_order(p, f)
    phi = euler_phi(f)
    if c % 2 == 0 and pow(p, c // 2, f) == f - 1:
        assert phi % c == 0
        return (1 + Fraction(1, p ** (c // 2))) ** (-(phi // c))
    assert phi % (2 * c) == 0
    return (1 - Fraction(1, p**c)) ** (-(phi // (2 * c)))


def character_product_full(p: int, f: int) -> Fraction:
    """prod over all characters mod f of (1 - chi(p)/p), exactly."""
    g = unit_group(f)
    N = g.exponent
    out = CycNum.rational(N, 1)
    for chi in all_characters(f):
        out = out * (1 - chi.value(p, N) * Fraction(1, p))
    return out.as_rational()


def character_product_minus(p: int, f: int) -> Fraction:
    """prod over odd characters mod f of (1 - chi(p)/p), exactly."""
    g = unit_group(f)
    N = g.exponent
    out = CycNum.rational(N, 1)
    for chi in odd_characters(f):
        out = out * (1 - chi.value(p, N) * Fraction(1, p))
    return out.as_rational()
