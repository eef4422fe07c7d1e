"""Inversion in R[x]/(x^n - 1) by the extended Euclidean algorithm.

This is both the key-generation inverse for cyclic units and the attack
an adversary runs against a public cyclic key: nothing here needs
private information.

Over ``Z`` the algorithm runs over the rationals and the result must come
out integral.  Over ``Z/m`` pivots must be invertible; when a pivot shares
a factor with ``m`` the modulus is split (CRT for coprime parts, Newton
lifting for repeated prime factors) and the pieces recombined.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import NotAUnit
from .numtheory import crt_pair

#: moduli below this bound use the vectorised int64 path
NUMPY_MODULUS_BOUND = 1 << 31
NUMPY_MIN_DEGREE = 48


class PivotFailure(ArithmeticError):
    """A leading coefficient is a zero divisor mod m."""

    def __init__(self, value: int):
        super().__init__(f"non-invertible pivot {value}")
        self.value = value


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _euclid(u: Sequence, n: int, inv: Callable, red: Callable) -> list:
    """Generic Euclid against x^n - 1; ``inv`` inverts a pivot, ``red`` reduces."""
    r0 = [red(-1)] + [0] * (n - 1) + [1]
    r1 = _trim([red(c) for c in u])
    s0, s1 = [], [1]
    if not r1:
        raise NotAUnit("zero is not a unit")
    while len(r1) > 1:
        lead_inv = inv(r1[-1])
        d1 = len(r1) - 1
        r = list(r0)
        s = list(s0) + [0] * max(0, n + 1 - len(s0))
        while len(r) - 1 >= d1:
            c = red(r[-1] * lead_inv)
            shift = len(r) - 1 - d1
            if c:
                for k, y in enumerate(r1):
                    r[shift + k] = red(r[shift + k] - c * y)
                for k, y in enumerate(s1):
                    if y:
                        s[shift + k] = red(s[shift + k] - c * y)
            r.pop()
            _trim(r)
        r0, r1 = r1, r
        s0, s1 = s1, _trim(s)
        if not r1:
            raise NotAUnit(f"u shares a factor of degree {len(r0) - 1} with x^{n} - 1")
    c_inv = inv(r1[0])
    v = [red(c * c_inv) for c in s1]
    out = [0] * n
    for k, c in enumerate(v):
        out[k % n] = red(out[k % n] + c)
    return out


def _euclid_numpy(u: Sequence[int], n: int, m: int) -> list[int]:
    """Same algorithm over Z/m with int64 vectors; needs m < 2**31."""

    def inv(c):
        try:
            return pow(int(c), -1, m)
        except ValueError:
            raise PivotFailure(int(c)) from None

    r0 = np.zeros(n + 1, dtype=np.int64)
    r0[0], r0[n] = (m - 1) % m, 1
    d0 = n
    r1 = np.zeros(n + 1, dtype=np.int64)
    r1[:len(u)] = np.asarray([c % m for c in u], dtype=np.int64)
    nz = np.flatnonzero(r1)
    if nz.size == 0:
        raise NotAUnit("zero is not a unit")
    d1 = int(nz[-1])
    s0 = np.zeros(n + 1, dtype=np.int64)
    s1 = np.zeros(n + 1, dtype=np.int64)
    s1[0] = 1
    while d1 > 0:
        lead_inv = inv(r1[d1])
        while d0 >= d1:
            c = int(r0[d0]) * lead_inv % m
            if c:
                shift = d0 - d1
                r0[shift:d0 + 1] = (r0[shift:d0 + 1] - c * r1[:d1 + 1]) % m
                s0[shift:] = (s0[shift:] - c * s1[:n + 1 - shift]) % m
            d0 -= 1
            while d0 >= 0 and r0[d0] == 0:
                d0 -= 1
        r0, r1, d0, d1 = r1, r0, d1, d0
        s0, s1 = s1, s0
        if d1 < 0:
            raise NotAUnit(f"u shares a factor of degree {d0} with x^{n} - 1")
    c_inv = inv(r1[0])
    v = (s1 * c_inv) % m
    out = v[:n].copy()
    out[0] = (out[0] + v[n]) % m
    return [int(c) for c in out]


def _inverse_mod_prime_like(u: Sequence[int], n: int, m: int) -> list[int]:
    if m < NUMPY_MODULUS_BOUND and n >= NUMPY_MIN_DEGREE:
        return _euclid_numpy(u, n, m)

    def inv(c):
        try:
            return pow(c, -1, m)
        except ValueError:
            raise PivotFailure(c) from None

    return _euclid(u, n, inv, lambda c: c % m)


def _cyclic_mul_mod(a: Sequence[int], b: Sequence[int], m: int) -> list[int]:
    from .convolution import fast_cyclic
    return [c % m for c in fast_cyclic(list(a), list(b))]


def inverse_mod(u: Sequence[int], n: int, m: int) -> list[int]:
    """Inverse of ``u`` in (Z/m)[x]/(x^n - 1), splitting m on pivot failures."""
    u = [c % m for c in u]
    try:
        return _inverse_mod_prime_like(u, n, m)
    except PivotFailure as fail:
        d = math.gcd(fail.value, m)
    a, b = d, m // d
    g = math.gcd(a, b)
    if g == 1:
        va = inverse_mod(u, n, a)
        vb = inverse_mod(u, n, b)
        return [crt_pair(x, a, y, b) for x, y in zip(va, vb)]
    # m0 has the same prime support as m, so Newton steps from m0 reach m
    m0 = m // g
    v = inverse_mod(u, n, m0)
    mod = m0
    while mod != m:
        mod = math.gcd(mod * mod, m)
        uv = _cyclic_mul_mod(u, v, mod)
        two_minus = [(-c) % mod for c in uv]
        two_minus[0] = (two_minus[0] + 2) % mod
        v = _cyclic_mul_mod(v, two_minus, mod)
    return v


def inverse_rational(u: Sequence[int], n: int) -> list[Fraction]:
    """Inverse of ``u`` in Q[x]/(x^n - 1)."""
    return _euclid([Fraction(c) for c in u], n, lambda c: 1 / Fraction(c), Fraction)


def inverse_integral(u: Sequence[int], n: int) -> list[int]:
    """Inverse in Z[x]/(x^n - 1); NotAUnit when the rational inverse is not integral."""
    v = inverse_rational(u, n)
    if any(c.denominator != 1 for c in v):
        raise NotAUnit("the rational inverse is not integral")
    return [int(c) for c in v]
