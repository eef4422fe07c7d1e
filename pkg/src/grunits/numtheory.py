"""Small integer helpers: primality, multiplicative order, CRT."""

from __future__ import annotations

import math

# deterministic Miller-Rabin for n < 3.317e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def multiplicative_order(i: int, n: int) -> int:
    """Least ``m >= 1`` with ``i**m = 1 (mod n)``; requires ``gcd(i, n) == 1``."""
    if math.gcd(i, n) != 1:
        raise ValueError(f"{i} is not invertible mod {n}")
    if n == 1:
        return 1
    m, x = 1, i % n
    while x != 1:
        x = x * i % n
        m += 1
    return m


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Solution mod ``m1*m2`` of ``x = r1 (m1)``, ``x = r2 (m2)`` for coprime moduli."""
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)
