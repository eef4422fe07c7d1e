"""Exact convolution kernels for cyclic group rings.

``kronecker_mul`` packs each coefficient sequence into one big integer
(Kronecker substitution), multiplies the two integers with GMP, and
unpacks.  GMP switches to FFT multiplication for large operands, so the
cost is quasi-linear in the total bit size and the result is exact: no
floating point is involved anywhere.
"""

from __future__ import annotations

import operator
from typing import Sequence

import gmpy2

#: below this length (of the shorter operand) the schoolbook loop wins
NAIVE_THRESHOLD = 24


def naive_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Plain polynomial product, no wraparound."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else bytes(nbytes) for c in coeffs)
    if all(c >= 0 for c in coeffs):
        return int.from_bytes(pos, "little")
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else bytes(nbytes) for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact plain polynomial product via Kronecker substitution."""
    if not a or not b:
        return []
    length = len(a) + len(b) - 1
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    if ma == 0 or mb == 0:
        return [0] * length
    signed = min(a) < 0 or min(b) < 0
    # every output coefficient is bounded by ma*mb*min(len); one extra bit for the sign
    bits = (ma * mb * min(len(a), len(b))).bit_length() + 1
    nbytes = (bits + 7) // 8
    prod = int(gmpy2.mpz(_pack(a, nbytes)) * gmpy2.mpz(_pack(b, nbytes)))
    half = 1 << (8 * nbytes - 1)
    if signed:
        # adding half to every slot makes each slot non-negative, so no borrows cross slots
        prod += int.from_bytes(half.to_bytes(nbytes, "little") * length, "little")
    raw = prod.to_bytes(nbytes * length, "little")
    out = [int.from_bytes(raw[k:k + nbytes], "little") for k in range(0, nbytes * length, nbytes)]
    if signed:
        out = [c - half for c in out]
    return out


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if min(len(a), len(b)) < NAIVE_THRESHOLD:
        return naive_mul(a, b)
    return kronecker_mul(a, b)


def fold(coeffs: Sequence[int], n: int) -> list[int]:
    """Reduce a plain coefficient sequence modulo ``x**n - 1``."""
    out = list(coeffs[:n]) + [0] * max(0, n - len(coeffs))
    for j in range(n, len(coeffs)):
        out[j % n] += coeffs[j]
    return out


def naive_cyclic(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Circular convolution straight from the definition, O(n^2).

    ``c_k = sum_i a_i * b_(k-i mod n)``, each ``c_k`` one dot product of
    ``a`` with a window of ``b`` reversed and doubled.
    """
    n = len(a)
    rb = list(reversed(b)) * 2
    return [sum(map(operator.mul, a, rb[n - 1 - k:2 * n - 1 - k])) for k in range(n)]


def fast_cyclic(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Circular convolution of two length-n sequences through ``kronecker_mul``."""
    n = len(a)
    if n < NAIVE_THRESHOLD:
        return naive_cyclic(a, b)
    return fold(kronecker_mul(a, b), n)
