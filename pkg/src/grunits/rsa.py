"""Textbook RSA and its combination with a unit layer.

Layer orders for the hybrid scheme:

``rsa-then-unit``
    ``c = P^e mod n`` is digitised and multiplied by the unit (over the
    unit's own ring, usually Z).
``unit-then-rsa``
    ``P`` is digitised, multiplied by the unit reduced mod ``n``, and every
    coefficient is RSA-encrypted.
``both``
    unit (mod n), then RSA per coefficient, then the unit (mod n) again.

Working mod ``n`` in the unit layers keeps every coefficient a valid RSA
plaintext; exactness follows because digits and RSA residues are < n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .coeffs import CoefficientRing
from .errors import MismatchError
from .groupring import GroupRingElement
from .numtheory import is_probable_prime
from .pipeline import (Ciphertext, MessageCodec, decode_message, decrypt, encode_message,
                       encrypt, reduce_keys_mod)
from .units import UnitKey

ORDERS = ("rsa-then-unit", "unit-then-rsa", "both")


@dataclass(frozen=True)
class RsaKey:
    n: int
    e: int
    d: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None

    @property
    def phi(self) -> int:
        if self.p is None or self.q is None:
            raise ValueError("phi(n) needs the private factors")
        return (self.p - 1) * (self.q - 1)

    def public(self) -> "RsaKey":
        return RsaKey(self.n, self.e)


def rsa_keygen(p: int, q: int, e: int) -> RsaKey:
    if p == q:
        raise ValueError("p and q must be distinct")
    for x in (p, q):
        if not is_probable_prime(x):
            raise ValueError(f"{x} is not prime")
    phi = (p - 1) * (q - 1)
    if math.gcd(e, phi) != 1:
        raise ValueError(f"gcd(e, phi) = {math.gcd(e, phi)}, e must be invertible mod phi")
    return RsaKey(p * q, e, pow(e, -1, phi), p, q)


def rsa_encrypt(m: int, key: RsaKey) -> int:
    if not 0 <= m < key.n:
        raise ValueError(f"message {m} outside [0, n)")
    return pow(m, key.e, key.n)


def rsa_decrypt(c: int, key: RsaKey) -> int:
    if key.d is None:
        raise ValueError("decryption needs the private exponent")
    if not 0 <= c < key.n:
        raise ValueError(f"ciphertext {c} outside [0, n)")
    return pow(c, key.d, key.n)


@dataclass(frozen=True)
class HybridKey:
    """RSA key plus unit key; public part is ``(n, e, u)``, private ``(d, u^-1)``."""

    rsa: RsaKey
    unit: UnitKey
    base: int = 10

    @property
    def width(self) -> int:
        """Digits needed for any residue mod n."""
        w, x = 0, self.rsa.n - 1
        while x:
            x //= self.base
            w += 1
        return max(w, 1)

    def codec(self, ring: CoefficientRing) -> MessageCodec:
        G = self.unit.group
        if self.width > G.order:
            raise ValueError(f"{self.width} digits do not fit a group of order {G.order}; split into blocks")
        return MessageCodec(G, self.base, ring, self.width)

    def unit_mod_n(self):
        return reduce_keys_mod(self.unit, None, self.rsa.n)


def _rsa_coeffs(el: GroupRingElement, fn, key: RsaKey) -> GroupRingElement:
    return GroupRingElement(el.group, el.ring, dense=[fn(c, key) for c in el.coeffs])


def hybrid_encrypt(P: int, hkey: HybridKey, order: str = "rsa-then-unit") -> Ciphertext:
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    if order == "rsa-then-unit":
        c = rsa_encrypt(P, hkey.rsa)
        w = encode_message(c, hkey.codec(hkey.unit.ring))
        return Ciphertext(encrypt(w, hkey.unit).element, ("rsa", f"unit:{hkey.unit.side}"))
    if not 0 <= P < hkey.rsa.n:
        raise ValueError(f"message {P} outside [0, n)")
    key_n, _ = hkey.unit_mod_n()
    w = encode_message(P, hkey.codec(key_n.ring))
    x = _rsa_coeffs(encrypt(w, key_n).element, rsa_encrypt, hkey.rsa)
    if order == "both":
        x = encrypt(x, key_n).element
        return Ciphertext(x, (f"unit:{key_n.side}", "rsa", f"unit:{key_n.side}"))
    return Ciphertext(x, (f"unit:{key_n.side}", "rsa"))


def hybrid_decrypt(ct: Ciphertext, hkey: HybridKey, order: str = "rsa-then-unit") -> int:
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    x = ct.element if isinstance(ct, Ciphertext) else ct
    if order == "rsa-then-unit":
        if x.ring != hkey.unit.ring:
            raise MismatchError("ciphertext ring does not match the unit key")
        w = decrypt(x, hkey.unit.private())
        return rsa_decrypt(decode_message(w, hkey.codec(hkey.unit.ring)), hkey.rsa)
    _, priv_n = hkey.unit_mod_n()
    if order == "both":
        x = decrypt(x, priv_n)
    x = _rsa_coeffs(x, rsa_decrypt, hkey.rsa)
    w = decrypt(x, priv_n)
    return decode_message(w, hkey.codec(w.ring))
