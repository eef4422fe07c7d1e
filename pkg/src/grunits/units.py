"""Unit construction, inversion, combination, powering and disguise.

Every public key built here is certified: its inverse is computed or
constructed alongside it and ``u * inv == 1 == inv * u`` is checked before
the key is returned.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coeffs import CoefficientRing, ZZ
from .errors import MismatchError, NotAUnit
from .groupring import ExtendedElement, GroupRingElement, gr_fold, gr_map_ring
from .groups import CyclicGroup, Group
from .numtheory import multiplicative_order
from .polyinv import inverse_integral, inverse_mod

SIDES = ("right", "left", "two-sided")


def certify(u: GroupRingElement, inv: GroupRingElement) -> None:
    one = GroupRingElement.one(u.group, u.ring)
    if u * inv != one or inv * u != one:
        raise NotAUnit("certification failed: the claimed inverse is not two-sided")


def invert_cyclic(u: GroupRingElement) -> GroupRingElement:
    """Inverse of a cyclic group ring element, certified; raises NotAUnit."""
    if not u.group.is_cyclic:
        raise MismatchError("invert_cyclic needs a cyclic group")
    n = u.group.order
    coeffs = u.coeffs
    if u.ring.is_integers:
        v = inverse_integral(coeffs, n)
    else:
        v = inverse_mod(coeffs, n, u.ring.modulus)
    inv = GroupRingElement(u.group, u.ring, dense=v)
    certify(u, inv)
    return inv


@dataclass(frozen=True)
class PrivateKey:
    """Inverse factors in application order.

    ``factors`` act on the key's side (the right half of a two-sided key);
    ``left_factors`` act on the left of a two-sided ciphertext.
    ``fold_order`` is set for disguised keys: ciphertexts are reduced
    modulo ``g^n = 1`` before any factor is applied.
    """

    factors: tuple
    side: str = "right"
    left_factors: tuple = ()
    fold_order: Optional[int] = None

    def apply(self, c: GroupRingElement) -> GroupRingElement:
        if self.side == "left":
            for f in self.factors:
                c = f * c
            return c
        for f in self.left_factors:
            c = f * c
        for f in self.factors:
            c = c * f
        return c

    def composed(self) -> GroupRingElement:
        """The single inverse element equivalent to the factor chain (right side)."""
        if self.side == "left":
            out = self.factors[-1]
            for f in reversed(self.factors[:-1]):
                out = out * f
            return out
        out = self.factors[0]
        for f in self.factors[1:]:
            out = out * f
        return out


@dataclass(frozen=True)
class PublicKey:
    """What a key file publishes: the unit(s) and the side, nothing else."""

    u: GroupRingElement
    side: str = "right"
    v: Optional[GroupRingElement] = None

    @property
    def group(self) -> Group:
        return self.u.group

    @property
    def ring(self) -> CoefficientRing:
        return self.u.ring

    def map_ring(self, ring: CoefficientRing) -> "PublicKey":
        v = gr_map_ring(self.v, ring) if self.v is not None else None
        return PublicKey(gr_map_ring(self.u, ring), self.side, v)


@dataclass(frozen=True)
class UnitKey:
    """A certified unit ``u`` (and ``v`` for two-sided keys) with its inverse.

    ``inverse`` and ``provenance`` are private; only ``u`` (and ``v``)
    ever reach a public key file.
    """

    u: GroupRingElement
    inverse: GroupRingElement = field(repr=False)
    side: str = "right"
    v: Optional[GroupRingElement] = None
    v_inverse: Optional[GroupRingElement] = field(default=None, repr=False)
    provenance: str = field(default="trial", repr=False)

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {self.side!r}")
        if (self.side == "two-sided") != (self.v is not None):
            raise ValueError("two-sided keys carry v; one-sided keys must not")

    @property
    def group(self) -> Group:
        return self.u.group

    @property
    def ring(self) -> CoefficientRing:
        return self.u.ring

    def public(self) -> PublicKey:
        return PublicKey(self.u, self.side, self.v)

    def private(self) -> PrivateKey:
        if self.side == "two-sided":
            return PrivateKey((self.inverse,), self.side, (self.v_inverse,))
        return PrivateKey((self.inverse,), self.side)

    def with_side(self, side: str, v: Optional["UnitKey"] = None) -> "UnitKey":
        """Same unit used on another side; ``v`` supplies the left unit for two-sided."""
        if side == "two-sided":
            if v is None:
                raise ValueError("two-sided keys need a left unit")
            return UnitKey(self.u, self.inverse, side, v.u, v.inverse, self.provenance)
        return UnitKey(self.u, self.inverse, side, provenance=self.provenance)

    def map_ring(self, ring: CoefficientRing) -> "UnitKey":
        v = gr_map_ring(self.v, ring) if self.v is not None else None
        vi = gr_map_ring(self.v_inverse, ring) if self.v_inverse is not None else None
        return UnitKey(gr_map_ring(self.u, ring), gr_map_ring(self.inverse, ring),
                       self.side, v, vi, self.provenance)


def make_key(u: GroupRingElement, inverse: Optional[GroupRingElement] = None, *,
             side: str = "right", provenance: str = "trial") -> UnitKey:
    """Certified one-sided key; the inverse is computed when not given (cyclic only)."""
    if inverse is None:
        inverse = invert_cyclic(u)
    else:
        certify(u, inverse)
    return UnitKey(u, inverse, side, provenance=provenance)


def trial_unit(u: GroupRingElement, side: str = "right") -> UnitKey:
    """Ingest a candidate cyclic unit of unknown construction."""
    return make_key(u, side=side, provenance="trial")


def hat(group: Group, x, ring: CoefficientRing = ZZ) -> GroupRingElement:
    """Sum of all powers of ``x`` over the cyclic subgroup it generates."""
    terms, y = [], group.identity
    for _ in range(group.element_order(x)):
        terms.append((1, y))
        y = group.mul(y, x)
    return GroupRingElement.from_terms(group, terms, ring)


def bass_cyclic_unit(n: int, i: int, group: Optional[Group] = None) -> UnitKey:
    """Bass cyclic unit ``(1+g+..+g^(i-1))^m + ((1-i^m)/n) * ghat`` in Z[C_n].

    ``m`` is the multiplicative order of ``i`` mod ``n``, so the correction
    coefficient is an integer.
    """
    if math.gcd(i, n) != 1:
        raise ValueError(f"Bass units need gcd(i, n) = 1, got i={i}, n={n}")
    G = group if group is not None else CyclicGroup(n)
    if not G.is_cyclic or G.order != n:
        raise MismatchError(f"Bass units live over cyclic({n})")
    if i % n == 1 or n == 1:
        one = GroupRingElement.one(G).to_dense()
        return UnitKey(one, one, provenance=f"bass n={n} i=1")
    if not 1 < i < n:
        raise ValueError(f"Bass units need 1 < i < n, got i={i}")
    m = multiplicative_order(i, n)
    assert (1 - i ** m) % n == 0
    geometric = GroupRingElement.from_coeffs(G, [1] * i)
    u = geometric ** m + GroupRingElement.from_coeffs(G, [(1 - i ** m) // n] * n)
    return make_key(u, provenance=f"bass n={n} i={i} m={m}")


def bicyclic_unit(group: Group, a, b, ring: CoefficientRing = ZZ) -> UnitKey:
    """Bicyclic unit ``1 + (1 - a) b ahat`` with inverse ``1 - (1 - a) b ahat``."""
    one = GroupRingElement.one(group, ring)
    x = (one - GroupRingElement.of_element(group, a, ring)) \
        * GroupRingElement.of_element(group, b, ring) * hat(group, a, ring)
    u, inv = one + x, one - x
    certify(u, inv)
    return UnitKey(u, inv, provenance="bicyclic")


def _same_setting(keys: Sequence[UnitKey]):
    if not keys:
        raise ValueError("need at least one key")
    k0 = keys[0]
    for k in keys[1:]:
        if k.group.structure != k0.group.structure or k.ring != k0.ring:
            raise MismatchError("keys live over different group rings")
        if k.side != k0.side:
            raise MismatchError(f"cannot combine {k0.side} and {k.side} keys")


def unit_product(keys: Sequence[UnitKey]) -> tuple[UnitKey, PrivateKey]:
    """Public unit ``k1.u * k2.u * ...``; private chain undoes it step by step.

    For right-sided keys the stored chain is ``(.., k2^-1, k1^-1)``, for
    left-sided ``(k1^-1, k2^-1, ..)``: each is the order in which the
    factors must be applied.
    """
    keys = list(keys)
    _same_setting(keys)
    side = keys[0].side
    u = keys[0].u
    for k in keys[1:]:
        u = u * k.u
    composed = keys[-1].inverse
    for k in reversed(keys[:-1]):
        composed = composed * k.inverse
    v = vinv = None
    left: tuple = ()
    if side == "two-sided":
        v = keys[0].v
        for k in keys[1:]:
            v = v * k.v
        vinv = keys[-1].v_inverse
        for k in reversed(keys[:-1]):
            vinv = vinv * k.v_inverse
        left = tuple(k.v_inverse for k in keys)
    certify(u, composed)
    if side == "left":
        chain = tuple(k.inverse for k in keys)
    else:
        chain = tuple(k.inverse for k in reversed(keys))
    key = UnitKey(u, composed, side, v, vinv, provenance="product")
    return key, PrivateKey(chain, side, left)


def unit_power(key: UnitKey, k: int) -> tuple[UnitKey, PrivateKey]:
    """Public ``u^k``; private ``(u^-1)^k``."""
    if k < 1:
        raise ValueError(f"power must be >= 1, got {k}")
    if k == 1:
        return key, key.private()
    u, inv = key.u ** k, key.inverse ** k
    certify(u, inv)
    v = vinv = None
    if key.side == "two-sided":
        v, vinv = key.v ** k, key.v_inverse ** k
        certify(v, vinv)
    out = UnitKey(u, inv, key.side, v, vinv, provenance=f"power {k}")
    return out, out.private()


@dataclass(frozen=True)
class DisguisedKey:
    """A cyclic key padded to formal length ``s`` so that n is not revealed."""

    base: UnitKey
    padded: ExtendedElement

    @property
    def length(self) -> int:
        return self.padded.length

    def public(self) -> ExtendedElement:
        return self.padded.public()

    def private(self) -> PrivateKey:
        return PrivateKey((self.base.inverse,), "right", fold_order=self.base.group.order)


def disguise(key: UnitKey, s: int, seed: int = 0, spread: int = 1000) -> DisguisedKey:
    """Pad ``key.u`` with random coefficients on formal powers ``g^n .. g^(s-1)``.

    Each random ``beta_j`` is subtracted from the coefficient of
    ``g^(j mod n)``, so folding modulo ``g^n = 1`` gives back ``u`` exactly.
    Over ``Z`` the betas are uniform in ``[-spread, spread]``; over ``Z/m``
    they are uniform residues.
    """
    if not key.group.is_cyclic:
        raise MismatchError("only cyclic keys can be disguised")
    n = key.group.order
    if s < n:
        raise ValueError(f"disguised length {s} is below the order {n}")
    rng = random.Random(seed)
    ring = key.ring
    coeffs = key.u.coeffs + [0] * (s - n)
    for j in range(n, s):
        beta = rng.randint(-spread, spread) if ring.is_integers else rng.randrange(ring.modulus)
        coeffs[j] = beta
        coeffs[j % n] -= beta
    padded = ExtendedElement(ring, tuple(coeffs), n)
    assert gr_fold(padded) == key.u
    return DisguisedKey(key, padded)


def binomial_unit(group: Group, ring: CoefficientRing, a: int, b: int, k: int) -> UnitKey:
    """``a + b*g^k`` over Z/m[C_n] with its closed-form inverse.

    ``(a + b x) * sum_j a^(n-1-j) (-b)^j x^j = a^n - (-b)^n`` whenever
    ``x^n = 1``, so the inverse exists iff that constant is a unit mod m.
    """
    n = group.order
    m = ring.modulus
    d_inv = pow((pow(a, n, m) - pow(-b, n, m)) % m, -1, m)
    u = GroupRingElement.from_terms(group, [(a, 0), (b, k % n)], ring)
    terms = [(d_inv * pow(a, n - 1 - j, m) * pow(-b, j, m), (k * j) % n) for j in range(n)]
    inv = GroupRingElement.from_terms(group, terms, ring)
    return UnitKey(u.to_dense(), inv.to_dense(), provenance="binomial")


def random_cyclic_unit(n: int, ring: CoefficientRing, rng: random.Random,
                       factors: int = 3) -> UnitKey:
    """Random certified unit of R[C_n] whose inverse is known by construction.

    Over ``Z/m``: a product of binomial units.  Over ``Z``: a product of
    Bass units and a trivial unit ``+-g^k``.
    """
    G = CyclicGroup(n)
    keys = []
    if ring.is_integers:
        candidates = [i for i in range(2, n) if math.gcd(i, n) == 1]
        for _ in range(factors):
            if candidates:
                keys.append(bass_cyclic_unit(n, rng.choice(candidates)))
        shift, sign = rng.randrange(n), rng.choice((1, -1))
        t = GroupRingElement.of_element(G, shift, ring, sign).to_dense()
        ti = GroupRingElement.of_element(G, (-shift) % n, ring, sign).to_dense()
        keys.append(UnitKey(t, ti, provenance="trivial"))
    else:
        m = ring.modulus
        while len(keys) < factors:
            a, b = rng.randrange(1, m), rng.randrange(1, m)
            try:
                keys.append(binomial_unit(G, ring, a, b, rng.randrange(1, max(2, n))))
            except ValueError:
                continue
    key, _ = unit_product(keys)
    return UnitKey(key.u, key.inverse, provenance="random")
