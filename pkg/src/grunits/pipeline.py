"""Message encoding, blocking, and encryption/decryption with unit keys.

Digits are placed most-significant first: digit ``i`` becomes the
coefficient of the group element at listing position ``i``.  A message of
``k`` digits in a group of order ``n >= k`` leaves the last ``n - k``
coefficients zero.

Decryption failure is detected only through digit-range checks when
decoding.  That is a sanity check against wrong keys and corrupted data,
not an integrity guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .coeffs import CoefficientRing, ZZ
from .errors import DigitRangeError, MismatchError, VerificationError
from .groupring import ExtendedElement, GroupRingElement, gr_fold, gr_map_ring, gr_mul_nonreduced
from .groups import Group
from .units import DisguisedKey, PrivateKey, UnitKey


def to_digits(value: int, base: int, width: Optional[int] = None) -> list[int]:
    """Base-``base`` digits of ``value``, most significant first."""
    if value < 0:
        raise ValueError(f"cannot digitise a negative value {value}")
    digits = []
    while value:
        value, d = divmod(value, base)
        digits.append(d)
    digits = digits[::-1] or [0]
    if width is not None:
        if len(digits) > width:
            raise ValueError(f"{len(digits)} digits do not fit in width {width}")
        digits = [0] * (width - len(digits)) + digits
    return digits


def from_digits(digits: Sequence[int], base: int) -> int:
    value = 0
    for d in digits:
        value = value * base + d
    return value


def digit_count(value: int, base: int) -> int:
    return len(to_digits(value, base))


@dataclass(frozen=True)
class MessageCodec:
    """How integers and digit strings map onto group ring elements.

    ``base=None`` means raw coefficients (any ring value, signed).
    ``width`` fixes the number of digits so that values with trailing
    zero digits survive a round trip; without it trailing zero
    coefficients are dropped on decoding.
    """

    group: Group
    base: Optional[int] = 10
    ring: CoefficientRing = ZZ
    width: Optional[int] = None

    def __post_init__(self):
        if self.base is not None and self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.width is not None and self.width > self.group.order:
            raise ValueError(f"width {self.width} exceeds the group order {self.group.order}")


def encode_message(message: Union[int, Sequence[int]], codec: MessageCodec) -> GroupRingElement:
    """Digits (or an integer, digitised in ``codec.base``) to a group ring element."""
    G = codec.group
    if isinstance(message, int):
        if codec.base is None:
            raise ValueError("an integer message needs a base")
        digits = to_digits(message, codec.base, codec.width)
    else:
        digits = list(message)
        if codec.base is not None:
            for d in digits:
                if not 0 <= d < codec.base:
                    raise DigitRangeError(f"digit {d} outside [0, {codec.base})")
    if len(digits) > G.order:
        raise ValueError(f"{len(digits)} digits exceed the group order {G.order}; split into blocks")
    if G.is_cyclic and G.listing_permutation is None:
        return GroupRingElement.from_coeffs(G, digits, codec.ring)
    terms = [(d, G.element(i)) for i, d in enumerate(digits)]
    out = GroupRingElement.from_terms(G, terms, codec.ring)
    return out.to_dense() if G.has_dense_listing else out


def message_digits(element: GroupRingElement, codec: MessageCodec) -> list[int]:
    """Coefficients in listing-position order, range-checked against the base."""
    G = codec.group
    if G.is_cyclic and G.listing_permutation is None:
        raw = element.coeffs
    else:
        raw = [element.coefficient(G.element(i)) for i in range(G.order)]
    if codec.base is None:
        return [element.ring.signed(c) for c in raw]
    for c in raw:
        if not 0 <= c < codec.base:
            raise DigitRangeError(f"coefficient {element.ring.signed(c)} is not a base-{codec.base} digit")
    if codec.width is not None:
        if any(raw[codec.width:]):
            raise DigitRangeError(f"non-zero coefficients beyond width {codec.width}")
        return raw[:codec.width]
    while len(raw) > 1 and raw[-1] == 0:
        raw.pop()
    return raw


def decode_message(element: GroupRingElement, codec: MessageCodec) -> int:
    """Exact inverse of :func:`encode_message` for integer messages."""
    if codec.base is None:
        raise ValueError("raw codecs decode to digit lists; use message_digits")
    return from_digits(message_digits(element, codec), codec.base)


# -- encryption ----------------------------------------------------------


@dataclass(frozen=True)
class Ciphertext:
    """Encrypted element plus public layer descriptors."""

    element: Union[GroupRingElement, ExtendedElement]
    layers: tuple = ()


def encrypt(w: GroupRingElement, key: Union[UnitKey, DisguisedKey]) -> Ciphertext:
    """``w*u`` (right), ``u*w`` (left), ``v*w*u`` (two-sided), or the
    non-reduced product with a disguised key's padded form."""
    if isinstance(key, DisguisedKey):
        padded = key.public()
        return Ciphertext(gr_mul_nonreduced(w, padded), (f"disguised:{padded.length}",))
    if isinstance(key, ExtendedElement):
        return Ciphertext(gr_mul_nonreduced(w, key), (f"disguised:{key.length}",))
    if w.group.structure != key.group.structure or w.ring != key.ring:
        raise MismatchError("message and key live over different group rings")
    if key.side == "right":
        c = w * key.u
    elif key.side == "left":
        c = key.u * w
    else:
        c = key.v * w * key.u
    return Ciphertext(c, (f"unit:{key.side}",))


def decrypt(c: Union[Ciphertext, GroupRingElement, ExtendedElement], priv: PrivateKey) -> GroupRingElement:
    """Fold (disguised keys only), then apply the private factor chain."""
    layers = ()
    if isinstance(c, Ciphertext):
        c, layers = c.element, c.layers
    for layer in layers:
        if layer.startswith("unit:") and layer[5:] != priv.side:
            raise MismatchError(f"ciphertext is {layer[5:]}-sided, key is {priv.side}-sided")
    if isinstance(c, ExtendedElement):
        if priv.fold_order is None:
            raise MismatchError("an extended ciphertext needs a disguised private key")
        c = gr_fold(c, priv.fold_order)
    return priv.apply(c)


def reduce_keys_mod(key: UnitKey, priv: Optional[PrivateKey], m: int,
                    ) -> tuple[UnitKey, Optional[PrivateKey]]:
    """Both halves of a key pair with coefficients taken modulo ``m``.

    Round trips stay exact for plaintexts with coefficients in ``[0, m)``;
    the caller owns that bound.  A bare public key reduces to
    ``(public_m, None)``.
    """
    ring = CoefficientRing(m)
    if priv is None:
        if not hasattr(key, "private"):
            return key.map_ring(ring), None
        priv = key.private()
    mapped = PrivateKey(tuple(gr_map_ring(f, ring) for f in priv.factors), priv.side,
                        tuple(gr_map_ring(f, ring) for f in priv.left_factors), priv.fold_order)
    return key.map_ring(ring), mapped


# -- blocking ------------------------------------------------------------


@dataclass(frozen=True)
class BlockCiphertext:
    """Two-layer ciphertext: ``columns[k]`` holds coordinate ``k`` of every
    inner block ciphertext, embedded over the outer group and encrypted."""

    columns: tuple
    nblocks: int
    ndigits: int


def split_blocks(digits: Sequence[int], size: int) -> list[list[int]]:
    return [list(digits[i:i + size]) for i in range(0, len(digits), size)] or [[]]


def block_encrypt(digits: Sequence[int], codec: MessageCodec, inner: UnitKey,
                  outer_group: Group, outer: UnitKey) -> BlockCiphertext:
    """Encrypt each block with ``inner``, then each coordinate across blocks with ``outer``.

    Needs ``|H| > t`` for ``t`` blocks.
    """
    G = codec.group
    blocks = split_blocks(digits, G.order)
    t = len(blocks)
    if t >= outer_group.order:
        raise ValueError(f"{t} blocks need an outer group of order > {t}, got {outer_group.order}")
    block_codec = MessageCodec(G, codec.base, codec.ring)
    inner_ct = [encrypt(encode_message(b, block_codec), inner).element.coeffs for b in blocks]
    columns = []
    for k in range(G.order):
        col = GroupRingElement.from_terms(
            outer_group, [(inner_ct[i][k], outer_group.element(i)) for i in range(t)], outer.ring)
        if outer_group.has_dense_listing:
            col = col.to_dense()
        columns.append(encrypt(col, outer).element)
    return BlockCiphertext(tuple(columns), t, len(digits))


def block_decrypt_outer(bc: BlockCiphertext, codec: MessageCodec, outer_priv: PrivateKey,
                        outer_group: Group) -> list[GroupRingElement]:
    """Undo only the outer layer: the inner block ciphertexts."""
    G = codec.group
    cols = [decrypt(c, outer_priv) for c in bc.columns]
    blocks = []
    for i in range(bc.nblocks):
        h = outer_group.element(i)
        coeffs = [col.coefficient(h) for col in cols]
        blocks.append(GroupRingElement.from_coeffs(G, coeffs, codec.ring)
                      if G.is_cyclic else
                      GroupRingElement.from_terms(G, [(c, G.elements[k]) for k, c in enumerate(coeffs)],
                                                  codec.ring))
    return blocks


def block_decrypt(bc: BlockCiphertext, codec: MessageCodec, inner_priv: Optional[PrivateKey],
                  outer_group: Group, outer_priv: PrivateKey) -> list[int]:
    """Recover the digit string; both private keys are required.

    With ``inner_priv=None`` the inner ciphertexts are decoded as they are,
    which fails the digit-range check for any non-trivial inner key.
    """
    G = codec.group
    out: list[int] = []
    for i, block in enumerate(block_decrypt_outer(bc, codec, outer_priv, outer_group)):
        plain = inner_priv.apply(block) if inner_priv is not None else block
        size = min(G.order, bc.ndigits - i * G.order)
        out.extend(message_digits(plain, MessageCodec(G, codec.base, codec.ring, size or None))[:size])
    return out


# -- signatures ----------------------------------------------------------


def sign(w: GroupRingElement, secret: GroupRingElement) -> GroupRingElement:
    """Signature ``w * secret`` using the signer's secret unit."""
    return w * secret


def verify(sig: GroupRingElement, public_inverse: GroupRingElement,
           claimed: Optional[GroupRingElement] = None) -> GroupRingElement:
    """Recover ``sig * public_inverse``; raise if it differs from ``claimed``."""
    w = sig * public_inverse
    if claimed is not None and w != claimed:
        raise VerificationError("signature does not verify against the claimed message")
    return w
