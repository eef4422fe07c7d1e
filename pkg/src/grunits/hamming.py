"""Binary Hamming codes and their combination with unit encryption.

Codes are systematic: a codeword is the ``k`` data bits followed by the
``r`` parity bits.  When a codeword is rendered as an integer, bit 0 of
the word is the most significant bit.  Data columns of the parity-check
matrix are the r-bit values of weight >= 2 in increasing order; parity
column ``j`` is ``1 << (r-1-j)``.

Decoding corrects any single error per codeword.  Two or more errors in
one codeword are not reliably corrected (the decoder returns some
codeword without complaint).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .coeffs import CoefficientRing
from .errors import MismatchError
from .groupring import GroupRingElement, gr_map_ring
from .pipeline import decrypt, encrypt, reduce_keys_mod
from .units import PrivateKey, UnitKey


class HammingCode:
    def __init__(self, r: int):
        if r < 2:
            raise ValueError(f"Hamming codes need r >= 2, got {r}")
        self.r = r
        self.length = (1 << r) - 1
        self.dimension = self.length - r
        data_cols = [x for x in range(1, self.length + 1) if x.bit_count() >= 2]
        parity_cols = [1 << (r - 1 - j) for j in range(r)]
        self.columns = tuple(data_cols + parity_cols)
        self._position = {c: i for i, c in enumerate(self.columns)}

    def __repr__(self) -> str:
        return f"HammingCode(r={self.r}) [{self.length},{self.dimension},3]"

    @property
    def parity_check_matrix(self) -> list[list[int]]:
        """r x n matrix; row 0 holds the most significant syndrome bit."""
        return [[(c >> (self.r - 1 - i)) & 1 for c in self.columns] for i in range(self.r)]

    @property
    def generator_matrix(self) -> list[list[int]]:
        return [self.encode([int(i == j) for j in range(self.dimension)]) for i in range(self.dimension)]

    def syndrome(self, word: Sequence[int]) -> int:
        s = 0
        for bit, col in zip(word, self.columns):
            if bit:
                s ^= col
        return s

    def encode(self, message: Sequence[int]) -> list[int]:
        if len(message) != self.dimension:
            raise ValueError(f"message needs {self.dimension} bits, got {len(message)}")
        s = 0
        for bit, col in zip(message, self.columns):
            if bit:
                s ^= col
        return [int(b) for b in message] + [(s >> (self.r - 1 - j)) & 1 for j in range(self.r)]

    def decode(self, received: Sequence[int]) -> tuple[list[int], bool]:
        """Message bits and whether a bit was flipped."""
        if len(received) != self.length:
            raise ValueError(f"received word needs {self.length} bits, got {len(received)}")
        word = [int(b) for b in received]
        s = self.syndrome(word)
        if s:
            word[self._position[s]] ^= 1
        return word[:self.dimension], bool(s)

    # integer renderings (bit 0 = most significant)

    def encode_int(self, value: int) -> int:
        if not 0 <= value < (1 << self.dimension):
            raise ValueError(f"{value} does not fit in {self.dimension} bits")
        return bits_to_int(self.encode(int_to_bits(value, self.dimension)))

    def decode_int(self, word: int) -> tuple[int, bool]:
        msg, fixed = self.decode(int_to_bits(word, self.length))
        return bits_to_int(msg), fixed


def int_to_bits(value: int, width: int) -> list[int]:
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def bits_to_int(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


# -- coefficient-wise coding ---------------------------------------------


@dataclass(frozen=True)
class CodedCoefficients:
    """Each coefficient's codeword, as an integer, in dense storage order."""

    r: int
    words: tuple

    def wire(self) -> str:
        return f"coded r={self.r} " + " ".join(map(str, self.words))


def _coefficient_bits(ring: CoefficientRing) -> int:
    m = ring.modulus
    if m is None or m & (m - 1):
        raise MismatchError("per-coefficient coding needs coefficients mod 2^k")
    return m.bit_length() - 1


def coeff_code_wrap(element: GroupRingElement, code: HammingCode) -> CodedCoefficients:
    k = _coefficient_bits(element.ring)
    if k > code.dimension:
        raise ValueError(f"{k}-bit coefficients do not fit a code of dimension {code.dimension}")
    return CodedCoefficients(code.r, tuple(code.encode_int(c) for c in element.coeffs))


def coeff_code_unwrap(coded: CodedCoefficients, code: HammingCode, group, ring: CoefficientRing,
                      ) -> tuple[GroupRingElement, int]:
    """Decoded element and the number of corrected codewords."""
    if coded.r != code.r:
        raise MismatchError(f"coded with r={coded.r}, decoding with r={code.r}")
    values, fixed = [], 0
    for word in coded.words:
        v, f = code.decode_int(word)
        values.append(v)
        fixed += f
    return GroupRingElement(group, ring, dense=values), fixed


# -- bitstream coding ----------------------------------------------------


@dataclass(frozen=True)
class CodedBits:
    bits: tuple
    length: int

    def wire(self) -> str:
        return "bits " + "".join(map(str, self.bits))


def bitstream_code_wrap(bits: Sequence[int], code: HammingCode) -> CodedBits:
    """Blockwise encoding; the last block is zero-padded and the true length kept."""
    bits = [int(b) for b in bits]
    out: list[int] = []
    for i in range(0, len(bits), code.dimension):
        block = bits[i:i + code.dimension]
        out.extend(code.encode(block + [0] * (code.dimension - len(block))))
    return CodedBits(tuple(out), len(bits))


def bitstream_code_unwrap(coded: CodedBits, code: HammingCode) -> tuple[list[int], int]:
    """Original bits and the number of corrected blocks."""
    if len(coded.bits) % code.length:
        raise ValueError(f"coded length {len(coded.bits)} is not a multiple of {code.length}")
    out: list[int] = []
    fixed = 0
    for i in range(0, len(coded.bits), code.length):
        msg, f = code.decode(coded.bits[i:i + code.length])
        out.extend(msg)
        fixed += f
    return out[:coded.length], fixed


def flip_one_bit_per_word(words: Sequence[int], width: int, rng: random.Random,
                          p: float = 1.0) -> list[int]:
    """Channel model: each codeword gets at most one flipped bit (with probability ``p``)."""
    return [w ^ (1 << rng.randrange(width)) if rng.random() < p else w for w in words]


# -- combined pipelines --------------------------------------------------

ORDERS = ("encrypt-then-encode", "encode-then-encrypt")


def code_crypto_pipeline(w: GroupRingElement, key: UnitKey, priv: Optional[PrivateKey],
                         code: HammingCode, order: str = "encrypt-then-encode",
                         channel: Optional[Callable[[list[int]], list[int]]] = None,
                         ) -> GroupRingElement:
    """Run ``w`` through both layers, a channel, and back.

    ``w`` must be over ``Z/2^k`` with ``k <= code.dimension``; the key is
    reduced into whichever modulus the encrypted layer works in.
    ``channel`` acts on the list of codeword integers.  With
    ``encrypt-then-encode`` those codewords are what is transmitted.  With
    ``encode-then-encrypt`` the codewords are encrypted before transmission,
    so the channel models errors on the coded plaintext (errors hitting the
    ciphertext itself spread under decryption and are not correctable).
    """
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    channel = channel or (lambda words: list(words))
    G, ring = w.group, w.ring
    if order == "encrypt-then-encode":
        key_m, priv_m = reduce_keys_mod(key, priv, ring.modulus)
        coded = coeff_code_wrap(encrypt(w, key_m).element, code)
        received = CodedCoefficients(code.r, tuple(channel(list(coded.words))))
        c, _ = coeff_code_unwrap(received, code, G, ring)
        return decrypt(c, priv_m)
    coded = coeff_code_wrap(w, code)
    noisy = channel(list(coded.words))
    big = CoefficientRing(1 << code.length)
    key_L, priv_L = reduce_keys_mod(key, priv, big.modulus)
    ct = encrypt(GroupRingElement(G, big, dense=noisy), key_L)
    plain = decrypt(ct, priv_L)
    out, _ = coeff_code_unwrap(CodedCoefficients(code.r, tuple(plain.coeffs)), code, G, ring)
    return gr_map_ring(out, ring)
