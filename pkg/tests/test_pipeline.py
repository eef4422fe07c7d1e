import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_element
from grunits.coeffs import ZZ, Zmod
from grunits.demo import H11, H11_INV, R1, example_6_units
from grunits.errors import DigitRangeError, MismatchError, VerificationError
from grunits.groupring import GroupRingElement
from grunits.groups import CyclicGroup, DirectProduct, Permutation, symmetric_group
from grunits.pipeline import (Ciphertext, MessageCodec, block_decrypt, block_decrypt_outer, block_encrypt,
                              decode_message, decrypt, encode_message, encrypt, from_digits,
                              message_digits, reduce_keys_mod, sign, to_digits, verify)
from grunits.units import (bass_cyclic_unit, bicyclic_unit, disguise, make_key, random_cyclic_unit,
                           unit_power, unit_product)
from test_groupring import sympy_cyclic_product

TRIALS = 200
C16 = CyclicGroup(16)


def random_message(G, rng, base=10, ring=ZZ):
    return GroupRingElement.from_coeffs(G, [rng.randrange(base) for _ in range(G.order)], ring)


# -- encoding ------------------------------------------------------------


def test_example_2_digitisation():
    G = CyclicGroup(11)
    w = encode_message(15134643, MessageCodec(G))
    assert w.coeffs == [1, 5, 1, 3, 4, 6, 4, 3, 0, 0, 0]
    assert decode_message(GroupRingElement.from_coeffs(G, [1, 5, 1, 3, 4, 6, 4, 3]), MessageCodec(G)) == 15134643


def test_raw_sequence_encoding():
    w = encode_message(R1, MessageCodec(C16, base=None))
    assert w.coeffs == R1
    assert message_digits(w, MessageCodec(C16, base=None)) == R1


def test_zero_message():
    codec = MessageCodec(C16)
    assert encode_message(0, codec).is_zero()
    assert decode_message(GroupRingElement.zero(C16).to_dense(), codec) == 0


@given(st.integers(min_value=0, max_value=10 ** 16 - 1))
def test_codec_round_trip_integers(value):
    fixed = MessageCodec(C16, width=len(str(value)))
    assert decode_message(encode_message(value, fixed), fixed) == value


@given(st.lists(st.integers(0, 6), min_size=1, max_size=16).filter(lambda d: d[-1] != 0))
def test_codec_round_trip_digits(digits):
    codec = MessageCodec(C16, base=7)
    assert message_digits(encode_message(digits, codec), codec) == digits


@given(st.integers(0, 10 ** 40), st.integers(2, 36))
def test_digits_helpers(value, base):
    assert from_digits(to_digits(value, base), base) == value


def test_codec_round_trip_random(rng):
    codec = MessageCodec(C16, width=16)
    for _ in range(1000):
        v = rng.randrange(10 ** 16)
        assert decode_message(encode_message(v, codec), codec) == v


def test_codec_errors():
    codec = MessageCodec(CyclicGroup(4))
    with pytest.raises(ValueError):
        encode_message(123456, codec)
    with pytest.raises(DigitRangeError):
        encode_message([1, 10], codec)
    with pytest.raises(DigitRangeError):
        decode_message(GroupRingElement.from_coeffs(CyclicGroup(4), [1, -3]), codec)
    with pytest.raises(ValueError):
        MessageCodec(CyclicGroup(4), base=1)


def test_codec_over_permutation_group_uses_listing_order():
    S = symmetric_group(3)
    codec = MessageCodec(S, base=10, width=6)
    w = encode_message(123456, codec)
    assert [w.coefficient(S.element(i)) for i in range(6)] == [1, 2, 3, 4, 5, 6]
    assert decode_message(w, codec) == 123456


# -- round trips for every key variant -----------------------------------


def _round_trips(key, priv, G, rng, ring=ZZ, base=10):
    for _ in range(TRIALS):
        w = random_message(G, rng, base, ring)
        assert decrypt(encrypt(w, key), priv) == w


def test_round_trip_single(rng):
    key = random_cyclic_unit(16, ZZ, rng)
    _round_trips(key, key.private(), C16, rng)


def test_round_trip_left(rng):
    S = symmetric_group(4)
    key = bicyclic_unit(S, Permutation.from_cycles(4, [(0, 1)]),
                        Permutation.from_cycles(4, [(1, 2, 3)])).with_side("left")
    _round_trips(key, key.private(), S, rng)


def test_round_trip_two_sided(rng):
    S = symmetric_group(4)
    a, b = Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(1, 2, 3)])
    u, v = bicyclic_unit(S, a, b), bicyclic_unit(S, b, a)
    key = u.with_side("two-sided", v)
    _round_trips(key, key.private(), S, rng)


def test_round_trip_product(rng):
    keys = [random_cyclic_unit(16, ZZ, rng, factors=1) for _ in range(3)]
    key, chain = unit_product(keys)
    _round_trips(key, chain, C16, rng)


def test_round_trip_product_left_and_two_sided(rng):
    G = symmetric_group(4)
    a, b = Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(1, 2, 3)])
    c = Permutation.from_cycles(4, [(0, 3)])
    k1, k2 = bicyclic_unit(G, a, b), bicyclic_unit(G, c, b)
    key, chain = unit_product([k1.with_side("left"), k2.with_side("left")])
    _round_trips(key, chain, G, rng)
    t1 = k1.with_side("two-sided", k2)
    t2 = k2.with_side("two-sided", bicyclic_unit(G, b, a))
    key, chain = unit_product([t1, t2])
    _round_trips(key, chain, G, rng)


def test_round_trip_power(rng):
    base = random_cyclic_unit(16, ZZ, rng, factors=1)
    key, priv = unit_power(base, 9)
    _round_trips(key, priv, C16, rng)


def test_round_trip_disguised(rng):
    key = random_cyclic_unit(16, ZZ, rng)
    dk = disguise(key, 41, seed=9)
    _round_trips(dk, dk.private(), C16, rng)


def test_round_trip_mod_reduced(rng):
    for _ in range(TRIALS):
        m = rng.randrange(2, 500)
        key = random_cyclic_unit(8, ZZ, rng, factors=2)
        key_m, priv_m = reduce_keys_mod(key, None, m)
        w = GroupRingElement.from_coeffs(CyclicGroup(8), [rng.randrange(m) for _ in range(8)], Zmod(m))
        assert decrypt(encrypt(w, key_m), priv_m) == w
        # the same plaintext over Z lifts exactly from the residues
        wz = GroupRingElement.from_coeffs(CyclicGroup(8), w.coeffs)
        assert decrypt(encrypt(wz, key), key.private()) == wz


def test_mod_reduced_example_4_and_huge_modulus():
    G = CyclicGroup(11)
    key = make_key(GroupRingElement.from_coeffs(G, H11), GroupRingElement.from_coeffs(G, H11_INV))
    key16, priv16 = reduce_keys_mod(key, None, 16)
    r = GroupRingElement.from_coeffs(G, [11, 15, 12, 8, 0, 13, 11, 7, 13, 4, 7], Zmod(16))
    c = encrypt(r, key16).element
    assert c.coeffs[:4] == [11, 14, 5, 7] and not any(c.coeffs[4:])
    assert decrypt(c, priv16) == r
    big = Zmod(10 ** 30)
    key_b, _ = reduce_keys_mod(key, None, big.modulus)
    digits = [3, 1, 4, 1, 5]
    over_z = encrypt(GroupRingElement.from_coeffs(G, digits), key).element
    over_big = encrypt(GroupRingElement.from_coeffs(G, digits, big), key_b).element
    assert over_big.signed_coeffs() == over_z.coeffs


def test_random_mod_97_over_c8(rng):
    for _ in range(50):
        key = random_cyclic_unit(8, ZZ, rng, factors=2)
        u_m, priv_m = reduce_keys_mod(key, None, 97)
        w = GroupRingElement.from_coeffs(CyclicGroup(8), [rng.randrange(97) for _ in range(8)], Zmod(97))
        assert (w * u_m.u) * priv_m.factors[0] == w


# -- structural properties -----------------------------------------------


def test_identity_key():
    one = GroupRingElement.one(C16).to_dense()
    key = make_key(one, one)
    w = GroupRingElement.from_coeffs(C16, R1)
    assert encrypt(w, key).element == w
    assert decrypt(w, key.private()) == w


def test_linearity(rng):
    key = random_cyclic_unit(16, ZZ, rng)
    for _ in range(50):
        a, b = random_element(C16, ZZ, rng), random_element(C16, ZZ, rng)
        assert encrypt(a + b, key).element == encrypt(a, key).element + encrypt(b, key).element


def test_ciphertext_matches_polynomial_oracle(rng):
    key = random_cyclic_unit(16, ZZ, rng)
    for _ in range(20):
        w = random_element(C16, ZZ, rng)
        assert encrypt(w, key).element.coeffs == sympy_cyclic_product(w.coeffs, key.u.coeffs, 16)


def test_left_and_right_encryption_differ():
    S, uab, bau, h = example_6_units()
    key, _ = unit_product([uab, bau])
    w = GroupRingElement.from_terms(S, [(3, Permutation.from_cycles(10, [(0, 5)])),
                                        (1, Permutation.from_cycles(10, [(2, 3, 4)]))])
    right = encrypt(w, key).element
    left = encrypt(w, key.with_side("left")).element
    assert right != left


def test_side_mismatch_is_detected(rng):
    key = random_cyclic_unit(8, ZZ, rng)
    ct = encrypt(random_message(CyclicGroup(8), rng), key)
    with pytest.raises(MismatchError):
        decrypt(ct, key.with_side("left").private())
    with pytest.raises(MismatchError):
        encrypt(random_message(CyclicGroup(9), rng), key)


def test_wrong_key_breaks_digit_range(rng):
    G = CyclicGroup(16)
    key, other = random_cyclic_unit(16, ZZ, rng), random_cyclic_unit(16, ZZ, rng)
    codec = MessageCodec(G, width=16)
    w = encode_message(1234567890123456, codec)
    with pytest.raises(DigitRangeError):
        decode_message(decrypt(encrypt(w, key), other.private()), codec)


# -- blocks --------------------------------------------------------------


def test_block_round_trip(rng):
    G, H = CyclicGroup(8), CyclicGroup(5)
    codec = MessageCodec(G)
    for _ in range(20):
        inner, outer = random_cyclic_unit(8, ZZ, rng), random_cyclic_unit(5, ZZ, rng)
        digits = [rng.randrange(10) for _ in range(rng.randrange(17, 25))]
        bc = block_encrypt(digits, codec, inner, H, outer)
        assert bc.nblocks == 3
        assert block_decrypt(bc, codec, inner.private(), H, outer.private()) == digits


def test_single_block_matches_plain_encryption(rng):
    G, H = CyclicGroup(8), CyclicGroup(3)
    codec = MessageCodec(G)
    inner = random_cyclic_unit(8, ZZ, rng)
    one = GroupRingElement.one(H).to_dense()
    outer = make_key(one, one)
    digits = [4, 1, 5, 9, 2, 6]
    bc = block_encrypt(digits, codec, inner, H, outer)
    plain = encrypt(encode_message(digits, codec), inner).element
    assert block_decrypt_outer(bc, codec, outer.private(), H)[0] == plain


def test_block_needs_both_keys(rng):
    G, H = CyclicGroup(8), CyclicGroup(5)
    codec = MessageCodec(G)
    inner, outer = random_cyclic_unit(8, ZZ, rng), random_cyclic_unit(5, ZZ, rng)
    digits = [rng.randrange(1, 10) for _ in range(20)]
    bc = block_encrypt(digits, codec, inner, H, outer)
    with pytest.raises(DigitRangeError):
        block_decrypt(bc, codec, None, H, outer.private())


def test_block_count_must_fit_outer_group(rng):
    G, H = CyclicGroup(4), CyclicGroup(3)
    inner, outer = random_cyclic_unit(4, ZZ, rng), random_cyclic_unit(3, ZZ, rng)
    with pytest.raises(ValueError):
        block_encrypt([1] * 12, MessageCodec(G), inner, H, outer)


# -- signatures ----------------------------------------------------------


def test_sign_verify(rng):
    key = random_cyclic_unit(16, ZZ, rng)
    secret, public_inverse = key.inverse, key.u
    for _ in range(50):
        w = random_message(C16, rng)
        assert verify(sign(w, secret), public_inverse, w) == w
    one = GroupRingElement.one(C16).to_dense()
    assert sign(w, one) == w


def test_tampered_signature_fails(rng):
    key = random_cyclic_unit(16, ZZ, rng)
    w = random_message(C16, rng)
    sig = sign(w, key.inverse)
    tampered = sig + GroupRingElement.of_element(C16, 3)
    with pytest.raises(VerificationError):
        verify(tampered, key.u, w)


def test_ciphertext_is_a_value():
    ct = Ciphertext(GroupRingElement.one(C16), ("unit:right",))
    assert ct.layers == ("unit:right",)


def test_product_group_messages(rng):
    G = DirectProduct([CyclicGroup(2), CyclicGroup(3)])
    codec = MessageCodec(G, width=6)
    one = GroupRingElement.one(G).to_dense()
    key = make_key(one, one)
    w = encode_message(271828, codec)
    assert decode_message(decrypt(encrypt(w, key), key.private()), codec) == 271828
