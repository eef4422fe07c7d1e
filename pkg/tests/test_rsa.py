import random

import pytest
import sympy

from grunits.coeffs import ZZ
from grunits.demo import H11, H11_INV, TRANS2
from grunits.groupring import GroupRingElement
from grunits.groups import CyclicGroup
from grunits.numtheory import crt_pair, is_probable_prime, multiplicative_order
from grunits.pipeline import Ciphertext
from grunits.rsa import HybridKey, RsaKey, hybrid_decrypt, hybrid_encrypt, rsa_decrypt, rsa_encrypt, rsa_keygen
from grunits.units import make_key, random_cyclic_unit


@pytest.fixture(scope="module")
def rsa2():
    return rsa_keygen(7459, 10459, 5)


def test_example_2_key(rsa2):
    assert rsa2.n == 78013681
    assert rsa2.phi == sympy.totient(78013681) == 77995764
    assert rsa2.d == sympy.mod_inverse(5, 77995764) == 15599153
    assert rsa_encrypt(1231, rsa2) == 15134643
    assert rsa_decrypt(15134643, rsa2) == 1231


def test_random_messages_round_trip(rsa2):
    rng = random.Random(1)
    for _ in range(500):
        m = rng.randrange(rsa2.n)
        assert rsa_decrypt(rsa_encrypt(m, rsa2), rsa2) == m


def test_trivial_messages(rsa2):
    for m in (0, 1, rsa2.n - 1):
        assert rsa_decrypt(rsa_encrypt(m, rsa2), rsa2) == m


def test_keygen_validation():
    with pytest.raises(ValueError):
        rsa_keygen(7459, 7459, 5)
    with pytest.raises(ValueError):
        rsa_keygen(7459, 10461, 5)   # 10461 = 3 * 11 * 317
    with pytest.raises(ValueError):
        rsa_keygen(7, 13, 3)          # gcd(3, 72) = 3


def test_message_range(rsa2):
    with pytest.raises(ValueError):
        rsa_encrypt(rsa2.n, rsa2)
    with pytest.raises(ValueError):
        rsa_decrypt(5, rsa2.public())


def test_primality_against_sympy():
    rng = random.Random(2)
    for n in list(range(-5, 2000)) + [rng.randrange(10 ** 30) for _ in range(300)]:
        assert is_probable_prime(n) == sympy.isprime(n)
    for p in (2 ** 61 - 1, 2 ** 89 - 1, 3215031751, 3825123056546413051):
        assert is_probable_prime(p) == sympy.isprime(p)


def test_number_theory_helpers():
    assert multiplicative_order(2, 5) == 4
    assert multiplicative_order(3, 16) == sympy.n_order(3, 16)
    assert crt_pair(2, 3, 3, 5) == 8


def _hybrid(rsa2):
    G = CyclicGroup(11)
    unit = make_key(GroupRingElement.from_coeffs(G, H11), GroupRingElement.from_coeffs(G, H11_INV))
    return HybridKey(rsa2, unit)


def test_hybrid_example_2_transcript(rsa2):
    hkey = _hybrid(rsa2)
    assert hkey.width == 8
    ct = hybrid_encrypt(1231, hkey)
    assert ct.element.signed_coeffs() == TRANS2
    assert ct.layers == ("rsa", "unit:right")
    assert hybrid_decrypt(ct, hkey) == 1231


@pytest.mark.parametrize("order", ["rsa-then-unit", "unit-then-rsa", "both"])
def test_hybrid_orders_round_trip(rsa2, order):
    rng = random.Random(hash(order) & 0xffff)
    hkeys = [_hybrid(rsa2),
             HybridKey(rsa2, random_cyclic_unit(11, ZZ, rng))]
    for hkey in hkeys:
        for _ in range(100):
            P = rng.randrange(rsa2.n)
            assert hybrid_decrypt(hybrid_encrypt(P, hkey, order), hkey, order) == P


def test_hybrid_small_group_is_rejected(rsa2):
    unit = random_cyclic_unit(5, ZZ, random.Random(0))
    with pytest.raises(ValueError):
        hybrid_encrypt(1231, HybridKey(rsa2, unit))


def test_hybrid_unknown_order(rsa2):
    with pytest.raises(ValueError):
        hybrid_encrypt(1, _hybrid(rsa2), "rsa-only")


def test_public_part_hides_private_fields(rsa2):
    pub = rsa2.public()
    assert pub == RsaKey(rsa2.n, rsa2.e)
    with pytest.raises(ValueError):
        pub.phi
    assert isinstance(Ciphertext(GroupRingElement.one(CyclicGroup(2))).layers, tuple)
