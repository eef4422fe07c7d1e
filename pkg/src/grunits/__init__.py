"""Public-key encryption with units in group rings.

Messages become group ring elements, public keys are units and private
keys are (chains of) their inverses.  The package covers cyclic and
permutation group rings over Z and Z/m, several unit constructions,
RSA hybrids, Hamming-coded pipelines and the Euclid attack on cyclic
instances.
"""

from .coeffs import ZZ, CoefficientRing, Zmod, parse_ring
from .errors import (DigitRangeError, FormatError, GroupRingError, MismatchError, NotAUnit,
                     NotInvertible, VerificationError)
from .groupring import (ExtendedElement, GroupRingElement, gr_fold, gr_mul, gr_mul_fast_cyclic,
                        gr_mul_nonreduced)
from .groups import CyclicGroup, DirectProduct, Permutation, PermutationGroup, parse_group, symmetric_group
from .pipeline import Ciphertext, MessageCodec, decode_message, decrypt, encode_message, encrypt
from .units import (DisguisedKey, PrivateKey, PublicKey, UnitKey, bass_cyclic_unit, bicyclic_unit,
                    disguise, invert_cyclic, unit_power, unit_product)

__all__ = [
    "ZZ", "CoefficientRing", "Zmod", "parse_ring",
    "DigitRangeError", "FormatError", "GroupRingError", "MismatchError", "NotAUnit",
    "NotInvertible", "VerificationError",
    "ExtendedElement", "GroupRingElement", "gr_fold", "gr_mul", "gr_mul_fast_cyclic", "gr_mul_nonreduced",
    "CyclicGroup", "DirectProduct", "Permutation", "PermutationGroup", "parse_group", "symmetric_group",
    "Ciphertext", "MessageCodec", "decode_message", "decrypt", "encode_message", "encrypt",
    "DisguisedKey", "PrivateKey", "PublicKey", "UnitKey", "bass_cyclic_unit", "bicyclic_unit",
    "disguise", "invert_cyclic", "unit_power", "unit_product",
]
__version__ = "0.1.0"
