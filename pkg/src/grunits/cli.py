"""Command-line front end: ``grunits <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 cryptographic mismatch
(wrong key, failed verification, digit-range violation), 4 attack failure.
Every command is deterministic given its flags, ``--seed`` and input files.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from .attacks import attack_benchmark, bench_csv, euclid_attack
from .coeffs import CoefficientRing, parse_ring
from .demo import EXAMPLES, run_demo
from .errors import DigitRangeError, FormatError, GroupRingError, MismatchError, VerificationError
from .groupring import ExtendedElement, GroupRingElement, gr_mul_nonreduced
from .groups import Group, Permutation, parse_group
from .hamming import (CodedBits, CodedCoefficients, HammingCode, bitstream_code_unwrap,
                      bitstream_code_wrap, coeff_code_unwrap, coeff_code_wrap)
from .pipeline import (Ciphertext, MessageCodec, decrypt, encode_message, encrypt, from_digits,
                       message_digits, sign, to_digits, verify)
from .rsa import ORDERS as HYBRID_ORDERS, HybridKey, hybrid_decrypt, hybrid_encrypt, rsa_keygen
from .textio import (KeyFile, read_key, read_message, read_rsa_key, split_hybrid,
                     write_message, write_private_key, write_public_key, write_rsa_key)
from .units import (PrivateKey, PublicKey, UnitKey, bass_cyclic_unit, bicyclic_unit, binomial_unit,
                    disguise, make_key, random_cyclic_unit, unit_power, unit_product)

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_ATTACK = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


# -- small helpers -------------------------------------------------------


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def parse_permutation(text: str, degree: int) -> Permutation:
    """``p:1,0,2`` image lists or cycle notation such as ``(0 1)(2 3 4)``."""
    text = text.strip()
    if text.startswith("p:"):
        return Permutation.parse(text)
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles and text not in ("", "()"):
        raise FormatError(f"bad permutation {text!r}")
    try:
        parsed = [tuple(int(t) for t in c.replace(",", " ").split()) for c in cycles]
        return Permutation.from_cycles(degree, [c for c in parsed if c])
    except (ValueError, IndexError) as exc:
        raise FormatError(f"bad permutation {text!r}: {exc}") from None


def _parse_base(text: str) -> Optional[int]:
    return None if text == "raw" else int(text)


def unit_key_from_file(kf: KeyFile) -> UnitKey:
    """Rebuild a certified key from a private key file (chains are composed)."""
    if kf.private is None:
        raise CliError("a private key file is required")
    if not isinstance(kf.public, PublicKey):
        raise CliError("disguised keys cannot be combined further")
    pub, priv = kf.public, kf.private
    inverse = priv.composed()
    v_inverse = None
    if priv.left_factors:
        v_inverse = priv.left_factors[-1]
        for f in reversed(priv.left_factors[:-1]):
            v_inverse = v_inverse * f
    key = UnitKey(pub.u, inverse, pub.side, pub.v, v_inverse, provenance="file")
    one = GroupRingElement.one(pub.group, pub.ring)
    if pub.u * inverse != one or (pub.v is not None and pub.v * v_inverse != one):
        raise CliError("private key does not invert its public unit", EXIT_MISMATCH)
    return key


def _message_values(text: str, base: Optional[int]) -> list[int]:
    """Digits of a decimal integer message, or raw integers when ``base`` is None."""
    tokens = text.split()
    if base is None:
        return [int(t) for t in tokens]
    if not tokens:
        return []
    if len(tokens) != 1:
        raise CliError("a message file holds one non-negative integer (use --base raw for sequences)")
    return to_digits(int(tokens[0]), base)


def _format_values(values: list[int], base: Optional[int]) -> str:
    if not values:
        return ""
    if base is None:
        return " ".join(map(str, values)) + "\n"
    return f"{from_digits(values, base)}\n"


def _split_layers(layers: tuple) -> tuple[tuple, Optional[int]]:
    rest, count = [], None
    for layer in layers:
        if layer.startswith("digits:"):
            count = int(layer[7:])
        else:
            rest.append(layer)
    return tuple(rest), count


def _plain_values(plain: GroupRingElement, base: Optional[int], count: Optional[int]) -> list[int]:
    if count is not None and count > plain.group.order:
        raise CliError(f"{count} digits cannot come from a group of order {plain.group.order}", EXIT_MISMATCH)
    if base is None:
        values = [plain.ring.signed(c) for c in plain.coeffs]
        if count is None:
            while values and values[-1] == 0:
                values.pop()
            return values
        if any(values[count:]):
            raise DigitRangeError(f"non-zero coefficients beyond the {count} message entries")
        return values[:count]
    if count == 0:
        if not plain.is_zero:
            raise DigitRangeError("an empty message must decrypt to zero")
        return []
    return message_digits(plain, MessageCodec(plain.group, base, plain.ring, count))


def _encode(values: list[int], group: Group, ring: CoefficientRing, base: Optional[int]) -> GroupRingElement:
    if len(values) > group.order:
        raise CliError(f"{len(values)} digits exceed the group order {group.order}; split the message")
    return encode_message(values, MessageCodec(group, base, ring))


# -- subcommands ---------------------------------------------------------


def _base_key(args, group: Optional[Group], ring: CoefficientRing) -> tuple[UnitKey, PrivateKey]:
    kind = args.kind
    if kind == "product":
        if not args.from_keys:
            raise CliError("--kind product needs --from key1.key,key2.key")
        keys = [unit_key_from_file(read_key(_read(p))) for p in args.from_keys.split(",")]
        return unit_product(keys)
    if group is None:
        raise CliError("--group is required")
    if kind == "bass":
        if args.i is None:
            raise CliError("--kind bass needs --i")
        if not group.is_cyclic:
            raise CliError("--kind bass needs a cyclic group")
        key = bass_cyclic_unit(group.order, args.i, group)
        if not ring.is_integers:
            key = key.map_ring(ring)
    elif kind == "bicyclic":
        if args.a is None or args.b is None:
            raise CliError("--kind bicyclic needs --a and --b")
        degree = getattr(group, "degree", None)
        if degree is None:
            raise CliError("--kind bicyclic needs a permutation group such as 'sym 4'")
        a, b = parse_permutation(args.a, degree), parse_permutation(args.b, degree)
        for x in (a, b):
            if not group.contains(x):
                raise CliError(f"{x.descriptor()} is not in {group.describe()}")
        key = bicyclic_unit(group, a, b, ring)
    elif kind == "trial":
        if args.coeffs is None:
            raise CliError("--kind trial needs --coeffs")
        u = GroupRingElement.from_coeffs(group, [int(t) for t in args.coeffs.replace(",", " ").split()], ring)
        key = make_key(u)
    elif kind == "binomial":
        if ring.is_integers:
            raise CliError("--kind binomial needs a ring Zmod m")
        if args.a is None or args.b is None:
            raise CliError("--kind binomial needs --a and --b")
        key = binomial_unit(group, ring, int(args.a), int(args.b), args.shift)
    elif kind == "random":
        if not group.is_cyclic:
            raise CliError("--kind random needs a cyclic group")
        key = random_cyclic_unit(group.order, ring, random.Random(args.seed))
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown kind {kind!r}")
    return key, key.private()


def cmd_keygen(args) -> int:
    group = parse_group(args.group) if args.group else None
    ring = parse_ring(args.ring)
    key, priv = _base_key(args, group, ring)
    if args.side is not None and args.side != key.side:
        if args.side == "two-sided":
            if not args.left_key:
                raise CliError("two-sided keys need --left-key for the left unit")
            left = unit_key_from_file(read_key(_read(args.left_key)))
            key = key.with_side("two-sided", left)
        else:
            key = key.with_side(args.side)
        priv = key.private()
    if args.power is not None:
        key, priv = unit_power(key, args.power)
    pub_text, key_text = write_public_key(key), write_private_key(key, priv)
    if args.disguise is not None:
        if key.side != "right":
            raise CliError("only right-sided keys can be disguised")
        dk = disguise(key, args.disguise, seed=args.seed)
        pub_text, key_text = write_public_key(dk), write_private_key(dk, dk.private())
    _write(f"{args.out}.pub", pub_text)
    _write(f"{args.out}.key", key_text)
    print(f"wrote {args.out}.pub and {args.out}.key")
    return EXIT_OK


def cmd_encrypt(args) -> int:
    base = _parse_base(args.base)
    pub = read_key(_read(args.key)).public
    values = _message_values(_read(args.input), base)
    if isinstance(pub, ExtendedElement):
        if base is not None and any(not 0 <= d < base for d in values):
            raise DigitRangeError(f"digits must lie in [0, {base})")
        ct = Ciphertext(gr_mul_nonreduced(values, pub), (f"disguised:{pub.length}",))
    else:
        ct = encrypt(_encode(values, pub.group, pub.ring, base), pub)
    _write(args.out, write_message(ct.element, ct.layers + (f"digits:{len(values)}",)))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    base = _parse_base(args.base)
    kf = read_key(_read(args.key))
    if kf.private is None:
        raise CliError("decryption needs a private key file")
    el, layers = read_message(_read(args.input))
    layers, count = _split_layers(layers)
    if isinstance(el, ExtendedElement) and el.ring != kf.private.factors[0].ring:
        raise MismatchError("ciphertext ring does not match the key")
    plain = decrypt(Ciphertext(el, layers), kf.private)
    _write(args.out, _format_values(_plain_values(plain, base, count), base))
    return EXIT_OK


def _signing_secret(kf: KeyFile) -> GroupRingElement:
    if kf.private is None:
        raise CliError("signing needs a private key file")
    if not isinstance(kf.public, PublicKey) or kf.private.side != "right":
        raise CliError("signing needs a right-sided, undisguised key")
    return kf.private.composed()


def cmd_sign(args) -> int:
    base = _parse_base(args.base)
    kf = read_key(_read(args.key))
    secret = _signing_secret(kf)
    values = _message_values(_read(args.input), base)
    w = _encode(values, secret.group, secret.ring, base)
    _write(args.out, write_message(sign(w, secret), ("signature", f"digits:{len(values)}")))
    return EXIT_OK


def cmd_verify(args) -> int:
    base = _parse_base(args.base)
    pub = read_key(_read(args.key)).public
    if not isinstance(pub, PublicKey) or pub.side != "right":
        raise CliError("verification needs a right-sided, undisguised public key")
    sig, _ = read_message(_read(args.sig))
    if not isinstance(sig, GroupRingElement):
        raise CliError("a signature is a group ring element")
    claimed = _encode(_message_values(_read(args.input), base), pub.group, pub.ring, base)
    verify(sig, pub.u, claimed)
    print("signature verified")
    return EXIT_OK


def cmd_rsa_keygen(args) -> int:
    key = rsa_keygen(args.p, args.q, args.e)
    pub_text, key_text = write_rsa_key(key), write_rsa_key(key, private=True)
    if args.unit:
        kf = read_key(_read(args.unit))
        unit = unit_key_from_file(kf)
        pub_text += write_public_key(unit)
        key_text += write_private_key(unit, kf.private)
    _write(f"{args.out}.pub", pub_text)
    _write(f"{args.out}.key", key_text)
    print(f"wrote {args.out}.pub and {args.out}.key")
    return EXIT_OK


def _hybrid_key(path: str, base: int, need_private: bool) -> HybridKey:
    rsa_text, unit_text = split_hybrid(_read(path))
    rsa = read_rsa_key(rsa_text)
    kf = read_key(unit_text)
    if need_private:
        if rsa.d is None:
            raise CliError("hybrid decryption needs the RSA private exponent")
        unit = unit_key_from_file(kf)
    else:
        unit = kf.public
        if not isinstance(unit, PublicKey):
            raise CliError("hybrid keys need an undisguised unit")
    return HybridKey(rsa, unit, base)


def _infer_order(layers: tuple) -> str:
    kinds = tuple("unit" if layer.startswith("unit:") else layer for layer in layers)
    table = {("rsa", "unit"): "rsa-then-unit", ("unit", "rsa"): "unit-then-rsa",
             ("unit", "rsa", "unit"): "both"}
    if kinds not in table:
        raise CliError(f"cannot infer the layer order from {layers!r}; pass --order")
    return table[kinds]


def cmd_hybrid_encrypt(args) -> int:
    hkey = _hybrid_key(args.key, args.base, need_private=False)
    tokens = _read(args.input).split()
    if len(tokens) != 1:
        raise CliError("a hybrid message is a single non-negative integer")
    ct = hybrid_encrypt(int(tokens[0]), hkey, args.order)
    _write(args.out, write_message(ct.element, ct.layers))
    return EXIT_OK


def cmd_hybrid_decrypt(args) -> int:
    hkey = _hybrid_key(args.key, args.base, need_private=True)
    el, layers = read_message(_read(args.input))
    layers, _ = _split_layers(layers)
    order = args.order or _infer_order(layers)
    _write(args.out, f"{hybrid_decrypt(Ciphertext(el, layers), hkey, order)}\n")
    return EXIT_OK


def cmd_code_wrap(args) -> int:
    el, _ = read_message(_read(args.input))
    if not isinstance(el, GroupRingElement):
        raise CliError("only group ring elements can be coded")
    code = HammingCode(args.r)
    if args.mode == "coeff":
        wire = coeff_code_wrap(el, code).wire()
    else:
        if el.ring.modulus != 2:
            raise CliError("bitstream coding needs a ring Zmod 2")
        wire = bitstream_code_wrap(el.coeffs, code).wire()
    _write(args.out, wire + "\n")
    return EXIT_OK


def parse_wire(text: str):
    """Parse ``coded r=<r> <int> ...`` or ``bits <01-string>``."""
    tokens = text.split()
    if len(tokens) >= 2 and tokens[0] == "coded" and tokens[1].startswith("r="):
        try:
            return CodedCoefficients(int(tokens[1][2:]), tuple(int(t) for t in tokens[2:]))
        except ValueError as exc:
            raise FormatError(f"bad coded line: {exc}") from None
    if len(tokens) in (1, 2) and tokens[0] == "bits":
        bits = tokens[1] if len(tokens) == 2 else ""
        if set(bits) - {"0", "1"}:
            raise FormatError("a bits line holds only 0 and 1")
        return CodedBits(tuple(int(b) for b in bits), len(bits))
    raise FormatError("expected a 'coded r=...' or 'bits ...' line")


def cmd_code_unwrap(args) -> int:
    group, ring = parse_group(args.group), parse_ring(args.ring)
    wire = parse_wire(_read(args.input))
    code = HammingCode(args.r)
    if isinstance(wire, CodedCoefficients):
        if len(wire.words) != group.order:
            raise CliError(f"{len(wire.words)} codewords for a group of order {group.order}")
        el, fixed = coeff_code_unwrap(wire, code, group, ring)
    else:
        if ring.modulus != 2:
            raise CliError("bitstream coding needs a ring Zmod 2")
        bits, fixed = bitstream_code_unwrap(CodedBits(wire.bits, group.order), code)
        el = GroupRingElement.from_coeffs(group, bits, ring)
    _write(args.out, write_message(el))
    print(f"corrected {fixed} codeword(s)", file=sys.stderr)
    return EXIT_OK


def cmd_attack(args) -> int:
    pub = read_key(_read(args.pub)).public
    if not isinstance(pub, PublicKey):
        raise CliError("the Euclid attack needs the group order; disguised keys hide it")
    targets = [("u", pub.u)] + ([("v", pub.v)] if pub.v is not None else [])
    status = EXIT_OK
    out = []
    for name, el in targets:
        report = euclid_attack(el)
        print(f"{name}: target={report.target} success={report.success} "
              f"elapsed_ms={report.elapsed_ms:.3f} notes={report.notes}")
        if report.success:
            out.append(write_message(report.recovered))
        else:
            status = EXIT_ATTACK
    if args.out and out:
        _write(args.out, "".join(out))
    return status


def cmd_attack_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    rows = attack_benchmark(sizes, parse_ring(args.ring), args.trials, seed=args.seed)
    _write(args.out, bench_csv(rows))
    return EXIT_OK


def cmd_demo(args) -> int:
    which = args.examples or None
    for k in which or ():
        if k not in EXAMPLES:
            raise CliError(f"examples are numbered 1..{len(EXAMPLES)}")
    return EXIT_OK if run_demo(which) else EXIT_MISMATCH


# -- argument parsing ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grunits", description="Group ring unit encryption toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a unit key pair (<out>.pub, <out>.key)")
    p.add_argument("--group", help='e.g. "cyclic 16", "sym 4", "product cyclic 2;cyclic 3"')
    p.add_argument("--ring", default="Z", help='"Z" or "Zmod <m>"')
    p.add_argument("--kind", default="bass", choices=["bass", "bicyclic", "trial", "binomial", "random", "product"])
    p.add_argument("--i", type=int, help="Bass parameter")
    p.add_argument("--a", help="bicyclic: permutation a; binomial: constant term")
    p.add_argument("--b", help="bicyclic: permutation b; binomial: coefficient of g^shift")
    p.add_argument("--shift", type=int, default=1, help="binomial exponent")
    p.add_argument("--coeffs", help="trial unit coefficients")
    p.add_argument("--from", dest="from_keys", help="comma-separated private key files to multiply")
    p.add_argument("--side", choices=["right", "left", "two-sided"])
    p.add_argument("--left-key", help="private key file supplying the left unit of a two-sided key")
    p.add_argument("--power", type=int)
    p.add_argument("--disguise", type=int, metavar="S", help="pad the public key to length S")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output name without extension")
    p.set_defaults(func=cmd_keygen)

    for name, func, key_help in (("encrypt", cmd_encrypt, "public key file"),
                                 ("decrypt", cmd_decrypt, "private key file")):
        p = sub.add_parser(name)
        p.add_argument("--key", required=True, help=key_help)
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--out")
        p.add_argument("--base", default="10", help='digit base, or "raw" for integer sequences')
        p.set_defaults(func=func)

    p = sub.add_parser("sign")
    p.add_argument("--key", required=True, help="signer's private key file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--base", default="10")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify")
    p.add_argument("--key", required=True, help="signer's public key file")
    p.add_argument("--sig", required=True)
    p.add_argument("--in", dest="input", required=True, help="claimed message")
    p.add_argument("--base", default="10")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rsa-keygen")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--e", type=int, default=65537)
    p.add_argument("--unit", help="private unit key file to bundle into a hybrid key")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_rsa_keygen)

    for name, func in (("hybrid-encrypt", cmd_hybrid_encrypt), ("hybrid-decrypt", cmd_hybrid_decrypt)):
        p = sub.add_parser(name)
        p.add_argument("--key", required=True, help="hybrid key file (RSAKEY then GRKEY)")
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--out")
        p.add_argument("--base", type=int, default=10)
        p.add_argument("--order", choices=HYBRID_ORDERS,
                       default="rsa-then-unit" if name == "hybrid-encrypt" else None)
        p.set_defaults(func=func)

    p = sub.add_parser("code-wrap")
    p.add_argument("--in", dest="input", required=True, help="GRMSG file")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--mode", choices=["coeff", "bits"], default="coeff")
    p.add_argument("--out")
    p.set_defaults(func=cmd_code_wrap)

    p = sub.add_parser("code-unwrap")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--group", required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_code_unwrap)

    p = sub.add_parser("attack")
    p.add_argument("--pub", required=True)
    p.add_argument("--out", help="write the recovered inverse here")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("attack-bench")
    p.add_argument("--sizes", default="16,64,256")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--ring", default="Zmod 97")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_attack_bench)

    p = sub.add_parser("demo", help="reproduce the worked examples")
    p.add_argument("examples", nargs="*", type=int)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        message, code = str(exc), exc.code
    except (DigitRangeError, MismatchError, VerificationError) as exc:
        message, code = str(exc), EXIT_MISMATCH
    except (ValueError, ArithmeticError, GroupRingError, OSError) as exc:
        message, code = str(exc), EXIT_INVALID
    print(f"grunits: error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
