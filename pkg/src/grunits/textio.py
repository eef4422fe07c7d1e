"""Line-based UTF-8 formats for keys, messages and coded data.

Public key::

    GRKEY v1
    group cyclic 16
    ring Z
    side right
    coeffs 25 18 -18 ...

Sparse elements use ``sparse <t>`` followed by ``t`` lines
``term <coeff> <element>``; elements are written ``g^k`` (cyclic),
``p:2,0,1`` (permutations) or factor descriptors joined by ``|``
(direct products).  A two-sided key also carries its left unit with the
tag ``left-coeffs`` / ``left-sparse``.  Private key files add
``factors <k>`` (and ``left-factors <k>``) followed by element blocks in
application order.  Disguised public keys replace the ``group`` line by
``extlen <s>``; the private file keeps both.

Integer coefficients are written in signed form, residues mod m in
canonical form, so files are byte-identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .coeffs import CoefficientRing, parse_ring
from .errors import FormatError
from .groupring import ExtendedElement, GroupRingElement
from .groups import CyclicGroup, DirectProduct, Group, Permutation, PermutationGroup, parse_group
from .rsa import RsaKey
from .units import DisguisedKey, PrivateKey, PublicKey, UnitKey


# -- element descriptors -------------------------------------------------


def element_descriptor(group: Group, x) -> str:
    if isinstance(group, CyclicGroup):
        return f"g^{x}"
    if isinstance(group, PermutationGroup):
        return x.descriptor()
    if isinstance(group, DirectProduct):
        return "|".join(element_descriptor(f, y) for f, y in zip(group.factors, x))
    raise FormatError(f"no descriptor syntax for {group.describe()}")


def parse_element(group: Group, text: str):
    try:
        if isinstance(group, CyclicGroup):
            if not text.startswith("g^"):
                raise ValueError("expected g^k")
            k = int(text[2:])
            if not 0 <= k < group.order:
                raise ValueError(f"exponent {k} out of range")
            return k
        if isinstance(group, PermutationGroup):
            p = Permutation.parse(text)
            if p.degree != group.degree:
                raise ValueError(f"degree {p.degree} does not match {group.degree}")
            return p
        if isinstance(group, DirectProduct):
            parts = text.split("|")
            if len(parts) != len(group.factors):
                raise ValueError("wrong number of factors")
            return tuple(parse_element(f, p) for f, p in zip(group.factors, parts))
    except ValueError as exc:
        raise FormatError(f"bad element {text!r}: {exc}") from None
    raise FormatError(f"no descriptor syntax for {group.describe()}")


def _coeff_text(ring: CoefficientRing, c: int) -> str:
    return str(ring.signed(c) if ring.is_integers else c)


def element_lines(el: GroupRingElement, tag: str = "") -> list[str]:
    ring = el.ring
    if el.group.is_cyclic or el.is_dense:
        return [f"{tag}coeffs " + " ".join(_coeff_text(ring, c) for c in el.coeffs)]
    items = sorted(el.terms.items(), key=lambda t: element_descriptor(el.group, t[0]))
    lines = [f"{tag}sparse {len(items)}"]
    lines += [f"term {_coeff_text(ring, c)} {element_descriptor(el.group, x)}" for x, c in items]
    return lines


class _Lines:
    def __init__(self, text: str):
        self._lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        self._i = 0

    def peek(self) -> Optional[str]:
        return self._lines[self._i] if self._i < len(self._lines) else None

    def next(self) -> str:
        line = self.peek()
        if line is None:
            raise FormatError("unexpected end of file")
        self._i += 1
        return line

    def expect(self, keyword: str) -> str:
        line = self.next()
        head, _, rest = line.partition(" ")
        if head != keyword:
            raise FormatError(f"expected {keyword!r}, got {line!r}")
        return rest

    def optional(self, keyword: str) -> Optional[str]:
        line = self.peek()
        if line is not None and line.partition(" ")[0] == keyword:
            self._i += 1
            return line.partition(" ")[2]
        return None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split()]
    except ValueError as exc:
        raise FormatError(f"bad integer list: {exc}") from None


def read_element(lines: _Lines, group: Group, ring: CoefficientRing, tag: str = "") -> GroupRingElement:
    line = lines.next()
    head, _, rest = line.partition(" ")
    if head == f"{tag}coeffs":
        vals = _ints(rest)
        if len(vals) != group.order:
            raise FormatError(f"expected {group.order} coefficients, got {len(vals)}")
        return GroupRingElement(group, ring, dense=vals)
    if head == f"{tag}sparse":
        terms = []
        for _ in range(int(rest)):
            parts = lines.expect("term").split()
            if len(parts) != 2:
                raise FormatError(f"bad term line {parts!r}")
            terms.append((int(parts[0]), parse_element(group, parts[1])))
        return GroupRingElement.from_terms(group, terms, ring)
    raise FormatError(f"expected an element block, got {line!r}")


# -- keys ----------------------------------------------------------------


def _header(group_line: str, ring: CoefficientRing, side: str) -> list[str]:
    return ["GRKEY v1", group_line, f"ring {ring.describe()}", f"side {side}"]


def write_public_key(key: Union[UnitKey, PublicKey, DisguisedKey]) -> str:
    if isinstance(key, DisguisedKey):
        pub = key.public()
        lines = _header(f"extlen {pub.length}", pub.ring, "right")
        lines.append("coeffs " + " ".join(_coeff_text(pub.ring, c) for c in pub.coeffs))
        return "\n".join(lines) + "\n"
    lines = _header(f"group {key.group.describe()}", key.ring, key.side)
    if key.v is not None:
        lines += element_lines(key.v, "left-")
    lines += element_lines(key.u)
    return "\n".join(lines) + "\n"


def write_private_key(key: Union[UnitKey, PublicKey, DisguisedKey], priv: PrivateKey) -> str:
    if isinstance(key, DisguisedKey):
        pub = key.public()
        lines = _header(f"group {key.base.group.describe()}", pub.ring, "right")
        lines.append(f"extlen {pub.length}")
        lines.append("coeffs " + " ".join(_coeff_text(pub.ring, c) for c in pub.coeffs))
    else:
        lines = write_public_key(key).splitlines()
    if priv.left_factors:
        lines.append(f"left-factors {len(priv.left_factors)}")
        for f in priv.left_factors:
            lines += element_lines(f)
    lines.append(f"factors {len(priv.factors)}")
    for f in priv.factors:
        lines += element_lines(f)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class KeyFile:
    """A parsed key file: public part, and the private chain when present."""

    public: Union[PublicKey, ExtendedElement]
    private: Optional[PrivateKey] = None


def read_key(text: str) -> KeyFile:
    lines = _Lines(text)
    if lines.next() != "GRKEY v1":
        raise FormatError("not a GRKEY v1 file")
    group = None
    extlen = None
    line = lines.next()
    head, _, rest = line.partition(" ")
    if head == "group":
        group = parse_group(rest)
    elif head == "extlen":
        extlen = int(rest)
    else:
        raise FormatError(f"expected group or extlen, got {line!r}")
    ring = parse_ring(lines.expect("ring"))
    side = lines.expect("side")
    if side not in ("right", "left", "two-sided"):
        raise FormatError(f"bad side {side!r}")
    if group is not None and extlen is None:
        extlen_text = lines.optional("extlen")
        extlen = int(extlen_text) if extlen_text is not None else None
    if extlen is not None:
        vals = _ints(lines.expect("coeffs"))
        if len(vals) != extlen:
            raise FormatError(f"expected {extlen} coefficients, got {len(vals)}")
        n = group.order if group is not None else None
        public = ExtendedElement(ring, tuple(vals), n)
        private = None
        count = lines.optional("factors")
        if count is not None:
            if group is None:
                raise FormatError("a disguised private key must name its group")
            factors = tuple(read_element(lines, group, ring) for _ in range(int(count)))
            private = PrivateKey(factors, "right", fold_order=n)
        return KeyFile(public.public() if private is None else public, private)
    v = None
    if side == "two-sided":
        v = read_element(lines, group, ring, "left-")
    u = read_element(lines, group, ring)
    public = PublicKey(u, side, v)
    left: list = []
    count = lines.optional("left-factors")
    if count is not None:
        left = [read_element(lines, group, ring) for _ in range(int(count))]
    count = lines.optional("factors")
    if count is None:
        return KeyFile(public)
    factors = [read_element(lines, group, ring) for _ in range(int(count))]
    return KeyFile(public, PrivateKey(tuple(factors), side, tuple(left)))


# -- messages ------------------------------------------------------------


def write_message(el: Union[GroupRingElement, ExtendedElement], layers: tuple = ()) -> str:
    lines = ["GRMSG v1"]
    if isinstance(el, ExtendedElement):
        lines += [f"extlen {el.length}", f"ring {el.ring.describe()}",
                  "coeffs " + " ".join(_coeff_text(el.ring, c) for c in el.coeffs)]
    else:
        lines += [f"group {el.group.describe()}", f"ring {el.ring.describe()}"]
        lines += element_lines(el)
    if layers:
        lines.append("layers " + " ".join(layers))
    return "\n".join(lines) + "\n"


def read_message(text: str) -> tuple[Union[GroupRingElement, ExtendedElement], tuple]:
    lines = _Lines(text)
    if lines.next() != "GRMSG v1":
        raise FormatError("not a GRMSG v1 file")
    line = lines.next()
    head, _, rest = line.partition(" ")
    ring = parse_ring(lines.expect("ring"))
    if head == "extlen":
        vals = _ints(lines.expect("coeffs"))
        if len(vals) != int(rest):
            raise FormatError(f"expected {rest} coefficients, got {len(vals)}")
        el = ExtendedElement(ring, tuple(vals))
    elif head == "group":
        el = read_element(lines, parse_group(rest), ring)
    else:
        raise FormatError(f"expected group or extlen, got {line!r}")
    layers = lines.optional("layers")
    return el, tuple(layers.split()) if layers else ()


# -- RSA -----------------------------------------------------------------


def write_rsa_key(key: RsaKey, private: bool = False) -> str:
    lines = ["RSAKEY v1", f"n {key.n}", f"e {key.e}"]
    if private:
        if key.d is None:
            raise ValueError("no private exponent to write")
        lines.append(f"d {key.d}")
        if key.p is not None:
            lines += [f"p {key.p}", f"q {key.q}"]
    return "\n".join(lines) + "\n"


def read_rsa_key(text: str) -> RsaKey:
    """Read the first RSAKEY section of ``text`` (a hybrid file may follow it)."""
    lines = _Lines(text)
    if lines.next() != "RSAKEY v1":
        raise FormatError("not an RSAKEY v1 file")
    fields = {}
    while lines.peek() is not None and lines.peek().partition(" ")[0] in ("n", "e", "d", "p", "q"):
        k, _, v = lines.next().partition(" ")
        fields[k] = int(v)
    if "n" not in fields or "e" not in fields:
        raise FormatError("RSAKEY needs n and e")
    return RsaKey(fields["n"], fields["e"], fields.get("d"), fields.get("p"), fields.get("q"))


def split_hybrid(text: str) -> tuple[str, str]:
    """Split a hybrid key file into its RSAKEY and GRKEY sections."""
    idx = text.find("GRKEY v1")
    if not text.lstrip().startswith("RSAKEY v1") or idx < 0:
        raise FormatError("a hybrid key file is an RSAKEY section followed by a GRKEY section")
    return text[:idx], text[idx:]
