"""Group ring elements and their arithmetic.

An element stores its coefficients either densely (a list indexed by the
group's base listing; for cyclic groups index ``k`` is ``g**k``) or
sparsely (a dict from group element to non-zero coefficient).  Both forms
of the same element compare equal.

``gr_mul`` is the reference product straight from the definition.  The
``*`` operator picks the fastest exact route: Kronecker convolution for
large dense cyclic operands, hash accumulation for sparse ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from . import convolution
from .coeffs import CoefficientRing, ZZ
from .errors import MismatchError
from .groups import CyclicGroup, Group


class GroupRingElement:
    """Immutable element of RG."""

    __slots__ = ("group", "ring", "_dense", "_sparse")

    def __init__(self, group: Group, ring: CoefficientRing = ZZ, *,
                 dense: Optional[Sequence[int]] = None,
                 sparse: Optional[Mapping] = None):
        self.group = group
        self.ring = ring
        self._dense = None
        self._sparse = None
        if dense is not None:
            if len(dense) != group.order:
                raise ValueError(f"dense form needs {group.order} coefficients, got {len(dense)}")
            self._dense = [ring.canon(c) for c in dense]
        else:
            out = {}
            for x, c in (sparse or {}).items():
                c = ring.canon(c)
                if c:
                    out[x] = c
            self._sparse = out

    # -- construction ---------------------------------------------------

    @classmethod
    def from_coeffs(cls, group: Group, coeffs: Sequence[int], ring: CoefficientRing = ZZ):
        """Dense element; ``coeffs`` may be shorter than the order (zero-filled)."""
        coeffs = list(coeffs)
        if len(coeffs) > group.order:
            raise ValueError(f"{len(coeffs)} coefficients for a group of order {group.order}")
        return cls(group, ring, dense=coeffs + [0] * (group.order - len(coeffs)))

    @classmethod
    def from_terms(cls, group: Group, terms: Iterable[tuple], ring: CoefficientRing = ZZ):
        """Sparse element from ``(coefficient, group element)`` pairs; repeats add up."""
        acc: dict = {}
        for c, x in terms:
            acc[x] = acc.get(x, 0) + c
        return cls(group, ring, sparse=acc)

    @classmethod
    def zero(cls, group: Group, ring: CoefficientRing = ZZ):
        return cls(group, ring, sparse={})

    @classmethod
    def one(cls, group: Group, ring: CoefficientRing = ZZ):
        return cls(group, ring, sparse={group.identity: 1})

    @classmethod
    def of_element(cls, group: Group, x, ring: CoefficientRing = ZZ, coeff: int = 1):
        return cls(group, ring, sparse={x: coeff})

    # -- views ----------------------------------------------------------

    @property
    def is_dense(self) -> bool:
        return self._dense is not None

    @property
    def coeffs(self) -> list[int]:
        """Dense coefficient list in base listing order (a copy)."""
        if self._dense is not None:
            return list(self._dense)
        out = [0] * self.group.order
        index = self.group.base_index
        for x, c in self._sparse.items():
            out[index(x)] = c
        return out

    @property
    def terms(self) -> dict:
        """Mapping element -> non-zero coefficient (a copy)."""
        if self._sparse is not None:
            return dict(self._sparse)
        elements = self.group.elements
        return {elements[i]: c for i, c in enumerate(self._dense) if c}

    def coefficient(self, x) -> int:
        if self._sparse is not None:
            return self._sparse.get(x, 0)
        return self._dense[self.group.base_index(x)]

    @property
    def support_size(self) -> int:
        if self._sparse is not None:
            return len(self._sparse)
        return sum(1 for c in self._dense if c)

    def to_dense(self) -> "GroupRingElement":
        if self._dense is not None:
            return self
        return GroupRingElement(self.group, self.ring, dense=self.coeffs)

    def to_sparse(self) -> "GroupRingElement":
        if self._sparse is not None:
            return self
        return GroupRingElement(self.group, self.ring, sparse=self.terms)

    def _raw_dense(self) -> list[int]:
        return self._dense if self._dense is not None else self.coeffs

    def is_zero(self) -> bool:
        return self.support_size == 0

    def is_one(self) -> bool:
        return self == GroupRingElement.one(self.group, self.ring)

    def augmentation(self) -> int:
        """Sum of the coefficients."""
        vals = self._dense if self._dense is not None else self._sparse.values()
        return self.ring.canon(sum(vals))

    def signed_coeffs(self) -> list[int]:
        return [self.ring.signed(c) for c in self.coeffs]

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.one(self.group, self.ring) * other
        return gr_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return gr_neg(self)

    def __sub__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.one(self.group, self.ring) * other
        return gr_add(self, gr_neg(other))

    def __rsub__(self, other):
        return gr_neg(self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return gr_scalar(other, self)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return gr_scalar(other, self)
        return NotImplemented

    def __pow__(self, k: int):
        return power(self, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if self.group.structure != other.group.structure or self.ring != other.ring:
            return False
        if self._dense is not None and other._dense is not None:
            return self._dense == other._dense
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.group.structure, self.ring, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"GroupRingElement({self.group.describe()}, {self.ring}, {self})"

    def __str__(self) -> str:
        return format_element(self)


def _check(a: GroupRingElement, b: GroupRingElement):
    if a.group.structure != b.group.structure:
        raise MismatchError(f"group mismatch: {a.group.describe()} vs {b.group.describe()}")
    if a.ring != b.ring:
        raise MismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


def gr_add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    _check(a, b)
    ring = a.ring
    if a.is_dense and b.is_dense:
        return GroupRingElement(a.group, ring, dense=[x + y for x, y in zip(a._dense, b._dense)])
    acc = a.terms
    for x, c in b.terms.items():
        acc[x] = acc.get(x, 0) + c
    out = GroupRingElement(a.group, ring, sparse=acc)
    return out.to_dense() if (a.is_dense or b.is_dense) else out


def gr_neg(a: GroupRingElement) -> GroupRingElement:
    if a.is_dense:
        return GroupRingElement(a.group, a.ring, dense=[-c for c in a._dense])
    return GroupRingElement(a.group, a.ring, sparse={x: -c for x, c in a._sparse.items()})


def gr_scalar(c: int, a: GroupRingElement) -> GroupRingElement:
    if a.is_dense:
        return GroupRingElement(a.group, a.ring, dense=[c * x for x in a._dense])
    return GroupRingElement(a.group, a.ring, sparse={x: c * v for x, v in a._sparse.items()})


def _prefer_dense(a: GroupRingElement, b: GroupRingElement) -> bool:
    g = a.group
    if not g.has_dense_listing:
        return False
    if a.is_dense and b.is_dense:
        return True
    half = g.order / 2
    return a.support_size > half or b.support_size > half


def _sparse_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    mul = a.group.mul
    acc: dict = {}
    bt = list(b.terms.items())
    for x, c in a.terms.items():
        for y, d in bt:
            z = mul(x, y)
            acc[z] = acc.get(z, 0) + c * d
    return GroupRingElement(a.group, a.ring, sparse=acc)


def _dense_mul_generic(a: GroupRingElement, b: GroupRingElement) -> list[int]:
    g = a.group
    elements = g.elements
    index = g.base_index
    mul = g.mul
    out = [0] * g.order
    bd = [(j, y) for j, y in enumerate(b._raw_dense()) if y]
    for i, x in enumerate(a._raw_dense()):
        if x:
            gi = elements[i]
            for j, y in bd:
                out[index(mul(gi, elements[j]))] += x * y
    return out


def gr_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Reference product: ``c_k = sum a_i * b_j`` over ``g_i g_j = g_k``."""
    _check(a, b)
    if not _prefer_dense(a, b):
        return _sparse_mul(a, b)
    if a.group.is_cyclic:
        out = convolution.naive_cyclic(a._raw_dense(), b._raw_dense())
    else:
        out = _dense_mul_generic(a, b)
    return GroupRingElement(a.group, a.ring, dense=out)


def gr_mul_fast_cyclic(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Same result as :func:`gr_mul` for cyclic groups, in quasi-linear time."""
    _check(a, b)
    if not a.group.is_cyclic:
        raise MismatchError("fast convolution needs a cyclic group")
    out = convolution.fast_cyclic(a._raw_dense(), b._raw_dense())
    return GroupRingElement(a.group, a.ring, dense=out)


def multiply(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    _check(a, b)
    if a.group.is_cyclic and _prefer_dense(a, b):
        return gr_mul_fast_cyclic(a, b)
    return gr_mul(a, b)


def power(a: GroupRingElement, k: int) -> GroupRingElement:
    """``a**k`` for ``k >= 0`` by square and multiply."""
    if k < 0:
        raise ValueError("negative powers need an inverse; see invert_cyclic")
    result = GroupRingElement.one(a.group, a.ring)
    if a.is_dense:
        result = result.to_dense()
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def gr_map_ring(a: GroupRingElement, target: CoefficientRing) -> GroupRingElement:
    """Reduce (or lift, by least non-negative representative) every coefficient."""
    if a.is_dense:
        return GroupRingElement(a.group, target, dense=a._dense)
    return GroupRingElement(a.group, target, sparse=a._sparse)


def embed(a: GroupRingElement, group: Group, hom) -> GroupRingElement:
    """Push ``a`` forward along a group map ``hom`` into ``group``."""
    return GroupRingElement.from_terms(group, ((c, hom(x)) for x, c in a.terms.items()), a.ring)


# -- non-reduced (disguised) arithmetic ----------------------------------


@dataclass(frozen=True)
class ExtendedElement:
    """Coefficients on formal powers ``g^0 .. g^(s-1)`` with no reduction.

    ``n`` is the true group order; it is known only to the receiver and is
    ``None`` in anything a sender holds.
    """

    ring: CoefficientRing
    coeffs: tuple
    n: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.ring.canon(c) for c in self.coeffs))
        if self.n is not None and len(self.coeffs) < self.n:
            raise ValueError(f"extended length {len(self.coeffs)} is below the order {self.n}")

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def public(self) -> "ExtendedElement":
        return ExtendedElement(self.ring, self.coeffs)


def _trimmed(coeffs: Sequence[int]) -> list[int]:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def gr_mul_nonreduced(w, k: ExtendedElement) -> ExtendedElement:
    """Plain polynomial product of a message and an extended key.

    ``w`` is a cyclic group ring element, an ExtendedElement or a plain
    coefficient sequence.  Trailing zeros of ``w`` are dropped so the
    result length does not reveal the message's group order.
    """
    if isinstance(w, GroupRingElement):
        if not w.group.is_cyclic:
            raise MismatchError("non-reduced products need a cyclic group")
        if w.ring != k.ring:
            raise MismatchError(f"ring mismatch: {w.ring} vs {k.ring}")
        wc = w._raw_dense()
    elif isinstance(w, ExtendedElement):
        if w.ring != k.ring:
            raise MismatchError(f"ring mismatch: {w.ring} vs {k.ring}")
        wc = w.coeffs
    else:
        wc = [k.ring.canon(c) for c in w]
    wc = _trimmed(wc)
    if not wc:
        return ExtendedElement(k.ring, (0,) * k.length, k.n)
    return ExtendedElement(k.ring, convolution.poly_mul(wc, list(k.coeffs)), k.n)


def gr_fold(x: ExtendedElement, n: Optional[int] = None) -> GroupRingElement:
    """Reduce modulo ``g^n = 1``: coefficient ``i`` collects every ``j = i (mod n)``."""
    n = n if n is not None else x.n
    if n is None:
        raise ValueError("folding needs the group order n")
    return GroupRingElement(CyclicGroup(n), x.ring, dense=convolution.fold(x.coeffs, n))


def pad(u: GroupRingElement, s: int) -> ExtendedElement:
    """View a cyclic element as an extended element of length ``s`` (zero padding)."""
    n = u.group.order
    if s < n:
        raise ValueError(f"extended length {s} is below the order {n}")
    return ExtendedElement(u.ring, tuple(u.coeffs) + (0,) * (s - n), n)


# -- display -------------------------------------------------------------


def _element_name(group: Group, x) -> str:
    if group.is_cyclic:
        return "" if x == 0 else ("g" if x == 1 else f"g^{x}")
    if x == group.identity:
        return ""
    if isinstance(x, tuple):
        return "(" + ",".join(map(str, x)) + ")"
    return str(x)


def format_element(a: GroupRingElement) -> str:
    """Computer-algebra style rendering, e.g. ``1-g+g^3``; signed residues."""
    if a.group.is_cyclic:
        items = [(x, c) for x, c in enumerate(a.coeffs) if c]
    else:
        items = sorted(a.terms.items(), key=lambda t: (t[0] != a.group.identity, str(t[0])))
    if not items:
        return "0"
    parts = []
    for x, c in items:
        c = a.ring.signed(c)
        name = _element_name(a.group, x)
        if not name:
            body = str(abs(c))
        elif abs(c) == 1:
            body = name
        else:
            body = f"{abs(c)}*{name}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    return text + "".join(s + b for s, b in parts[1:])
