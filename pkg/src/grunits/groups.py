"""Finite groups with an indexed element listing.

A group supplies element-level operations (``mul``, ``inv``) on hashable
element values and, when small enough, a dense listing that maps indices
``0 .. order-1`` to elements.  Index 0 is always the identity.

Element values by group kind:

* cyclic(n): the exponent ``k`` standing for ``g**k``, an int in ``[0, n)``
* direct product: a tuple of factor elements
* permutation groups: :class:`Permutation`

An optional listing permutation reorders the listing positions (it is key
material, shared between sender and receiver).  It never changes the group
law or the storage order of group ring coefficients, only which element a
listing position names.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Hashable, Iterable, Optional, Sequence

from .errors import FormatError

#: default bound on the size of an enumerated (dense) listing
DENSE_CAP = 1 << 20


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, .., d-1}`` stored as its image sequence.

    Products compose left to right: ``(p * q)(x) == q(p(x))``.
    """

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for k, x in enumerate(cyc):
                images[x] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        # skips the bijection check; callers guarantee validity
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    def __mul__(self, other: "Permutation") -> "Permutation":
        q = other.images
        return Permutation._trusted(tuple([q[i] for i in self.images]))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def order(self) -> int:
        seen = [False] * len(self.images)
        result = 1
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                length += 1
            result = math.lcm(result, length)
        return result

    def descriptor(self) -> str:
        return "p:" + ",".join(map(str, self.images))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if not text.startswith("p:"):
            raise FormatError(f"bad permutation descriptor {text!r}")
        try:
            return cls(tuple(int(t) for t in text[2:].split(",")))
        except ValueError as exc:
            raise FormatError(f"bad permutation descriptor {text!r}: {exc}") from None

    def __repr__(self) -> str:
        return self.descriptor()


class Group:
    """Base class.  Subclasses implement the element-level law."""

    identity: Hashable

    def __init__(self, listing_permutation: Optional[Sequence[int]] = None,
                 dense_cap: int = DENSE_CAP):
        self.dense_cap = dense_cap
        self._listing = None
        self._index = None
        self.listing_permutation = None
        if listing_permutation is not None:
            perm = tuple(int(i) for i in listing_permutation)
            if sorted(perm) != list(range(self.order)):
                raise ValueError("listing permutation must be a bijection of the indices")
            if perm[0] != 0:
                raise ValueError("listing permutation must keep the identity at index 0")
            if perm != tuple(range(self.order)):
                self.listing_permutation = perm
                self._inverse_perm = tuple(sorted(range(len(perm)), key=perm.__getitem__))

    # -- element level --------------------------------------------------

    @property
    def order(self) -> int:
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    @property
    def is_cyclic(self) -> bool:
        return False

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        result, base = self.identity, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    @property
    def structure(self) -> str:
        """Key identifying the group law, independent of the listing permutation."""
        return self.describe()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Group) and self.structure == other.structure
                and self.listing_permutation == other.listing_permutation)

    def __hash__(self) -> int:
        return hash((self.structure, self.listing_permutation))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.describe()}>"

    # -- dense listing --------------------------------------------------

    @property
    def has_dense_listing(self) -> bool:
        return self.order <= self.dense_cap

    def _enumerate(self) -> list:
        raise NotImplementedError

    @property
    def elements(self) -> list:
        """Base listing: storage order of dense group ring coefficients."""
        if self._listing is None:
            if not self.has_dense_listing:
                raise ValueError(f"group of order {self.order} exceeds the dense cap {self.dense_cap}")
            self._listing = self._enumerate()
            self._index = {x: i for i, x in enumerate(self._listing)}
        return self._listing

    def base_index(self, x) -> int:
        self.elements
        return self._index[x]

    def element(self, i: int):
        """Element named by listing position ``i`` (after the listing permutation)."""
        self._check_index(i)
        if self.listing_permutation is not None:
            i = self.listing_permutation[i]
        return self.elements[i]

    def index(self, x) -> int:
        i = self.base_index(x)
        if self.listing_permutation is not None:
            i = self._inverse_perm[i]
        return i

    def _check_index(self, i: int):
        if not 0 <= i < self.order:
            raise IndexError(f"index {i} out of range for group of order {self.order}")

    def group_mul(self, i: int, j: int) -> int:
        self._check_index(j)
        return self.index(self.mul(self.element(i), self.element(j)))

    def group_inv(self, i: int) -> int:
        return self.index(self.inv(self.element(i)))

    def with_listing(self, perm: Optional[Sequence[int]]) -> "Group":
        raise NotImplementedError


class CyclicGroup(Group):
    def __init__(self, n: int, listing_permutation=None, dense_cap: int = DENSE_CAP):
        if n < 1:
            raise ValueError(f"cyclic group order must be >= 1, got {n}")
        self.n = n
        self.identity = 0
        super().__init__(listing_permutation, dense_cap)

    @property
    def order(self) -> int:
        return self.n

    @property
    def is_cyclic(self) -> bool:
        return True

    def mul(self, x: int, y: int) -> int:
        return (x + y) % self.n

    def inv(self, x: int) -> int:
        return -x % self.n

    def power(self, x: int, k: int) -> int:
        return x * k % self.n

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n

    def describe(self) -> str:
        return f"cyclic {self.n}"

    @property
    def has_dense_listing(self) -> bool:
        return True

    def _enumerate(self) -> list:
        return list(range(self.n))

    def base_index(self, x: int) -> int:
        return x

    def group_mul(self, i: int, j: int) -> int:
        if self.listing_permutation is None:
            self._check_index(i)
            self._check_index(j)
            return (i + j) % self.n
        return super().group_mul(i, j)

    def with_listing(self, perm) -> "CyclicGroup":
        return CyclicGroup(self.n, perm, self.dense_cap)


class DirectProduct(Group):
    def __init__(self, factors: Sequence[Group], listing_permutation=None,
                 dense_cap: int = DENSE_CAP):
        if not factors:
            raise ValueError("direct product needs at least one factor")
        self.factors = tuple(factors)
        self.identity = tuple(f.identity for f in self.factors)
        super().__init__(listing_permutation, dense_cap)

    @property
    def order(self) -> int:
        return math.prod(f.order for f in self.factors)

    def mul(self, x: tuple, y: tuple) -> tuple:
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, x, y))

    def inv(self, x: tuple) -> tuple:
        return tuple(f.inv(a) for f, a in zip(self.factors, x))

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == len(self.factors)
                and all(f.contains(a) for f, a in zip(self.factors, x)))

    def describe(self) -> str:
        return "product " + ";".join(f.describe() for f in self.factors)

    def _enumerate(self) -> list:
        return list(iproduct(*(f.elements for f in self.factors)))

    def with_listing(self, perm) -> "DirectProduct":
        return DirectProduct(self.factors, perm, self.dense_cap)


class PermutationGroup(Group):
    """Subgroup of S_d generated by ``generators``.

    The order is found by breadth-first closure unless ``known_order`` is
    given, so sparse use of a large group (S_10) never enumerates it.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], *,
                 known_order: Optional[int] = None, name: Optional[str] = None,
                 listing_permutation=None, dense_cap: int = DENSE_CAP):
        if degree < 1:
            raise ValueError(f"permutation degree must be >= 1, got {degree}")
        gens = [g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in generators]
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {g} does not have degree {degree}")
        self.degree = degree
        self.generators = tuple(gens)
        self.identity = Permutation.identity(degree)
        self.name = name
        self._order = known_order
        self._closure = None
        super().__init__(listing_permutation, dense_cap)

    @property
    def order(self) -> int:
        if self._order is None:
            self._closure = self._bfs_closure()
            self._order = len(self._closure)
        return self._order

    def _bfs_closure(self) -> list:
        seen = {self.identity}
        listing = [self.identity]
        queue = deque(listing)
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    listing.append(y)
                    queue.append(y)
                    if len(listing) > self.dense_cap:
                        raise ValueError(
                            f"permutation group exceeds the dense cap {self.dense_cap}; "
                            "pass known_order to use it sparsely")
        return listing

    def mul(self, x: Permutation, y: Permutation) -> Permutation:
        return x * y

    def inv(self, x: Permutation) -> Permutation:
        return x.inverse()

    def element_order(self, x: Permutation) -> int:
        return x.order()

    def contains(self, x) -> bool:
        if not isinstance(x, Permutation) or x.degree != self.degree:
            return False
        if self.name and self.name.startswith("sym"):
            return True
        return x in set(self.elements)

    def describe(self) -> str:
        if self.name:
            return self.name
        gens = " ".join(g.descriptor() for g in self.generators)
        return f"perm {self.degree} {gens}"

    def _enumerate(self) -> list:
        if self._closure is None:
            self._closure = self._bfs_closure()
        return self._closure

    def with_listing(self, perm) -> "PermutationGroup":
        return PermutationGroup(self.degree, self.generators, known_order=self._order,
                                name=self.name, listing_permutation=perm,
                                dense_cap=self.dense_cap)


def symmetric_group(d: int, **kwargs) -> PermutationGroup:
    """S_d generated by the transposition (0 1) and the d-cycle (0 1 .. d-1)."""
    if d < 1:
        raise ValueError(f"symmetric group degree must be >= 1, got {d}")
    gens = [Permutation.identity(d)]
    if d >= 2:
        gens = [Permutation.from_cycles(d, [(0, 1)]),
                Permutation.from_cycles(d, [tuple(range(d))])]
    return PermutationGroup(d, gens, known_order=math.factorial(d), name=f"sym {d}", **kwargs)


def group_make(kind: str, *args, **kwargs) -> Group:
    """Construct a group by kind: ``cyclic``, ``product``, ``permutation`` or ``sym``."""
    if kind == "cyclic":
        return CyclicGroup(*args, **kwargs)
    if kind == "product":
        return DirectProduct(*args, **kwargs)
    if kind == "permutation":
        return PermutationGroup(*args, **kwargs)
    if kind == "sym":
        return symmetric_group(*args, **kwargs)
    raise ValueError(f"unknown group kind {kind!r}")


def parse_group(text: str) -> Group:
    """Parse ``cyclic <n>``, ``sym <d>``, ``perm <d> <p:..> ..`` or ``product <group>;<group>...``."""
    text = text.strip()
    head, _, rest = text.partition(" ")
    try:
        if head == "cyclic":
            return CyclicGroup(int(rest))
        if head == "sym":
            return symmetric_group(int(rest))
        if head == "product":
            return DirectProduct([parse_group(part) for part in rest.split(";")])
        if head == "perm":
            degree, *gens = rest.split()
            return PermutationGroup(int(degree), [Permutation.parse(g) for g in gens])
    except ValueError as exc:
        raise FormatError(f"bad group description {text!r}: {exc}") from None
    raise FormatError(f"bad group description {text!r}")
