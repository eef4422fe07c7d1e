"""Coefficient rings: the integers and the integers modulo m.

All coefficient arithmetic in the group ring goes through a
:class:`CoefficientRing`, so elements never need to know which ring
they are over.  Residues are always stored in canonical form, the least
non-negative representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import FormatError, NotInvertible


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)`` and ``g >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class CoefficientRing:
    """``Z`` when ``modulus`` is None, otherwise ``Z/mZ``."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    def canon(self, a: int) -> int:
        a = int(a)
        return a if self.modulus is None else a % self.modulus

    def add(self, a: int, b: int) -> int:
        return self.canon(a + b)

    def sub(self, a: int, b: int) -> int:
        return self.canon(a - b)

    def mul(self, a: int, b: int) -> int:
        return self.canon(a * b)

    def neg(self, a: int) -> int:
        return self.canon(-a)

    def inv(self, a: int) -> int:
        if self.modulus is None:
            if a in (1, -1):
                return a
            raise NotInvertible(f"{a} is not a unit of Z")
        g, x, _ = egcd(a % self.modulus, self.modulus)
        if g != 1:
            raise NotInvertible(f"{a} is not invertible mod {self.modulus} (gcd {g})")
        return x % self.modulus

    def is_unit(self, a: int) -> bool:
        try:
            self.inv(a)
        except NotInvertible:
            return False
        return True

    def signed(self, a: int) -> int:
        """Symmetric representative in (-m/2, m/2], for display only."""
        if self.modulus is None:
            return a
        a %= self.modulus
        return a - self.modulus if 2 * a > self.modulus else a

    def describe(self) -> str:
        return "Z" if self.modulus is None else f"Zmod {self.modulus}"

    def __str__(self) -> str:
        return self.describe()


ZZ = CoefficientRing()


def Zmod(m: int) -> CoefficientRing:
    return CoefficientRing(m)


def parse_ring(text: str) -> CoefficientRing:
    """Parse ``Z`` or ``Zmod <m>``."""
    parts = text.split()
    if parts == ["Z"]:
        return ZZ
    if len(parts) == 2 and parts[0] == "Zmod":
        try:
            return CoefficientRing(int(parts[1]))
        except ValueError as exc:
            raise FormatError(f"bad ring description {text!r}: {exc}") from None
    raise FormatError(f"bad ring description {text!r}")
