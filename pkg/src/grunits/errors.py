"""Exception hierarchy shared by every grunits module."""


class GroupRingError(Exception):
    """Base class for all library errors."""


class MismatchError(GroupRingError, ValueError):
    """Operands live over different groups or coefficient rings."""


class NotInvertible(GroupRingError, ArithmeticError):
    """A coefficient has no multiplicative inverse in its ring."""


class NotAUnit(GroupRingError, ArithmeticError):
    """A group ring element has no two-sided inverse."""


class DigitRangeError(GroupRingError, ValueError):
    """A decoded coefficient is not a valid digit.

    Raised after decryption when the key was wrong or the ciphertext was
    corrupted. This is a sanity check, not authentication.
    """


class VerificationError(GroupRingError):
    """A signature or round-trip check did not reproduce the claimed value."""


class FormatError(GroupRingError, ValueError):
    """A key, message or description string could not be parsed."""
