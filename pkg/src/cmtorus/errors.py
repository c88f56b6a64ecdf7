"""Exception hierarchy.

Every exception raised for bad user data derives from :class:`InputError`, which
carries the name of the offending field so the CLI can report it.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or inconsistent input data."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field

    def __str__(self) -> str:
        msg = super().__str__()
        if self.field:
            return f"{self.field}: {msg}"
        return msg


class AxiomViolation(InputError):
    pass


class OrderTooLarge(InputError):
    pass


class NonDivisorOrder(InputError):
    pass


class RhoInSubgroup(InputError):
    pass


class NotACMType(InputError):
    pass


class SpaceMismatch(InputError):
    pass


class NotAConjugation(InputError):
    pass


class UnsupportedG(InputError):
    pass
