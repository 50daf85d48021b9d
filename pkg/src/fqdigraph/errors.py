"""Exception hierarchy shared by every module.

Input problems subclass :class:`InputError` (CLI exit status 2), resource
guards raise :class:`TooLarge` (exit status 4).
"""

from __future__ import annotations


class FqDigraphError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FqDigraphError, ValueError):
    """Malformed or out-of-contract input."""


class NotPrime(InputError):
    pass


class BadModulus(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class NotADivisor(InputError):
    pass


class SchemaError(InputError):
    pass


class RangeError(InputError):
    pass


class ShapeError(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class EvenCharacteristic(InputError):
    pass


class OrderMismatch(InputError):
    pass


class VertexNotInComponent(InputError):
    pass


class NotSameComponent(InputError):
    pass


class NotStrong(InputError):
    pass


class GroundSetMismatch(InputError):
    pass


class DivisionByZero(FqDigraphError, ZeroDivisionError):
    pass


class TooLarge(FqDigraphError):
    """A configured size cap would be exceeded."""
