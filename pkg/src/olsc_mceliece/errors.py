"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class OlscError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(OlscError, ValueError):
    """Code parameters (q, t, b) violate a construction constraint."""


class NonPrimeOrder(ParameterError):
    pass


class TooManySquares(ParameterError):
    pass


class OrderMismatch(OlscError, ValueError):
    pass


class DimensionMismatch(OlscError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class SingularError(OlscError, ArithmeticError):
    """Matrix has rank below its order over GF(2)."""


class FormatError(OlscError):
    """Malformed serialized key or ciphertext."""


class BadMagic(FormatError):
    pass


class BadVersion(FormatError):
    pass


class BadKind(FormatError):
    pass


class Truncated(FormatError):
    pass


class ParamError(FormatError):
    """Header parameters are illegal or do not match the key in use."""


class NotInvertible(FormatError):
    pass


class NotPermutation(FormatError):
    pass


class FramingError(OlscError):
    """Recovered plaintext framing is inconsistent (wrong key or corrupt data)."""
