"""Exception types shared across the package."""


class PadicKasError(Exception):
    """Base class for every error raised by this library."""


class NonPrimeModulus(PadicKasError, ValueError):
    """The modulus p is not a prime number."""


class DigitOutOfRange(PadicKasError, ValueError):
    """A base-p digit lies outside [0, p-1]."""


class PrecisionMismatch(PadicKasError, ValueError):
    """Operands disagree on digit precision or encoding parameters."""


class DimensionMismatch(PadicKasError, ValueError):
    """Operands disagree on arity or coordinate count."""


class InvalidCantorDigit(PadicKasError, ValueError):
    """A base-q digit is outside the allowed Cantor digit set."""


class ArityMismatch(PadicKasError, ValueError):
    """The number of parts does not match the declared arity."""


class IndexOutOfRange(PadicKasError, IndexError):
    """A stream index k is outside 0..n-1."""


class CodomainMismatch(PadicKasError, ValueError):
    """A cylinder function has the wrong codomain for the requested construction."""


class DomainViolation(PadicKasError, ValueError):
    """An evaluation point lies outside the function's domain."""


class ConfigError(PadicKasError, ValueError):
    """A run configuration field is invalid."""


class TableFormatError(PadicKasError, ValueError):
    """A function-table file or mapping is malformed."""


class SizeLimitExceeded(PadicKasError, ValueError):
    """An enumeration request exceeds the configured size limit."""
