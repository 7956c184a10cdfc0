"""Codec between Z_p and a Cantor-like subset of [0,1], plus digit homeomorphisms.

A truncated p-adic integer with digits x_0..x_{K-1} maps to the base-q number
0.(n*x_0)(n*x_1)... with q = n*(p-1)+1.  Allowed digits are the multiples of n
in [0, n*(p-1)], so distinct inputs land in disjoint closed intervals and the
image is a level-K approximation of a Cantor-like set (for p=2, n=2 it is the
classical middle-thirds set).  ``spread``, ``combine`` and ``extract`` are the
digit-spreading, interleaving and de-interleaving maps used to fold n
coordinates into a single value of the same set.

All digit vectors are exact; rationals appear only at output boundaries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import NamedTuple, Sequence

from .core import TruncatedPadicInt, is_prime
from .errors import (
    ArityMismatch,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidCantorDigit,
    NonPrimeModulus,
    PrecisionMismatch,
)

__all__ = [
    "CantorValue",
    "make_cantor",
    "cantor_encode",
    "cantor_decode",
    "spread",
    "combine",
    "extract",
    "phi_full",
    "cantor_to_rational",
    "interval_left_endpoints",
    "gap_intervals",
    "format_cantor",
    "parse_cantor",
]


class CantorValue(NamedTuple):
    """A number in [0,1] as base-q digits, most significant first.

    ``digits[i]`` is the coefficient of q**(-i-1), q = n*(p-1)+1.  Values
    produced by the codec carry only digits that are multiples of n; the raw
    constructor trusts its arguments and :func:`make_cantor` validates range.
    """

    p: int
    n: int
    digits: tuple

    @property
    def q(self) -> int:
        return self.n * (self.p - 1) + 1

    @property
    def L(self) -> int:
        return len(self.digits)


def make_cantor(digits: Sequence[int], p: int, n: int) -> CantorValue:
    """Build a validated base-q digit vector.

    Digits must lie in [0, n*(p-1)].  Membership in the Cantor-like set
    additionally requires every digit to be a multiple of n; that stronger
    condition is enforced where it matters (:func:`cantor_decode`), so that
    off-set inputs can be represented and rejected with a precise error.
    """
    if not is_prime(p):
        raise NonPrimeModulus(f"modulus {p} is not prime")
    if n < 1:
        raise ArityMismatch(f"arity must be >= 1, got {n}")
    digs = tuple(int(d) for d in digits)
    top = n * (p - 1)
    for i, d in enumerate(digs):
        if d < 0 or d > top:
            raise InvalidCantorDigit(f"digit {d} at index {i} not in [0, {top}]")
    return CantorValue(p, n, digs)


def cantor_encode(x: TruncatedPadicInt, n: int) -> CantorValue:
    """Map digits x_i to base-q digits n*x_i (stride-1 layout, L = K)."""
    if n < 1:
        raise ArityMismatch(f"arity must be >= 1, got {n}")
    return CantorValue(x.p, n, tuple(n * d for d in x.digits))


def cantor_decode(c: CantorValue) -> TruncatedPadicInt:
    """Inverse of :func:`cantor_encode`: digit i of the result is digits[i]/n.

    Raises:
        InvalidCantorDigit: some digit is not a multiple of n, i.e. the value
            is not in the codec image.
    """
    n = c.n
    for i, d in enumerate(c.digits):
        if d % n:
            raise InvalidCantorDigit(
                f"digit {d} at index {i} is not a multiple of {n}"
            )
    return TruncatedPadicInt(c.p, c.L, tuple(d // n for d in c.digits))


def spread(c: CantorValue) -> CantorValue:
    """Move digit i of a stride-1 value to position n*i, zeros elsewhere.

    The output keeps exactly the digits determined by the input:
    L_out = n*(L_in - 1) + 1.
    """
    n = c.n
    if n == 1 or c.L == 0:
        return c
    out = [0] * (n * (c.L - 1) + 1)
    out[::n] = c.digits
    return CantorValue(c.p, n, tuple(out))


def combine(parts: Sequence[CantorValue]) -> CantorValue:
    """Interleave n stride-1 values: output digit n*i+k is parts[k].digits[i].

    Digitwise this equals sum_k q**(-k) * spread(parts[k]); no carries occur
    because every digit is at most q-1.
    """
    parts = tuple(parts)
    if not parts:
        raise ArityMismatch("combine needs at least one part")
    first = parts[0]
    n = first.n
    if len(parts) != n:
        raise ArityMismatch(f"expected {n} parts, got {len(parts)}")
    for c in parts[1:]:
        if c.p != first.p or c.n != n:
            raise DimensionMismatch(
                f"part ({c.p}, n={c.n}) differs from ({first.p}, n={n})"
            )
        if c.L != first.L:
            raise PrecisionMismatch(f"part lengths differ: {c.L} vs {first.L}")
    merged = tuple(d for group in zip(*(c.digits for c in parts)) for d in group)
    return CantorValue(first.p, n, merged)


def extract(z: CantorValue, k: int) -> CantorValue:
    """Take the digits at positions n*i+k; inverse of :func:`combine`."""
    if k < 0 or k >= z.n:
        raise IndexOutOfRange(f"stream index {k} not in [0, {z.n - 1}]")
    return CantorValue(z.p, z.n, z.digits[k :: z.n])


def phi_full(x: TruncatedPadicInt, n: int) -> CantorValue:
    """Spread-encoded form of x: digit at position n*i is n*x_i."""
    return spread(cantor_encode(x, n))


def cantor_to_rational(c: CantorValue) -> Fraction:
    """Exact value sum_i digits[i] * q**(-i-1) as a reduced fraction."""
    q = c.q
    acc = 0
    for d in c.digits:
        acc = acc * q + d
    return Fraction(acc, q**c.L)


def interval_left_endpoints(p: int, n: int, L: int) -> list:
    """Left endpoints of all level-L codec intervals, in increasing order.

    There are p**L intervals, each of width q**(-L); enumeration order of the
    allowed digit tuples (lexicographic) coincides with numeric order.
    """
    if not is_prime(p):
        raise NonPrimeModulus(f"modulus {p} is not prime")
    if n < 1:
        raise ArityMismatch(f"arity must be >= 1, got {n}")
    if L < 1:
        raise ValueError(f"level must be >= 1, got {L}")
    q = n * (p - 1) + 1
    allowed = range(0, n * (p - 1) + 1, n)
    denom = q**L
    lefts = []
    for key in product(allowed, repeat=L):
        acc = 0
        for d in key:
            acc = acc * q + d
        lefts.append(Fraction(acc, denom))
    return lefts


def gap_intervals(p: int, n: int, L: int) -> list:
    """Complementary open intervals of the level-L codec image inside [0,1].

    Returned in increasing order.  For n=1 every base-q digit is allowed and
    the intervals tile [0,1], so there are no gaps.
    """
    if n == 1:
        if not is_prime(p):
            raise NonPrimeModulus(f"modulus {p} is not prime")
        if L < 1:
            raise ValueError(f"level must be >= 1, got {L}")
        return []
    lefts = interval_left_endpoints(p, n, L)
    q = n * (p - 1) + 1
    width = Fraction(1, q**L)
    return [(lefts[i] + width, lefts[i + 1]) for i in range(len(lefts) - 1)]


def format_cantor(c: CantorValue) -> str:
    """Textual form ``q:L:d0,d1,...``, most significant digit first."""
    return f"{c.q}:{c.L}:" + ",".join(map(str, c.digits))


def parse_cantor(text: str, p: int, n: int) -> CantorValue:
    """Parse the textual form produced by :func:`format_cantor`.

    p and n supply the context the base-q form cannot carry on its own; the
    literal's base must equal n*(p-1)+1.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"malformed Cantor literal {text!r}; expected q:L:d0,d1,...")
    try:
        q = int(parts[0])
        L = int(parts[1])
        digits = [int(d) for d in parts[2].split(",")] if parts[2] else []
    except ValueError as exc:
        raise ValueError(f"malformed Cantor literal {text!r}: {exc}") from None
    expected_q = n * (p - 1) + 1
    if q != expected_q:
        raise ValueError(
            f"Cantor literal base {q} does not match q={expected_q} for p={p}, n={n}"
        )
    if len(digits) != L:
        raise ValueError(
            f"Cantor literal {text!r} carries {len(digits)} digits, expected L={L}"
        )
    return make_cantor(digits, p, n)
