"""Univariate representatives for cylinder functions of several p-adic variables.

A level-K cylinder function f on Z_p^n (real- or p-adic-valued) factors
through a single function of one variable:

* real codomain: f(X) = g(s(X)) where s packs the coordinates into one value
  of the Cantor-like set via digit interleaving of the base-q encodings, and
  g is a function on [0,1] given by an exact table on the level-nK codec
  intervals plus linear interpolation across the complementary gaps (an
  explicit, testable extension of the table off the codec image);
* p-adic codomain: f(X) = h(z(X)) where z is the base-p digit interleave and
  h is a table over all nK-digit prefixes.

Both identities are exact at precision K for every input, never approximate.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Mapping, Union

from .cantor import CantorValue, cantor_to_rational
from .core import PadicPoint, PadicScalar, TruncatedPadicInt, is_prime, padic_add, padic_norm
from .errors import (
    CodomainMismatch,
    ConfigError,
    DimensionMismatch,
    DomainViolation,
    NonPrimeModulus,
    PrecisionMismatch,
    TableFormatError,
)
from .interleave import interleave

__all__ = [
    "REAL",
    "PADIC",
    "BUILTIN_NAMES",
    "CylinderFunction",
    "GFunction",
    "HFunction",
    "WEIGHTS_PROOF",
    "WEIGHTS_PAPER",
    "build_g",
    "eval_g",
    "superpose1",
    "build_h",
    "h_value",
    "superpose2",
]

REAL = "real"
PADIC = "padic"

WEIGHTS_PROOF = "proof"
WEIGHTS_PAPER = "paper"

# Builtin selector names; K stands for a 1-based coordinate index.
BUILTIN_NAMES = ("zero", "proj-K", "padic-sum", "norm-K", "norm-product", "digit0-K")

TableKey = tuple
TableValue = Union[float, TruncatedPadicInt]


class CylinderFunction:
    """A level-K locally constant function on n-tuples of p-adic integers.

    The body is either a total table over all p**(n*K) digit-tuples or a
    callable; builtins cover the common test functions.  Calling the object
    with a :class:`PadicPoint` evaluates it.
    """

    __slots__ = ("p", "n", "K", "codomain", "name", "table", "_fn")

    def __init__(self, p, n, K, codomain, fn, name, table=None):
        if not is_prime(p):
            raise NonPrimeModulus(f"modulus {p} is not prime")
        if n < 1:
            raise DimensionMismatch(f"arity must be >= 1, got {n}")
        if K < 1:
            raise ValueError(f"level K must be >= 1, got {K}")
        if codomain not in (REAL, PADIC):
            raise CodomainMismatch(f"unknown codomain {codomain!r}")
        self.p = p
        self.n = n
        self.K = K
        self.codomain = codomain
        self.name = name
        self.table = table
        self._fn = fn

    def __repr__(self):
        return (
            f"CylinderFunction({self.name!r}, p={self.p}, n={self.n}, "
            f"K={self.K}, codomain={self.codomain!r})"
        )

    def __call__(self, X: PadicPoint) -> TableValue:
        if X.n != self.n:
            raise DimensionMismatch(f"point has n={X.n}, function expects {self.n}")
        for c in X.coords:
            if c.p != self.p or c.K != self.K:
                raise PrecisionMismatch(
                    f"coordinate ({c.p}, K={c.K}) does not match "
                    f"({self.p}, K={self.K})"
                )
        return self._fn(X)

    @classmethod
    def from_builtin(cls, name, p, n, K, codomain=None):
        """Resolve a builtin by name.

        ``zero`` adapts to the requested codomain (real by default); the
        others have a fixed codomain and reject a conflicting request.
        """
        fixed, fn = _resolve_builtin(name, p, n, K, codomain)
        if codomain is not None and codomain != fixed:
            raise CodomainMismatch(
                f"builtin {name!r} has codomain {fixed!r}, not {codomain!r}"
            )
        return cls(p, n, K, fixed, fn, name)

    @classmethod
    def from_table(cls, p, n, K, codomain, entries: Mapping[TableKey, TableValue], name="table"):
        """Build from a total mapping digit-tuple -> value.

        Keys are n-tuples of little-endian K-digit tuples.  The mapping must
        cover all p**(n*K) inputs; real values must be finite, p-adic values
        must share p and K.
        """
        table = {}
        for key, value in entries.items():
            table[_check_key(key, p, n, K)] = _check_value(value, codomain, p, K)
        if len(table) != p ** (n * K):
            raise TableFormatError(
                f"table has {len(table)} entries, expected {p ** (n * K)}"
            )

        def fn(X, _table=table):
            return _table[tuple(c.digits for c in X.coords)]

        return cls(p, n, K, codomain, fn, name, table=table)

    @classmethod
    def from_callable(cls, p, n, K, codomain, fn, name="<callable>"):
        """Wrap an arbitrary evaluator; the caller vouches for cylinder-ness."""
        return cls(p, n, K, codomain, fn, name)

    def lift(self, K_new: int) -> "CylinderFunction":
        """The same function viewed at a finer level: new digits are ignored."""
        if K_new < self.K:
            raise ValueError(f"lift target {K_new} is below current level {self.K}")
        if K_new == self.K:
            return self
        base = self

        def fn(X):
            cut = PadicPoint(
                X.n,
                tuple(
                    TruncatedPadicInt(c.p, base.K, c.digits[: base.K])
                    for c in X.coords
                ),
            )
            return base(cut)

        return CylinderFunction(
            self.p, self.n, K_new, self.codomain, fn, f"{self.name}@K{K_new}"
        )


def _check_key(key, p, n, K):
    key = tuple(tuple(int(d) for d in coord) for coord in key)
    if len(key) != n:
        raise TableFormatError(f"key {key} has {len(key)} coordinates, expected {n}")
    for coord in key:
        if len(coord) != K:
            raise TableFormatError(f"key {key} has a {len(coord)}-digit coordinate, expected {K}")
        for d in coord:
            if d < 0 or d >= p:
                raise TableFormatError(f"key {key} digit {d} not in [0, {p - 1}]")
    return key


def _check_value(value, codomain, p, K):
    if codomain == REAL:
        v = float(value)
        if not math.isfinite(v):
            raise TableFormatError(f"real table value {value!r} is not finite")
        return v
    if not isinstance(value, TruncatedPadicInt):
        raise TableFormatError(f"p-adic table value {value!r} is not a TruncatedPadicInt")
    if value.p != p or value.K != K:
        raise TableFormatError(
            f"p-adic table value has (p={value.p}, K={value.K}), expected (p={p}, K={K})"
        )
    return value


def _coord_index(name, prefix, n):
    k = name[len(prefix):]
    try:
        k = int(k)
    except ValueError:
        raise ConfigError(f"bad coordinate index in builtin {name!r}") from None
    if k < 1 or k > n:
        raise ConfigError(f"builtin {name!r} indexes coordinate {k}, arity is {n}")
    return k - 1


def _resolve_builtin(name, p, n, K, codomain):
    if name == "zero":
        cod = codomain or REAL
        if cod == REAL:
            return REAL, lambda X: 0.0
        zero = TruncatedPadicInt(p, K, (0,) * K)
        return PADIC, lambda X: zero
    if name == "padic-sum":
        return PADIC, lambda X: reduce(padic_add, X.coords)
    if name == "norm-product":
        return REAL, lambda X: float(
            reduce(lambda a, b: a * b, (padic_norm(c) for c in X.coords))
        )
    if name.startswith("proj-"):
        k = _coord_index(name, "proj-", n)
        return PADIC, lambda X: X.coords[k]
    if name.startswith("norm-"):
        k = _coord_index(name, "norm-", n)
        return REAL, lambda X: float(padic_norm(X.coords[k]))
    if name.startswith("digit0-"):
        k = _coord_index(name, "digit0-", n)
        return REAL, lambda X: float(X.coords[k].digits[0])
    raise ConfigError(f"unknown builtin function {name!r}")


class GFunction:
    """The univariate representative of a real-valued cylinder function.

    Holds the exact value table over all p**L valid level-L digit prefixes
    (L = n*K) and the linear gap rule that extends it to a continuous
    function on [0,1].
    """

    __slots__ = ("p", "n", "K", "q", "L", "width", "table", "_lefts", "_values", "_gaps", "_gap_lefts")

    def __init__(self, p, n, K, q, L, width, table, lefts, values, gaps):
        self.p = p
        self.n = n
        self.K = K
        self.q = q
        self.L = L
        self.width = width
        self.table = table
        self._lefts = lefts
        self._values = values
        self._gaps = gaps
        self._gap_lefts = [g[0] for g in gaps]

    def __repr__(self):
        return f"GFunction(p={self.p}, n={self.n}, K={self.K}, intervals={len(self.table)})"

    def gaps(self):
        """List of (a, b, value_at_a, value_at_b) for every complementary gap."""
        return list(self._gaps)


def build_g(f: CylinderFunction) -> GFunction:
    """Tabulate f over every packed digit prefix and attach the gap rule.

    The table key for input (x_1..x_n) is the interleaved base-q digit
    vector whose position n*j+i carries n * (x_{i+1})_j; its left endpoint
    is the packed value at which :func:`superpose1` will evaluate.
    """
    if f.codomain != REAL:
        raise CodomainMismatch(f"build_g needs a real-valued function, got {f.codomain!r}")
    p, n, K = f.p, f.n, f.K
    q = n * (p - 1) + 1
    L = n * K
    allowed = tuple(range(0, n * (p - 1) + 1, n))
    denom = q**L
    width = Fraction(1, denom)
    table = {}
    lefts = []
    values = []
    for key in product(allowed, repeat=L):
        coords = tuple(
            TruncatedPadicInt(p, K, tuple(d // n for d in key[k::n])) for k in range(n)
        )
        value = float(f(PadicPoint(n, coords)))
        acc = 0
        for d in key:
            acc = acc * q + d
        table[key] = value
        lefts.append(Fraction(acc, denom))
        values.append(value)
    gaps = []
    for i in range(len(lefts) - 1):
        a = lefts[i] + width
        b = lefts[i + 1]
        if a < b:
            gaps.append((a, b, values[i], values[i + 1]))
    return GFunction(p, n, K, q, L, width, table, lefts, values, gaps)


def eval_g(G: GFunction, t) -> float:
    """Evaluate the extended function at a rational t in [0,1].

    Inside a level-L codec interval the stored table value is returned
    unchanged; strictly inside a gap the two neighbouring values are
    interpolated linearly, with the blend computed in exact rational
    arithmetic and rounded to float once.
    """
    t = Fraction(t)
    if t < 0 or t > 1:
        raise DomainViolation(f"{t} is outside [0, 1]")
    gi = bisect_right(G._gap_lefts, t) - 1
    if gi >= 0:
        a, b, va, vb = G._gaps[gi]
        if a < t < b:
            theta = (t - a) / (b - a)
            return float(Fraction(va) + (Fraction(vb) - Fraction(va)) * theta)
    j = bisect_right(G._lefts, t) - 1
    if j < 0 or t > G._lefts[j] + G.width:
        raise DomainViolation(f"{t} lies in no interval and no gap")  # unreachable
    return G._values[j]


def superpose1(G: GFunction, X: PadicPoint) -> float:
    """Pack X into one Cantor-set value and evaluate the representative.

    The packed value s places n * (x_{i+1})_j at base-q position n*j+i,
    i.e. coordinate i+1 enters with weight q**(-i).  Exactly reproduces the
    originating f(X) for every X.
    """
    if X.n != G.n:
        raise DimensionMismatch(f"point has n={X.n}, expected {G.n}")
    for c in X.coords:
        if c.p != G.p or c.K != G.K:
            raise PrecisionMismatch(
                f"coordinate ({c.p}, K={c.K}) does not match ({G.p}, K={G.K})"
            )
    n = G.n
    key = tuple(n * X.coords[i].digits[j] for j in range(G.K) for i in range(n))
    s = CantorValue(G.p, n, key)
    return eval_g(G, cantor_to_rational(s))


class HFunction:
    """The univariate representative of a p-adic-valued cylinder function.

    A total table from digit prefixes of the interleaved variable to scalar
    values.  With the ``proof`` weight convention keys have n*K digits and
    the domain is all of Z/p^(nK); with ``paper`` the variable is shifted by
    one digit and the domain is the multiples of p.
    """

    __slots__ = ("p", "n", "K", "weights", "table")

    def __init__(self, p, n, K, weights, table):
        self.p = p
        self.n = n
        self.K = K
        self.weights = weights
        self.table = table

    def __repr__(self):
        return (
            f"HFunction(p={self.p}, n={self.n}, K={self.K}, "
            f"weights={self.weights!r}, entries={len(self.table)})"
        )

    @property
    def key_length(self) -> int:
        return self.n * self.K + (1 if self.weights == WEIGHTS_PAPER else 0)


def build_h(f: CylinderFunction, weights: str = WEIGHTS_PROOF) -> HFunction:
    """Tabulate f against the digit de-interleave of every nK-digit prefix."""
    if f.codomain != PADIC:
        raise CodomainMismatch(f"build_h needs a p-adic-valued function, got {f.codomain!r}")
    if weights not in (WEIGHTS_PROOF, WEIGHTS_PAPER):
        raise ConfigError(f"unknown weight convention {weights!r}")
    p, n, K = f.p, f.n, f.K
    table = {}
    for zdig in product(range(p), repeat=n * K):
        coords = tuple(TruncatedPadicInt(p, K, zdig[k::n]) for k in range(n))
        value = f(PadicPoint(n, coords))
        if not isinstance(value, TruncatedPadicInt):
            raise CodomainMismatch(
                f"p-adic function returned {type(value).__name__}, expected TruncatedPadicInt"
            )
        key = (0,) + zdig if weights == WEIGHTS_PAPER else zdig
        table[key] = PadicScalar.from_padic_int(value)
    return HFunction(p, n, K, weights, table)


def h_value(H: HFunction, z: TruncatedPadicInt) -> PadicScalar:
    """Evaluate h at a digit prefix of its interleaved variable."""
    if z.p != H.p or z.K != H.key_length:
        raise PrecisionMismatch(
            f"argument has (p={z.p}, K={z.K}), expected (p={H.p}, K={H.key_length})"
        )
    try:
        return H.table[z.digits]
    except KeyError:
        raise DomainViolation(
            f"{format_key(z.digits)} is outside the representative's domain"
        ) from None


def format_key(digits) -> str:
    return ",".join(map(str, digits))


def superpose2(H: HFunction, X: PadicPoint) -> PadicScalar:
    """Interleave X into one variable and look the value up; exact at level K."""
    if X.n != H.n:
        raise DimensionMismatch(f"point has n={X.n}, expected {H.n}")
    for c in X.coords:
        if c.p != H.p or c.K != H.K:
            raise PrecisionMismatch(
                f"coordinate ({c.p}, K={c.K}) does not match ({H.p}, K={H.K})"
            )
    z = interleave(X)
    key = z.value.digits
    if H.weights == WEIGHTS_PAPER:
        key = (0,) + key
    return H.table[key]
