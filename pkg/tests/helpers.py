"""Shared test utilities: spaces, random tables, independent digit oracles."""

from fractions import Fraction
from itertools import product

from padic_kas import CylinderFunction, TruncatedPadicInt, PadicPoint, make_padic


def digit_space(p, K):
    """All little-endian digit tuples of length K."""
    return list(product(range(p), repeat=K))


def all_values(p, K):
    """Every truncated p-adic integer at precision K."""
    return [TruncatedPadicInt(p, K, d) for d in digit_space(p, K)]


def all_points(p, n, K):
    """Every point of (Z/p^K)^n."""
    vals = all_values(p, K)
    return [PadicPoint(n, combo) for combo in product(vals, repeat=n)]


def table_keys(p, n, K):
    """All table keys: n-tuples of little-endian K-digit tuples."""
    return list(product(digit_space(p, K), repeat=n))


def random_real_table(p, n, K, rng, name="random-real"):
    entries = {key: rng.random() for key in table_keys(p, n, K)}
    return CylinderFunction.from_table(p, n, K, "real", entries, name=name)


def random_padic_table(p, n, K, rng, name="random-padic"):
    entries = {
        key: TruncatedPadicInt(p, K, tuple(rng.randrange(p) for _ in range(K)))
        for key in table_keys(p, n, K)
    }
    return CylinderFunction.from_table(p, n, K, "padic", entries, name=name)


def base_q_value(digits, q):
    """Independent oracle: sum digits[i] * q**(-i-1) via Horner."""
    acc = 0
    for d in digits:
        acc = acc * q + d
    return Fraction(acc, q ** len(digits))


def first_difference(a, b):
    """Index of the first differing digit, or the common length if equal."""
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return min(len(a), len(b))


def padic_of_int(value, p, K):
    """Little-endian digits of value mod p**K, built independently of core."""
    value %= p**K
    digs = []
    for _ in range(K):
        value, d = divmod(value, p)
        digs.append(d)
    return make_padic(digs, p, K)
