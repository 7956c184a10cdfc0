"""Verification suites, table ingestion, and data emission for the CLI.

Each suite drives the library's own operations against independent digit-level
oracles and collects counterexamples.  A suite is exhaustive whenever its case
space fits under EXHAUSTIVE_LIMIT and falls back to seeded sampling otherwise,
so a report is a pure function of its configuration.
"""

from __future__ import annotations

import csv
import json
import math
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .cantor import (
    CantorValue,
    cantor_decode,
    cantor_encode,
    cantor_to_rational,
    combine,
    extract,
    format_cantor,
    interval_left_endpoints,
)
from .core import (
    PadicPoint,
    PadicScalar,
    TruncatedPadicInt,
    format_padic,
    is_prime,
    padic_norm,
    padic_sub,
    parse_padic,
    point_distance,
)
from .errors import ConfigError, NonPrimeModulus, SizeLimitExceeded, TableFormatError
from .interleave import InterleavedPadic, deinterleave, interleave
from .superposition import (
    PADIC,
    REAL,
    WEIGHTS_PAPER,
    WEIGHTS_PROOF,
    CylinderFunction,
    build_g,
    build_h,
    eval_g,
    superpose1,
    superpose2,
)

__all__ = [
    "SUITES",
    "EXHAUSTIVE_LIMIT",
    "RunConfig",
    "VerificationReport",
    "run_verify",
    "emit_cantor_csv",
    "load_table_json",
    "resolve_function",
]

SUITES = ("roundtrip", "theorem1", "theorem2", "lemma1", "lemma2", "holder", "extension")

# Full enumeration is used while the case count stays within this bound.
EXHAUSTIVE_LIMIT = 10**6

# Fixed digit count for the sampled pair-distance bound check.
LEMMA1_LEVEL = 8


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one verification run."""

    p: int
    n: int
    K: int
    suite: str = "all"
    function: Optional[str] = None
    samples: int = 10000
    seed: int = 0
    output: Optional[str] = None
    weights: str = WEIGHTS_PROOF

    def __post_init__(self):
        if not is_prime(self.p):
            raise ConfigError(f"p must be prime, got {self.p}")
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if self.K < 1:
            raise ConfigError(f"K must be >= 1, got {self.K}")
        if self.samples < 0:
            raise ConfigError(f"sample count must be >= 0, got {self.samples}")
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {SUITES + ('all',)}")
        if self.weights not in (WEIGHTS_PROOF, WEIGHTS_PAPER):
            raise ConfigError(f"weights must be 'proof' or 'paper', got {self.weights!r}")

    def selected_suites(self):
        return SUITES if self.suite == "all" else (self.suite,)


@dataclass
class VerificationReport:
    """Outcome of a verification run.

    ``failures`` holds one dict per counterexample with the textual inputs
    and both sides of the violated relation, so every entry replays through
    the corresponding library call.  The serialized form excludes wall time:
    identical configurations must serialize byte-identically.
    """

    suite: str
    params: dict
    cases: int
    breakdown: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        payload = {
            "suite": self.suite,
            "params": self.params,
            "cases": self.cases,
            "breakdown": self.breakdown,
            "failures": self.failures,
            "passed": self.passed,
        }
        return json.dumps(payload, sort_keys=True)


def run_verify(config: RunConfig) -> VerificationReport:
    """Execute the selected suites and assemble one report."""
    t0 = time.perf_counter()
    cases = 0
    breakdown = {}
    failures = []
    for name in config.selected_suites():
        rng = random.Random(config.seed)
        suite_cases, suite_breakdown, suite_failures = _SUITE_FNS[name](config, rng)
        cases += suite_cases
        for check, count in suite_breakdown.items():
            breakdown[f"{name}.{check}"] = count
        failures.extend(suite_failures)
    report = VerificationReport(
        suite=config.suite,
        params={
            "p": config.p,
            "n": config.n,
            "K": config.K,
            "function": config.function,
            "samples": config.samples,
            "seed": config.seed,
            "weights": config.weights,
        },
        cases=cases,
        breakdown=breakdown,
        failures=failures,
        wall_time=time.perf_counter() - t0,
    )
    return report


def _digit_tuples(p, length, samples, rng):
    """(iterator, count): all digit tuples if affordable, else a seeded sample."""
    total = p**length
    if total <= EXHAUSTIVE_LIMIT:
        return product(range(p), repeat=length), total
    it = (tuple(rng.randrange(p) for _ in range(length)) for _ in range(samples))
    return it, samples


def _fail(failures, check, case, lhs, rhs):
    failures.append({"check": check, "input": case, "lhs": str(lhs), "rhs": str(rhs)})


def _suite_roundtrip(cfg, rng):
    p, n, K = cfg.p, cfg.n, cfg.K
    failures = []
    breakdown = {}

    it, count = _digit_tuples(p, K, cfg.samples, rng)
    breakdown["cantor"] = count
    for digs in it:
        x = TruncatedPadicInt(p, K, digs)
        back = cantor_decode(cantor_encode(x, n))
        if back != x:
            _fail(failures, "cantor", format_padic(x), format_padic(back), format_padic(x))

    it, count = _digit_tuples(p, n * K, cfg.samples, rng)
    breakdown["chain"] = count
    for digs in it:
        coords = tuple(TruncatedPadicInt(p, K, digs[k * K : (k + 1) * K]) for k in range(n))
        z = combine([cantor_encode(c, n) for c in coords])
        back = tuple(cantor_decode(extract(z, k)) for k in range(n))
        if back != coords:
            _fail(
                failures,
                "chain",
                ";".join(format_padic(c) for c in coords),
                ";".join(format_padic(c) for c in back),
                ";".join(format_padic(c) for c in coords),
            )

    it, count = _digit_tuples(p, n * K, cfg.samples, rng)
    breakdown["interleave_forward"] = count
    for digs in it:
        coords = tuple(TruncatedPadicInt(p, K, digs[k * K : (k + 1) * K]) for k in range(n))
        X = PadicPoint(n, coords)
        back = deinterleave(interleave(X))
        if back != X:
            _fail(
                failures,
                "interleave_forward",
                ";".join(format_padic(c) for c in coords),
                ";".join(format_padic(c) for c in back.coords),
                ";".join(format_padic(c) for c in coords),
            )

    it, count = _digit_tuples(p, n * K, cfg.samples, rng)
    breakdown["interleave_backward"] = count
    for digs in it:
        z = InterleavedPadic(TruncatedPadicInt(p, n * K, digs), n)
        back = interleave(deinterleave(z))
        if back != z:
            _fail(
                failures,
                "interleave_backward",
                format_padic(z.value),
                format_padic(back.value),
                format_padic(z.value),
            )

    return sum(breakdown.values()), breakdown, failures


def _require_table_affordable(cfg):
    size = cfg.p ** (cfg.n * cfg.K)
    if size > EXHAUSTIVE_LIMIT:
        raise ConfigError(
            f"p**(n*K) = {size} exceeds the table limit {EXHAUSTIVE_LIMIT}"
        )


def _suite_theorem1(cfg, rng):
    _require_table_affordable(cfg)
    f = resolve_function(cfg.function or "norm-product", cfg, REAL)
    G = build_g(f)
    p, n, K = cfg.p, cfg.n, cfg.K
    failures = []
    it, count = _digit_tuples(p, n * K, cfg.samples, rng)
    for digs in it:
        coords = tuple(TruncatedPadicInt(p, K, digs[k * K : (k + 1) * K]) for k in range(n))
        X = PadicPoint(n, coords)
        expected = f(X)
        got = superpose1(G, X)
        if got != expected:
            _fail(
                failures,
                "theorem1",
                ";".join(format_padic(c) for c in coords),
                repr(got),
                repr(expected),
            )
    return count, {"identity": count}, failures


def _suite_theorem2(cfg, rng):
    _require_table_affordable(cfg)
    f = resolve_function(cfg.function or "padic-sum", cfg, PADIC)
    H = build_h(f, cfg.weights)
    p, n, K = cfg.p, cfg.n, cfg.K
    failures = []
    it, count = _digit_tuples(p, n * K, cfg.samples, rng)
    for digs in it:
        coords = tuple(TruncatedPadicInt(p, K, digs[k * K : (k + 1) * K]) for k in range(n))
        X = PadicPoint(n, coords)
        expected = PadicScalar.from_padic_int(f(X))
        got = superpose2(H, X)
        if got != expected:
            _fail(
                failures,
                "theorem2",
                ";".join(format_padic(c) for c in coords),
                format_padic(got.to_padic_int(K)),
                format_padic(expected.to_padic_int(K)),
            )
    return count, {"identity": count}, failures


def _suite_lemma1(cfg, rng):
    # The stated pair-distance bound is specific to arity 2; the check runs
    # at arity 2 regardless of the configured n.
    p = cfg.p
    n = 2
    L = LEMMA1_LEVEL
    bound = Fraction((2 * p - 1) ** 2 - 1, 2 * (p - 1) ** 2)
    failures = []
    for _ in range(cfg.samples):
        parts = []
        for _ in range(4):
            digs = tuple(n * rng.randrange(p) for _ in range(L))
            parts.append(CantorValue(p, n, digs))
        xa, ya, xb, yb = parts
        d2 = (cantor_to_rational(xa) - cantor_to_rational(xb)) ** 2 + (
            cantor_to_rational(ya) - cantor_to_rational(yb)
        ) ** 2
        lhs = abs(
            cantor_to_rational(combine([xa, ya])) - cantor_to_rational(combine([xb, yb]))
        )
        if lhs > bound * d2:
            _fail(
                failures,
                "lemma1",
                ";".join(format_cantor(c) for c in (xa, ya, xb, yb)),
                str(lhs),
                str(bound * d2),
            )
    return cfg.samples, {"pairs": cfg.samples}, failures


def _pairs(p, length, samples, rng):
    """(iterator of digit-tuple pairs, count), exhaustive under the limit."""
    total = p**length
    if total * total <= EXHAUSTIVE_LIMIT:
        space = list(product(range(p), repeat=length))
        return product(space, space), total * total
    it = (
        (
            tuple(rng.randrange(p) for _ in range(length)),
            tuple(rng.randrange(p) for _ in range(length)),
        )
        for _ in range(samples)
    )
    return it, samples


def _suite_lemma2(cfg, rng):
    p, n, K = cfg.p, cfg.n, cfg.K
    failures = []
    it, count = _pairs(p, n * K, cfg.samples, rng)
    for da, db in it:
        A = PadicPoint(n, tuple(TruncatedPadicInt(p, K, da[k * K : (k + 1) * K]) for k in range(n)))
        B = PadicPoint(n, tuple(TruncatedPadicInt(p, K, db[k * K : (k + 1) * K]) for k in range(n)))
        dist = point_distance(A, B)
        img = padic_norm(padic_sub(interleave(A).value, interleave(B).value))
        if img > dist**n:
            _fail(
                failures,
                "lemma2",
                ";".join(format_padic(c) for c in A.coords)
                + "|"
                + ";".join(format_padic(c) for c in B.coords),
                str(img),
                f"{dist}**{n}",
            )
    return count, {"pairs": count}, failures


def _shared_prefix(a, b):
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return len(a)


def _suite_holder(cfg, rng):
    p, n, K = cfg.p, cfg.n, cfg.K
    failures = []
    breakdown = {}

    it, count = _pairs(p, K, cfg.samples, rng)
    breakdown["encode_prefix"] = count
    for da, db in it:
        x = TruncatedPadicInt(p, K, da)
        y = TruncatedPadicInt(p, K, db)
        N = _shared_prefix(da, db)
        cx = cantor_encode(x, n)
        cy = cantor_encode(y, n)
        if cx.digits[:N] != cy.digits[:N]:
            _fail(
                failures,
                "encode_prefix",
                f"{format_padic(x)}|{format_padic(y)}",
                format_cantor(cx),
                format_cantor(cy),
            )

    L = n * K
    it, count = _pairs(p, L, cfg.samples, rng)
    breakdown["extract_prefix"] = count
    for da, db in it:
        z = CantorValue(p, n, tuple(n * d for d in da))
        w = CantorValue(p, n, tuple(n * d for d in db))
        N = _shared_prefix(z.digits, w.digits)
        for k in range(n):
            keep = (N - k + n - 1) // n if N >= k else 0
            ez = extract(z, k)
            ew = extract(w, k)
            if ez.digits[:keep] != ew.digits[:keep]:
                _fail(
                    failures,
                    "extract_prefix",
                    f"{format_cantor(z)}|{format_cantor(w)}|k={k}",
                    format_cantor(ez),
                    format_cantor(ew),
                )
    return sum(breakdown.values()), breakdown, failures


def _suite_extension(cfg, rng):
    _require_table_affordable(cfg)
    f = resolve_function(cfg.function or "norm-product", cfg, REAL)
    G = build_g(f)
    failures = []
    quarter = Fraction(1, 4)
    half = Fraction(1, 2)
    for a, b, va, vb in G.gaps():
        case = f"gap ({a}, {b})"
        if eval_g(G, a) != va:
            _fail(failures, "gap_left_endpoint", case, repr(eval_g(G, a)), repr(va))
        if eval_g(G, b) != vb:
            _fail(failures, "gap_right_endpoint", case, repr(eval_g(G, b)), repr(vb))
        mid = eval_g(G, a + (b - a) * half)
        mean = (va + vb) / 2
        if mid != mean:
            _fail(failures, "gap_midpoint", case, repr(mid), repr(mean))
        at_quarter = eval_g(G, a + (b - a) * quarter)
        expected = float(Fraction(va) + (Fraction(vb) - Fraction(va)) * quarter)
        if at_quarter != expected:
            _fail(failures, "gap_linearity", case, repr(at_quarter), repr(expected))
    count = len(G.gaps())
    return count, {"gaps": count}, failures


_SUITE_FNS = {
    "roundtrip": _suite_roundtrip,
    "theorem1": _suite_theorem1,
    "theorem2": _suite_theorem2,
    "lemma1": _suite_lemma1,
    "lemma2": _suite_lemma2,
    "holder": _suite_holder,
    "extension": _suite_extension,
}


def resolve_function(spec: str, cfg: RunConfig, codomain: str) -> CylinderFunction:
    """Turn a builtin name or a JSON table path into a CylinderFunction."""
    if spec.endswith(".json") or os.path.sep in spec:
        f = load_table_json(spec)
        if (f.p, f.n, f.K) != (cfg.p, cfg.n, cfg.K):
            raise ConfigError(
                f"table file has (p={f.p}, n={f.n}, K={f.K}), "
                f"run is configured for (p={cfg.p}, n={cfg.n}, K={cfg.K})"
            )
        if f.codomain != codomain:
            raise ConfigError(
                f"table codomain {f.codomain!r} does not fit a {codomain!r} suite"
            )
        return f
    return CylinderFunction.from_builtin(spec, cfg.p, cfg.n, cfg.K, codomain=codomain)


def load_table_json(path: str) -> CylinderFunction:
    """Read a cylinder-function table file.

    Expected shape::

        {"p": 2, "n": 2, "K": 1, "codomain": "real",
         "entries": [{"x": [[0], [0]], "value": 0.0}, ...]}

    Digit lists are little-endian; p-adic values use the textual form
    ``p:K:d0,...``.  The table must be total over all p**(n*K) keys.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None

    for fld in ("p", "n", "K", "codomain", "entries"):
        if fld not in raw:
            raise TableFormatError(f"{path}: missing field {fld!r}")
    p, n, K, codomain = raw["p"], raw["n"], raw["K"], raw["codomain"]
    if codomain not in (REAL, PADIC):
        raise TableFormatError(f"{path}: codomain must be 'real' or 'padic', got {codomain!r}")
    if not isinstance(raw["entries"], list):
        raise TableFormatError(f"{path}: 'entries' must be a list")

    entries = {}
    for idx, entry in enumerate(raw["entries"]):
        if not isinstance(entry, dict) or "x" not in entry or "value" not in entry:
            raise TableFormatError(f"{path}: entry {idx} needs fields 'x' and 'value'")
        x = entry["x"]
        if not isinstance(x, list) or len(x) != n:
            raise TableFormatError(f"{path}: entry {idx} field 'x' must list {n} coordinates")
        try:
            key = tuple(tuple(int(d) for d in coord) for coord in x)
        except (TypeError, ValueError):
            raise TableFormatError(f"{path}: entry {idx} field 'x' has non-integer digits") from None
        if key in entries:
            raise TableFormatError(f"{path}: entry {idx} duplicates key {x}")
        value = entry["value"]
        if codomain == REAL:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TableFormatError(f"{path}: entry {idx} field 'value' must be a number")
            if not math.isfinite(float(value)):
                raise TableFormatError(f"{path}: entry {idx} field 'value' is not finite")
            entries[key] = float(value)
        else:
            if not isinstance(value, str):
                raise TableFormatError(
                    f"{path}: entry {idx} field 'value' must be a p-adic literal string"
                )
            try:
                entries[key] = parse_padic(value)
            except ValueError as exc:
                raise TableFormatError(f"{path}: entry {idx} field 'value': {exc}") from None

    try:
        return CylinderFunction.from_table(
            p, n, K, codomain, entries, name=os.path.basename(path)
        )
    except TableFormatError as exc:
        raise TableFormatError(f"{path}: {exc}") from None


def emit_cantor_csv(p: int, n: int, L: int, path: str) -> int:
    """Write ``index,rational,decimal`` rows for all level-L interval left endpoints.

    Returns the number of data rows.  Refuses enumerations beyond the size
    limit.
    """
    if not is_prime(p):
        raise NonPrimeModulus(f"modulus {p} is not prime")
    if p**L > EXHAUSTIVE_LIMIT:
        raise SizeLimitExceeded(f"p**L = {p**L} exceeds the limit {EXHAUSTIVE_LIMIT}")
    lefts = interval_left_endpoints(p, n, L)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "rational", "decimal"])
        for i, left in enumerate(lefts):
            writer.writerow([i, f"{left.numerator}/{left.denominator}", repr(float(left))])
    return len(lefts)
