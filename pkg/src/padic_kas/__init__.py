"""Exact digit codecs and univariate superposition representatives on Z_p^n.

The package provides:

* truncated p-adic integers with the max-norm ultrametric (:mod:`.core`);
* an exact codec between Z_p and a Cantor-like subset of [0,1], with the
  digit spreading/interleaving maps that fold n coordinates into one value
  (:mod:`.cantor`);
* the base-p digit interleaving bijection Z_p^n <-> Z_p (:mod:`.interleave`);
* constructors that reduce any level-K cylinder function of n variables to a
  single univariate function, exactly (:mod:`.superposition`);
* verification suites and a CLI (:mod:`.verify`, :mod:`.cli`).
"""

from .cantor import (
    CantorValue,
    cantor_decode,
    cantor_encode,
    cantor_to_rational,
    combine,
    extract,
    format_cantor,
    gap_intervals,
    interval_left_endpoints,
    make_cantor,
    parse_cantor,
    phi_full,
    spread,
)
from .core import (
    PadicPoint,
    PadicScalar,
    TruncatedPadicInt,
    format_padic,
    is_prime,
    make_padic,
    make_point,
    padic_add,
    padic_from_int,
    padic_norm,
    padic_shift,
    padic_sub,
    parse_padic,
    point_distance,
)
from .errors import (
    ArityMismatch,
    CodomainMismatch,
    ConfigError,
    DigitOutOfRange,
    DimensionMismatch,
    DomainViolation,
    IndexOutOfRange,
    InvalidCantorDigit,
    NonPrimeModulus,
    PadicKasError,
    PrecisionMismatch,
    SizeLimitExceeded,
    TableFormatError,
)
from .interleave import (
    InterleavedPadic,
    deinterleave,
    deinterleave_k,
    interleave,
    make_interleaved,
    omega,
)
from .superposition import (
    BUILTIN_NAMES,
    PADIC,
    REAL,
    WEIGHTS_PAPER,
    WEIGHTS_PROOF,
    CylinderFunction,
    GFunction,
    HFunction,
    build_g,
    build_h,
    eval_g,
    h_value,
    superpose1,
    superpose2,
)
from .verify import (
    EXHAUSTIVE_LIMIT,
    SUITES,
    RunConfig,
    VerificationReport,
    emit_cantor_csv,
    load_table_json,
    run_verify,
)

__version__ = "0.1.0"
