"""Representative construction and the exact superposition identities."""

import random
from fractions import Fraction
from itertools import product

import pytest

from padic_kas import (
    CantorValue,
    CodomainMismatch,
    ConfigError,
    CylinderFunction,
    DimensionMismatch,
    DomainViolation,
    PadicScalar,
    PrecisionMismatch,
    TableFormatError,
    TruncatedPadicInt,
    WEIGHTS_PAPER,
    build_g,
    build_h,
    cantor_decode,
    cantor_encode,
    cantor_to_rational,
    combine,
    eval_g,
    extract,
    h_value,
    make_padic,
    make_point,
    padic_add,
    padic_from_int,
    superpose1,
    superpose2,
)

from helpers import (
    all_points,
    all_values,
    random_padic_table,
    random_real_table,
    table_keys,
)


def pt(p, K, *ints):
    return make_point([padic_from_int(v, p, K) for v in ints])


class TestBuiltins:
    def test_zero_defaults_to_real(self):
        f = CylinderFunction.from_builtin("zero", 2, 2, 1)
        assert f.codomain == "real"
        assert f(pt(2, 1, 1, 0)) == 0.0

    def test_zero_padic(self):
        f = CylinderFunction.from_builtin("zero", 2, 2, 2, codomain="padic")
        assert f(pt(2, 2, 3, 1)) == make_padic([], 2, 2)

    def test_proj(self):
        f = CylinderFunction.from_builtin("proj-2", 2, 2, 2)
        assert f(pt(2, 2, 1, 3)) == padic_from_int(3, 2, 2)

    def test_padic_sum(self):
        f = CylinderFunction.from_builtin("padic-sum", 2, 3, 2)
        X = pt(2, 2, 1, 1, 3)
        assert f(X) == padic_from_int(5 % 4, 2, 2)

    def test_norm_k(self):
        f = CylinderFunction.from_builtin("norm-1", 3, 2, 2)
        assert f(pt(3, 2, 3, 1)) == float(Fraction(1, 3))

    def test_norm_product(self):
        f = CylinderFunction.from_builtin("norm-product", 2, 2, 3)
        assert f(pt(2, 3, 2, 4)) == float(Fraction(1, 2) * Fraction(1, 4))

    def test_digit0(self):
        f = CylinderFunction.from_builtin("digit0-1", 3, 2, 1)
        assert f(pt(3, 1, 2, 0)) == 2.0

    def test_unknown_name(self):
        with pytest.raises(ConfigError):
            CylinderFunction.from_builtin("cube", 2, 2, 1)

    def test_bad_coordinate_index(self):
        with pytest.raises(ConfigError):
            CylinderFunction.from_builtin("proj-3", 2, 2, 1)
        with pytest.raises(ConfigError):
            CylinderFunction.from_builtin("proj-0", 2, 2, 1)

    def test_codomain_conflict(self):
        with pytest.raises(CodomainMismatch):
            CylinderFunction.from_builtin("padic-sum", 2, 2, 1, codomain="real")

    def test_argument_shape_checks(self):
        f = CylinderFunction.from_builtin("zero", 2, 2, 1)
        with pytest.raises(DimensionMismatch):
            f(pt(2, 1, 1))
        with pytest.raises(PrecisionMismatch):
            f(pt(2, 2, 1, 0))


class TestTables:
    def test_table_function_evaluates(self):
        rng = random.Random(5)
        f = random_real_table(2, 2, 1, rng)
        for key in table_keys(2, 2, 1):
            X = make_point([TruncatedPadicInt(2, 1, c) for c in key])
            assert f(X) == f.table[key]

    def test_table_must_be_total(self):
        keys = table_keys(2, 2, 1)
        entries = {k: 0.0 for k in keys[:-1]}
        with pytest.raises(TableFormatError):
            CylinderFunction.from_table(2, 2, 1, "real", entries)

    def test_real_values_must_be_finite(self):
        entries = {k: 0.0 for k in table_keys(2, 1, 1)}
        entries[((1,),)] = float("inf")
        with pytest.raises(TableFormatError):
            CylinderFunction.from_table(2, 1, 1, "real", entries)

    def test_padic_values_must_match_parameters(self):
        entries = {k: make_padic([], 2, 1) for k in table_keys(2, 1, 1)}
        entries[((1,),)] = make_padic([], 3, 1)
        with pytest.raises(TableFormatError):
            CylinderFunction.from_table(2, 1, 1, "padic", entries)

    def test_key_shape_validation(self):
        entries = {((0, 0),): 0.0}
        with pytest.raises(TableFormatError):
            CylinderFunction.from_table(2, 1, 1, "real", entries)

    def test_lift_ignores_new_digits(self):
        rng = random.Random(6)
        f = random_real_table(2, 2, 1, rng)
        g = f.lift(3)
        assert g.K == 3
        for a in all_values(2, 3):
            for b in all_values(2, 3):
                X = make_point([a, b])
                cut = pt(2, 1, a.digits[0], b.digits[0])
                assert g(X) == f(cut)

    def test_lift_rejects_coarser_level(self):
        f = CylinderFunction.from_builtin("zero", 2, 2, 2)
        with pytest.raises(ValueError):
            f.lift(1)


class TestBuildG:
    def test_constant_function(self):
        f = CylinderFunction.from_callable(2, 2, 1, "real", lambda X: 7.5, name="const")
        G = build_g(f)
        assert set(G.table.values()) == {7.5}
        for t in (0, Fraction(1, 2), Fraction(1, 3), 1):
            assert eval_g(G, t) == 7.5

    def test_norm_of_first_coordinate(self):
        f = CylinderFunction.from_builtin("norm-1", 2, 2, 1)
        G = build_g(f)
        assert G.table == {(0, 0): 0.0, (0, 2): 0.0, (2, 0): 1.0, (2, 2): 1.0}
        assert eval_g(G, 0) == 0.0
        assert eval_g(G, Fraction(2, 9)) == 0.0
        assert eval_g(G, Fraction(2, 3)) == 1.0
        assert eval_g(G, Fraction(8, 9)) == 1.0
        # 1/2 sits in the middle-third gap between table cells 2/9 and 2/3
        assert eval_g(G, Fraction(1, 2)) == 0.5

    def test_units_digit_of_second_coordinate(self):
        f = CylinderFunction.from_builtin("digit0-2", 2, 2, 1)
        G = build_g(f)
        assert G.table == {(0, 0): 0.0, (0, 2): 1.0, (2, 0): 0.0, (2, 2): 1.0}

    def test_rejects_padic_codomain(self):
        with pytest.raises(CodomainMismatch):
            build_g(CylinderFunction.from_builtin("padic-sum", 2, 2, 1))

    def test_table_keys_are_all_level_prefixes(self):
        G = build_g(CylinderFunction.from_builtin("norm-product", 2, 2, 2))
        assert len(G.table) == 2**4
        assert all(len(k) == 4 and all(d in (0, 2) for d in k) for k in G.table)


class TestEvalG:
    def test_exact_table_key_is_bit_identical(self):
        rng = random.Random(7)
        f = random_real_table(2, 2, 1, rng)
        G = build_g(f)
        for key, value in G.table.items():
            t = cantor_to_rational(CantorValue(2, 2, key))
            assert eval_g(G, t) == value

    def test_gap_midpoint_is_mean(self):
        rng = random.Random(8)
        f = random_real_table(2, 2, 1, rng)
        G = build_g(f)
        for a, b, va, vb in G.gaps():
            assert eval_g(G, (a + b) / 2) == (va + vb) / 2

    def test_gap_is_monotone_linear(self):
        f = CylinderFunction.from_builtin("norm-1", 2, 2, 1)
        G = build_g(f)
        a, b = Fraction(1, 3), Fraction(2, 3)
        samples = [a + (b - a) * Fraction(i, 8) for i in range(9)]
        values = [eval_g(G, t) for t in samples]
        assert values == sorted(values)
        assert values[0] == 0.0 and values[-1] == 1.0

    def test_domain_violation(self):
        G = build_g(CylinderFunction.from_builtin("zero", 2, 2, 1))
        with pytest.raises(DomainViolation):
            eval_g(G, Fraction(-1, 10))
        with pytest.raises(DomainViolation):
            eval_g(G, Fraction(11, 10))


class TestSuperpose1:
    def test_constant(self):
        f = CylinderFunction.from_callable(2, 2, 2, "real", lambda X: 2.25, name="const")
        G = build_g(f)
        for X in all_points(2, 2, 2):
            assert superpose1(G, X) == 2.25

    def test_norm_examples(self):
        f = CylinderFunction.from_builtin("norm-1", 2, 2, 1)
        G = build_g(f)
        assert superpose1(G, pt(2, 1, 1, 0)) == 1.0
        assert superpose1(G, pt(2, 1, 0, 1)) == 0.0

    def test_packed_argument_lands_on_table_key(self):
        G = build_g(CylinderFunction.from_builtin("norm-1", 2, 2, 1))
        X = pt(2, 1, 1, 0)
        # packing (1, 0) interleaves the encodings: digits (2, 0), value 2/3
        z = combine([cantor_encode(c, 2) for c in X.coords])
        assert z.digits == (2, 0)
        assert cantor_to_rational(z) == Fraction(2, 3)
        assert superpose1(G, X) == eval_g(G, Fraction(2, 3))

    @pytest.mark.parametrize("p,n,K", [(2, 1, 3), (2, 2, 2), (2, 3, 1), (3, 2, 1)])
    def test_identity_for_builtins(self, p, n, K):
        for name in ("norm-product", "digit0-1", "norm-1"):
            f = CylinderFunction.from_builtin(name, p, n, K)
            G = build_g(f)
            for X in all_points(p, n, K):
                assert superpose1(G, X) == f(X)

    def test_identity_for_random_tables(self):
        rng = random.Random(9)
        for p, n, K in ((2, 2, 2), (2, 3, 1), (3, 2, 1)):
            for _ in range(5):
                f = random_real_table(p, n, K, rng)
                G = build_g(f)
                for X in all_points(p, n, K):
                    assert superpose1(G, X) == f(X)

    def test_dimension_check(self):
        G = build_g(CylinderFunction.from_builtin("zero", 2, 2, 1))
        with pytest.raises(DimensionMismatch):
            superpose1(G, pt(2, 1, 1))


class TestBuildH:
    def test_zero_function(self):
        H = build_h(CylinderFunction.from_builtin("zero", 2, 2, 2, codomain="padic"))
        assert all(s.is_zero for s in H.table.values())

    def test_padic_sum_at_three(self):
        f = CylinderFunction.from_builtin("padic-sum", 2, 2, 2)
        H = build_h(f)
        got = h_value(H, padic_from_int(3, 2, 4))
        assert got.to_padic_int(2) == padic_from_int(2, 2, 2)

    def test_projection_at_eleven(self):
        f = CylinderFunction.from_builtin("proj-1", 2, 2, 2)
        H = build_h(f)
        got = h_value(H, padic_from_int(11, 2, 4))
        assert got.to_padic_int(2) == padic_from_int(1, 2, 2)

    def test_total_over_all_prefixes(self):
        H = build_h(CylinderFunction.from_builtin("padic-sum", 3, 2, 2))
        assert len(H.table) == 3**4

    def test_rejects_real_codomain(self):
        with pytest.raises(CodomainMismatch):
            build_h(CylinderFunction.from_builtin("norm-1", 2, 2, 1))

    def test_rejects_unknown_weights(self):
        f = CylinderFunction.from_builtin("padic-sum", 2, 2, 1)
        with pytest.raises(ConfigError):
            build_h(f, weights="midway")

    def test_h_value_checks_precision(self):
        H = build_h(CylinderFunction.from_builtin("padic-sum", 2, 2, 2))
        with pytest.raises(PrecisionMismatch):
            h_value(H, padic_from_int(3, 2, 2))


class TestSuperpose2:
    def test_zero(self):
        f = CylinderFunction.from_builtin("zero", 2, 2, 2, codomain="padic")
        H = build_h(f)
        for X in all_points(2, 2, 2):
            assert superpose2(H, X).is_zero

    def test_padic_sum_example(self):
        f = CylinderFunction.from_builtin("padic-sum", 2, 2, 2)
        H = build_h(f)
        got = superpose2(H, pt(2, 2, 1, 1))
        assert got.to_padic_int(2) == padic_from_int(2, 2, 2)

    def test_projection_example(self):
        f = CylinderFunction.from_builtin("proj-1", 2, 2, 2)
        H = build_h(f)
        got = superpose2(H, pt(2, 2, 1, 3))
        assert got.to_padic_int(2) == padic_from_int(1, 2, 2)

    @pytest.mark.parametrize(
        "p,n,K", [(2, 1, 3), (2, 2, 2), (2, 3, 2), (3, 2, 2), (3, 3, 1)]
    )
    def test_identity_for_builtins(self, p, n, K):
        for name in ("padic-sum", "proj-1", f"proj-{n}"):
            f = CylinderFunction.from_builtin(name, p, n, K)
            H = build_h(f)
            for X in all_points(p, n, K):
                assert superpose2(H, X) == PadicScalar.from_padic_int(f(X))

    def test_identity_for_random_tables(self):
        rng = random.Random(10)
        for p, n, K in ((2, 2, 2), (2, 3, 2), (3, 2, 1)):
            for _ in range(5):
                f = random_padic_table(p, n, K, rng)
                H = build_h(f)
                for X in all_points(p, n, K):
                    assert superpose2(H, X) == PadicScalar.from_padic_int(f(X))

    def test_dimension_check(self):
        H = build_h(CylinderFunction.from_builtin("padic-sum", 2, 2, 1))
        with pytest.raises(DimensionMismatch):
            superpose2(H, pt(2, 1, 1))


class TestWeightConventions:
    def test_shifted_keys_cover_multiples_of_p(self):
        f = CylinderFunction.from_builtin("padic-sum", 2, 2, 1)
        H = build_h(f, weights=WEIGHTS_PAPER)
        assert H.key_length == 3
        assert all(key[0] == 0 for key in H.table)

    def test_identity_still_exact(self):
        rng = random.Random(11)
        f = random_padic_table(2, 2, 2, rng)
        H = build_h(f, weights=WEIGHTS_PAPER)
        for X in all_points(2, 2, 2):
            assert superpose2(H, X) == PadicScalar.from_padic_int(f(X))

    def test_off_domain_evaluation_rejected(self):
        f = CylinderFunction.from_builtin("padic-sum", 2, 2, 1)
        H = build_h(f, weights=WEIGHTS_PAPER)
        with pytest.raises(DomainViolation):
            h_value(H, padic_from_int(1, 2, 3))
        assert h_value(H, padic_from_int(2 * 3, 2, 3)) is not None


class TestChainConsistency:
    @pytest.mark.parametrize("p,n,K", [(2, 2, 2), (3, 2, 1), (2, 3, 1)])
    def test_roundtrip_through_packed_value(self, p, n, K):
        for X in all_points(p, n, K):
            packed = combine([cantor_encode(c, n) for c in X.coords])
            back = tuple(cantor_decode(extract(packed, k)) for k in range(n))
            assert back == X.coords


class TestRefinementCoherence:
    def test_finer_level_agrees_on_coarse_prefixes(self):
        p, n, K = 2, 2, 2
        rng = random.Random(12)
        for f in (
            CylinderFunction.from_builtin("norm-product", p, n, K),
            random_real_table(p, n, K, rng),
        ):
            G_coarse = build_g(f)
            G_fine = build_g(f.lift(K + 1))
            allowed = (0, 2)
            for key, value in G_coarse.table.items():
                for ext in product(allowed, repeat=n):
                    assert G_fine.table[key + ext] == value
                t = cantor_to_rational(CantorValue(p, n, key))
                assert eval_g(G_fine, t) == value
