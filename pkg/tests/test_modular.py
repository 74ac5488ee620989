"""Modular q-expansions against brute-force and closed-form oracles."""

from __future__ import annotations

from fractions import Fraction

import pytest

from moonshine.modular import (
    EtaMonomial,
    EtaRecipe,
    dedekind_eta_power,
    delta,
    eisenstein,
    euler_product,
    expand_recipe,
    j_series,
    normalized_j,
)
from moonshine.series import UniSeries


def brute_euler(order: int, scale: int = 1) -> UniSeries:
    """Fold prod (1 - q^{scale n}) term by term, no pentagonal shortcut."""
    out = UniSeries.one(order)
    n = scale
    while n <= order:
        out = out * UniSeries({0: 1, n: -1}, 0, order)
        n += scale
    return out


class TestEulerProduct:
    def test_matches_brute_force(self):
        assert not euler_product(30).mismatches(brute_euler(30))

    def test_pentagonal_pattern(self):
        assert euler_product(12).items() == [
            (0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1),
        ]


class TestEtaPowers:
    def test_partition_generating_function(self):
        series, offset = dedekind_eta_power(1, -1, 5)
        assert series.items() == [(0, 1), (1, 1), (2, 2), (3, 3), (4, 5), (5, 7)]
        assert offset == Fraction(-1, 24)

    def test_positive_power_matches_brute(self):
        series, offset = dedekind_eta_power(2, 3, 12)
        assert offset == Fraction(6, 24)
        assert not series.mismatches(brute_euler(12, scale=2) ** 3)

    def test_zero_power(self):
        series, offset = dedekind_eta_power(2, 0, 4)
        assert series.items() == [(0, 1)] and offset == 0

    def test_inverse_power_round_trip(self):
        pos, _ = dedekind_eta_power(3, 2, 10)
        neg, _ = dedekind_eta_power(3, -2, 10)
        assert not (pos * neg).mismatches(UniSeries.one(10))


class TestDelta:
    def test_tau_values(self):
        assert delta(8).items() == [
            (1, 1), (2, -24), (3, 252), (4, -1472),
            (5, 4830), (6, -6048), (7, -16744), (8, 84480),
        ]

    def test_weight_relation(self):
        # E4^3 - E6^2 = 1728 * delta, exactly
        e4 = eisenstein(4, 10)
        e6 = eisenstein(6, 10)
        assert not (e4**3 - e6**2).mismatches(1728 * delta(10))


class TestEisenstein:
    def test_e4_divisor_sums(self):
        assert eisenstein(4, 5).items() == [
            (0, 1), (1, 240), (2, 2160), (3, 6720), (4, 17520), (5, 30240),
        ]

    def test_e6_divisor_sums(self):
        assert eisenstein(6, 3).items() == [
            (0, 1), (1, -504), (2, -16632), (3, -122976),
        ]

    def test_order_zero(self):
        assert eisenstein(4, 0).items() == [(0, 1)]

    def test_rejects_other_weights(self):
        with pytest.raises(ValueError, match="weight"):
            eisenstein(8, 4)


class TestJInvariant:
    def test_first_coefficients(self):
        j = j_series(5)
        assert j.items() == [
            (-1, 1),
            (0, 744),
            (1, 196884),
            (2, 21493760),
            (3, 864299970),
            (4, 20245856256),
            (5, 333202640600),
        ]

    def test_both_routes_agree_deep(self):
        # the dual-route comparison runs inside j_series; a disagreement
        # would raise rather than return
        j = j_series(30)
        assert j.is_integral()

    def test_normalized_constant_is_zero(self):
        J = normalized_j(2)
        assert J.coeff(0) == 0
        assert J.coeff(-1) == 1
        assert J.coeff(1) == 196884

    def test_negative_one_order(self):
        assert j_series(-1).items() == [(-1, 1)]


class TestRecipes:
    def test_quotient_24_over_2(self):
        # (eta(t)/eta(2t))^24 normalized, checked against a from-scratch fold
        recipe = EtaRecipe((EtaMonomial.from_factors(1, {1: 24, 2: -24}),))
        got = expand_recipe(recipe, 8)
        brute = (
            brute_euler(9) ** 24 * (brute_euler(9, scale=2) ** 24).inverse(9)
        ).shift(-1)
        brute = brute - brute.coeff(0)
        assert not got.mismatches(brute)
        assert got.items() == [
            (-1, 1), (1, 276), (2, -2048), (3, 11202), (4, -49152),
            (5, 184024), (6, -614400), (7, 1881471), (8, -5373952),
        ]

    def test_quotient_12_over_3(self):
        recipe = EtaRecipe((EtaMonomial.from_factors(1, {1: 12, 3: -12}),))
        assert expand_recipe(recipe, 5).items() == [
            (-1, 1), (1, 54), (2, -76), (3, -243), (4, 1188), (5, -1384),
        ]

    def test_quotient_8_over_4_is_odd(self):
        recipe = EtaRecipe((EtaMonomial.from_factors(1, {1: 8, 4: -8}),))
        got = expand_recipe(recipe, 8)
        assert got.items() == [(-1, 1), (1, 20), (3, -62), (5, 216), (7, -641)]
        assert all(got.coeff(n) == 0 for n in (0, 2, 4, 6, 8))

    def test_unnormalized_keeps_constant(self):
        recipe = EtaRecipe(
            (EtaMonomial.from_factors(1, {1: 24, 2: -24}),), normalize=False
        )
        assert expand_recipe(recipe, 1).coeff(0) == -24

    def test_fractional_offset_rejected(self):
        recipe = EtaRecipe((EtaMonomial.from_factors(1, {1: 1}),))
        with pytest.raises(ValueError, match="fractional leading exponent"):
            expand_recipe(recipe, 4)

    def test_empty_monomial_is_one(self):
        recipe = EtaRecipe((EtaMonomial.from_factors(1, {}),), normalize=False)
        assert expand_recipe(recipe, 3).items() == [(0, 1)]

    def test_monomial_sum(self):
        # a two-monomial recipe is the sum of its parts
        m1 = EtaMonomial.from_factors(2, {1: 24, 2: -24})
        m2 = EtaMonomial.from_factors(-1, {})
        got = expand_recipe(EtaRecipe((m1, m2), normalize=False), 2)
        lone = expand_recipe(EtaRecipe((m1,), normalize=False), 2)
        assert not got.mismatches(lone - 1)

    def test_factor_merging(self):
        mono = EtaMonomial.from_factors(1, [(2, 5), (2, -5), (1, 24)])
        assert mono.factors == ((1, 24),)
