"""Core series arithmetic: windows, exactness, ring laws."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moonshine.series import BiSeries, UniSeries

# ---------------------------------------------------------------------------
# strategies


def coeffs():
    return st.one_of(
        st.integers(min_value=-9, max_value=9),
        st.fractions(min_value=-4, max_value=4, max_denominator=6),
    )


@st.composite
def uni_series(draw, lo_min=-3, hi_max=8):
    lo = draw(st.integers(min_value=lo_min, max_value=3))
    hi = draw(st.integers(min_value=lo, max_value=hi_max))
    n_terms = draw(st.integers(min_value=0, max_value=6))
    data = {}
    for _ in range(n_terms):
        e = draw(st.integers(min_value=lo, max_value=hi))
        data[e] = draw(coeffs())
    return UniSeries(data, lo, hi)


@st.composite
def positive_uni(draw):
    """Series supported on exponents >= 1 (valid log/exp input)."""
    hi = draw(st.integers(min_value=1, max_value=8))
    n_terms = draw(st.integers(min_value=0, max_value=5))
    data = {}
    for _ in range(n_terms):
        e = draw(st.integers(min_value=1, max_value=hi))
        data[e] = draw(coeffs())
    return UniSeries(data, 0, hi)


@st.composite
def bi_series(draw):
    pmax = draw(st.integers(min_value=0, max_value=5))
    qmin = draw(st.integers(min_value=-2, max_value=1))
    qmax = draw(st.integers(min_value=qmin, max_value=5))
    n_terms = draw(st.integers(min_value=0, max_value=5))
    data = {}
    for _ in range(n_terms):
        i = draw(st.integers(min_value=0, max_value=pmax))
        j = draw(st.integers(min_value=qmin, max_value=qmax))
        data[(i, j)] = draw(coeffs())
    return BiSeries(data, pmax, qmin, qmax)


# ---------------------------------------------------------------------------
# construction and access


class TestConstruction:
    def test_rejects_floats(self):
        with pytest.raises(TypeError, match="exact coefficient"):
            UniSeries({1: 0.5}, 0, 2)

    def test_rejects_out_of_window_exponent(self):
        with pytest.raises(ValueError, match="outside window"):
            UniSeries({3: 1}, 0, 2)

    def test_rejects_empty_window(self):
        with pytest.raises(ValueError, match="empty window"):
            UniSeries((), 2, 1)

    def test_drops_zeros_and_collapses_fractions(self):
        s = UniSeries({0: Fraction(0, 3), 1: Fraction(4, 2)}, 0, 2)
        assert s.items() == [(1, 2)]
        assert isinstance(s.coeff(1), int)

    def test_coeff_below_floor_is_zero(self):
        s = UniSeries({2: 5}, 1, 4)
        assert s.coeff(0) == 0
        assert s.coeff(-7) == 0

    def test_coeff_above_ceiling_raises(self):
        s = UniSeries({2: 5}, 1, 4)
        with pytest.raises(ValueError, match="beyond the window"):
            s.coeff(5)

    def test_bi_rejects_negative_p(self):
        with pytest.raises(ValueError, match="p exponents"):
            BiSeries({(-1, 0): 1}, 2, 0, 2)


# ---------------------------------------------------------------------------
# addition windows


class TestAddition:
    def test_disjoint_windows_raise(self):
        a = UniSeries({1: 1}, 0, 2)
        b = UniSeries({5: 1}, 5, 9)
        with pytest.raises(ValueError, match="incompatible windows"):
            a + b

    def test_result_window_keeps_lower_floor(self):
        # the floor is a support bound, so the sum is known from min(lo)
        a = UniSeries({-2: 3}, -2, 4)
        b = UniSeries({1: 7}, 0, 6)
        s = a + b
        assert (s.lo, s.hi) == (-2, 4)
        assert s.coeff(-2) == 3 and s.coeff(1) == 7

    def test_scalar_addition(self):
        s = UniSeries({1: 2}, 1, 3) + 5
        assert (s.lo, s.hi) == (0, 3)
        assert s.coeff(0) == 5
        assert (3 - UniSeries({0: 1}, 0, 2)).coeff(0) == 2

    def test_scalar_beyond_window_raises(self):
        neg = UniSeries({-2: 1}, -3, -1)
        with pytest.raises(ValueError, match="incompatible windows"):
            neg + 1


# ---------------------------------------------------------------------------
# multiplication


class TestMultiplication:
    def test_polynomial_product(self):
        a = UniSeries({0: 1, 1: 2}, 0, 10)
        b = UniSeries({0: 3, 2: -1}, 0, 10)
        p = a * b
        assert p.items() == [(0, 3), (1, 6), (2, -1), (3, -2)]

    def test_window_uses_actual_support(self):
        # a is only known to order 3, but b starts at q^2, so the product
        # is still exact through q^5
        a = UniSeries({0: 1, 1: 1}, 0, 3)
        b = UniSeries({2: 1}, 0, 9)
        assert (a * b).hi == 5

    def test_zero_scalar_keeps_window(self):
        a = UniSeries({1: 4}, 1, 6)
        z = a * 0
        assert z.is_zero() and (z.lo, z.hi) == (1, 6)

    def test_pow_matches_repeated_multiplication(self):
        a = UniSeries({0: 1, 1: -1, 2: 2}, 0, 8)
        by_mul = a * a * a * a * a
        assert not (a**5).mismatches(by_mul)

    def test_pow_zero_is_one(self):
        a = UniSeries({1: 3}, 0, 4)
        assert (a**0).items() == [(0, 1)]


# ---------------------------------------------------------------------------
# inverse


class TestInverse:
    def test_geometric(self):
        g = UniSeries({0: 1, 1: -1}, 0, 6)
        assert g.inverse(6).items() == [(e, 1) for e in range(7)]

    def test_laurent_leading_term(self):
        # (q - 24 q^2 + 252 q^3 - 1472 q^4)^-1 opens with q^-1 + 24 + 324 q
        d = UniSeries({1: 1, 2: -24, 3: 252, 4: -1472}, 1, 4)
        inv = d.inverse(1)
        assert (inv.lo, inv.hi) == (-1, 1)
        assert inv.items() == [(-1, 1), (0, 24), (1, 324)]

    def test_zero_series_raises(self):
        with pytest.raises(ValueError, match="non-invertible series"):
            UniSeries.zero(0, 5).inverse(3)

    def test_round_trip(self):
        a = UniSeries({0: 2, 1: 5, 3: -1}, 0, 9)
        prod = a * a.inverse(9)
        assert prod.coeff(0) == 1
        assert all(prod.coeff(e) == 0 for e in range(1, prod.hi + 1))


# ---------------------------------------------------------------------------
# log / exp


class TestLogExp:
    def test_log_of_one_minus_q_is_harmonic(self):
        t = UniSeries.monomial(1, 1, hi=5)
        assert t.log1m().items() == [(k, Fraction(-1, k)) for k in range(1, 6)]

    def test_exp_small(self):
        s = UniSeries({1: 1, 2: 1}, 0, 2)
        assert s.exp().items() == [(0, 1), (1, 1), (2, Fraction(3, 2))]

    def test_log_rejects_constant_term(self):
        with pytest.raises(ValueError, match="log of non-unit"):
            UniSeries({0: 1, 1: 1}, 0, 3).log1m()

    def test_exp_then_log_round_trip(self):
        s = UniSeries({1: 2, 2: Fraction(1, 3)}, 0, 7)
        # log(1 - (1 - exp(s))) = s
        back = (1 - s.exp()).log1m()
        assert not back.mismatches(s)

    def test_order_argument_truncates(self):
        t = UniSeries.monomial(1, 1, hi=9)
        assert t.log1m(order=3).hi == 3


# ---------------------------------------------------------------------------
# substitution, shift, restriction


class TestReindexing:
    def test_substitute_power_widens_window(self):
        # q -> q^3 leaves provable zeros between multiples of 3
        s = UniSeries({1: 1, 2: 4}, 0, 2)
        t = s.substitute_power(3)
        assert (t.lo, t.hi) == (0, 8)
        assert t.items() == [(3, 1), (6, 4)]
        assert t.coeff(7) == 0

    def test_shift(self):
        s = UniSeries({0: 1, 1: 2}, 0, 3).shift(-2)
        assert (s.lo, s.hi) == (-2, 1)
        assert s.coeff(-2) == 1

    def test_restrict_cannot_extend(self):
        s = UniSeries({1: 1}, 0, 4)
        with pytest.raises(ValueError, match="cannot extend"):
            s.restrict(hi=9)

    def test_restrict_cannot_hide_support(self):
        s = UniSeries({1: 1}, 0, 4)
        with pytest.raises(ValueError, match="window floor"):
            s.restrict(lo=2)


# ---------------------------------------------------------------------------
# comparison


class TestComparison:
    def test_zero_extension_below_floors(self):
        a = UniSeries({2: 5}, 2, 6)
        b = UniSeries({2: 5}, 0, 6)
        assert a == b

    def test_mismatches_are_localized(self):
        a = UniSeries({1: 1, 2: 2, 3: 3}, 0, 5)
        b = UniSeries({1: 1, 2: 7}, 0, 4)
        assert a.mismatches(b) == [(2, 2, 7), (3, 3, 0)]

    def test_comparison_ignores_uncertified_tail(self):
        a = UniSeries({1: 1, 4: 9}, 0, 6)
        b = UniSeries({1: 1}, 0, 2)
        assert a == b  # q^4 term lies above b's window


# ---------------------------------------------------------------------------
# property tests


class TestRingLaws:
    @given(uni_series(), uni_series())
    def test_add_commutes(self, a, b):
        try:
            left = a + b
        except ValueError:
            return
        right = b + a
        assert not left.mismatches(right)

    @given(uni_series(), uni_series(), uni_series())
    def test_mul_distributes(self, a, b, c):
        try:
            lhs = a * (b + c)
            rhs = a * b + a * c
        except ValueError:
            return
        assert not lhs.mismatches(rhs)

    @given(uni_series(), uni_series())
    def test_mul_commutes(self, a, b):
        assert not (a * b).mismatches(b * a)

    @given(uni_series(), uni_series(), uni_series())
    def test_mul_associates(self, a, b, c):
        assert not ((a * b) * c).mismatches(a * (b * c))

    @given(positive_uni())
    def test_log_exp_inverse(self, s):
        # exp(log(1 - s)) == 1 - s on the certified window
        restored = s.log1m().exp()
        assert not restored.mismatches(1 - s)

    @given(positive_uni(), st.integers(min_value=1, max_value=4))
    def test_substitute_power_is_multiplicative(self, s, k):
        sq = s * s
        assert not sq.substitute_power(k).mismatches(
            s.substitute_power(k) * s.substitute_power(k)
        )

    @given(uni_series(lo_min=0))
    def test_inverse_round_trip(self, s):
        if s.is_zero():
            return
        inv = s.inverse(s.hi)
        if inv.hi < inv.lo + 1 and inv.is_zero():
            return
        prod = s * inv
        assert prod.coeff(0) == 1
        assert all(v == 0 for e, v in prod.items() if e != 0)


# ---------------------------------------------------------------------------
# two-variable series


class TestBiSeries:
    def test_mul_window_sharpening(self):
        u = BiSeries({(1, 1): 2, (1, 2): 3}, 3, 0, 4)
        sq = u * u
        assert (sq.pmax, sq.qmin, sq.qmax) == (4, 0, 5)
        assert sq.items() == [((2, 2), 4), ((2, 3), 12), ((2, 4), 9)]

    def test_coeff_semantics(self):
        u = BiSeries({(1, 1): 2}, 3, 0, 4)
        assert u.coeff(0, -5) == 0  # below the q floor: provably zero
        with pytest.raises(ValueError, match="beyond the window"):
            u.coeff(4, 0)

    def test_add_incompatible_q_windows(self):
        a = BiSeries({(0, 0): 1}, 2, 0, 1)
        b = BiSeries({(0, 5): 1}, 2, 4, 6)
        with pytest.raises(ValueError, match="incompatible windows"):
            a + b

    def test_log_exp_round_trip_positive_support(self):
        u = BiSeries({(1, 1): 2, (1, 2): 3, (2, 1): -1}, 4, 0, 5)
        assert not u.log1m().exp().mismatches(BiSeries.one(4, 0, 5) - u)

    def test_log1m_with_negative_q_support(self):
        # v = p/q + p*q; hand expansion of -(v + v^2/2 + v^3/3) kept on the
        # certified region j <= 0
        v = BiSeries({(1, -1): 1, (1, 1): 1}, 3, -1, 2)
        lv = v.log1m()
        assert (lv.pmax, lv.qmin, lv.qmax) == (3, -3, 0)
        assert dict(lv.items()) == {
            (1, -1): -1,
            (2, -2): Fraction(-1, 2),
            (2, 0): -1,
            (3, -3): Fraction(-1, 3),
            (3, -1): -1,
        }

    def test_exp_refuses_uncertifiable_window(self):
        # q-support at -3 with p ceiling 3 pushes the certified ceiling to
        # -6, which cannot hold the constant cell
        w = BiSeries({(1, -3): 1, (1, 0): 1}, 3, -3, 0)
        with pytest.raises(ValueError, match="window too narrow"):
            w.exp()

    def test_log_rejects_p_constant(self):
        with pytest.raises(ValueError, match="log of non-unit"):
            BiSeries({(0, 1): 1}, 2, 0, 2).log1m()

    def test_substitute_power(self):
        u = BiSeries({(1, 1): 5}, 2, 0, 2)
        t = u.substitute_power(2)
        assert (t.pmax, t.qmin, t.qmax) == (5, 0, 5)
        assert t.coeff(2, 2) == 5 and t.coeff(3, 3) == 0

    def test_truncated_clips(self):
        u = BiSeries({(1, 1): 5, (2, 3): 7}, 2, 0, 3)
        t = u.truncated(pmax=1, qmax=2)
        assert t.items() == [((1, 1), 5)]
        with pytest.raises(ValueError, match="cannot extend"):
            u.truncated(pmax=9)

    @given(bi_series(), bi_series())
    def test_mul_commutes(self, a, b):
        assert not (a * b).mismatches(b * a)

    @given(bi_series(), bi_series(), bi_series())
    def test_mul_distributes(self, a, b, c):
        try:
            lhs = a * (b + c)
            rhs = a * b + a * c
        except ValueError:
            return
        assert not lhs.mismatches(rhs)

    @settings(max_examples=50)
    @given(bi_series(), st.integers(min_value=1, max_value=3))
    def test_substitute_power_is_multiplicative(self, a, k):
        sq = a * a
        assert not sq.substitute_power(k).mismatches(
            a.substitute_power(k) * a.substitute_power(k)
        )
