"""Bessel machinery and magnetization laws against independent oracles.

Oracles used here:

* ascending power series summed in 50-digit ``decimal`` arithmetic (integer
  orders, where the factorials are exact integers);
* alternating J_0 series in the same extended precision, plus bisection on it
  for the first zero;
* the large-argument asymptotic expansion, independently re-summed;
* hyperbolic closed forms for half-integer orders;
* central finite differences for derivative identities.

Spot values marked "50-digit reference" were computed once at 50-digit
working precision and frozen.
"""

import math
from decimal import Decimal, getcontext

import pytest

from spinthermo import specfun
from spinthermo.specfun import (
    bessel_i,
    bessel_i_scaled,
    bessel_j0,
    bessel_ratio,
    heat_capacity,
    magnetization,
    magnetization_slope,
)


def series_i_decimal(order: int, x: str, terms: int = 50) -> float:
    """Power series for integer-order I_n at 50-digit working precision."""
    getcontext().prec = 50
    half = Decimal(x) / 2
    total = Decimal(0)
    for k in range(terms):
        total += half ** (2 * k + order) / (
            Decimal(math.factorial(k)) * Decimal(math.factorial(order + k)))
    return float(total)


def series_j0_decimal(x: str, terms: int = 40) -> float:
    """Alternating J_0 series at 50-digit working precision."""
    getcontext().prec = 50
    q = (Decimal(x) / 2) ** 2
    total = Decimal(0)
    for k in range(terms):
        term = q ** k / Decimal(math.factorial(k)) ** 2
        total += term if k % 2 == 0 else -term
    return float(total)


def asymptotic_i_scaled(nu: float, x: float) -> float:
    """Truncated-at-smallest-term asymptotic sum for e^(-x) I_nu(x)."""
    mu = 4.0 * nu * nu
    term, total, prev = 1.0, 1.0, math.inf
    for k in range(1, 60):
        term *= -(mu - (2.0 * k - 1.0) ** 2) / (8.0 * x * k)
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
    return total / math.sqrt(2.0 * math.pi * x)


class TestBesselI:
    def test_at_zero(self):
        assert bessel_i(0, 0.0) == 1.0
        assert bessel_i(1, 0.0) == 0.0
        assert bessel_i(-0.5, 0.0) == math.inf

    def test_series_oracle_integer_order(self):
        ref = series_i_decimal(1, "1")
        assert abs(bessel_i(1, 1.0) - ref) <= 1e-12 * ref

    @pytest.mark.parametrize("order,x", [(0, "0.3"), (2, "4"), (5, "11"), (6, "29")])
    def test_series_oracle_sweep(self, order, x):
        ref = series_i_decimal(order, x, terms=80)
        assert abs(bessel_i(order, float(x)) - ref) <= 1e-13 * ref

    def test_half_integer_closed_forms(self):
        for x in (0.2, 1.0, 7.5, 25.0):
            plus = math.sqrt(2.0 / (math.pi * x)) * math.sinh(x)
            minus = math.sqrt(2.0 / (math.pi * x)) * math.cosh(x)
            assert abs(bessel_i(0.5, x) - plus) <= 1e-13 * plus
            assert abs(bessel_i(-0.5, x) - minus) <= 1e-13 * minus

    def test_spot_values(self):
        # 50-digit references
        cases = [
            (1.5, 2.0, 1.0994731886331097),
            (2.5, 7.0, 104.61336757234871),
            (6, 12.5, 7033.7585791209179),
            (3, 0.25, 0.00032679438763566842),
            (5.5, 0.1, 2.4281896290145986e-10),
            (4, 25.0, 4168405930.5144448),
        ]
        for nu, x, ref in cases:
            assert abs(bessel_i(nu, x) - ref) <= 1e-13 * abs(ref)

    def test_negative_argument_rejected(self):
        with pytest.raises(ValueError):
            bessel_i(0, -1.0)

    def test_invalid_order_rejected(self):
        with pytest.raises(ValueError):
            bessel_i(0.3, 1.0)
        with pytest.raises(ValueError):
            bessel_i(-1.0, 1.0)

    def test_overflow_signaled(self):
        with pytest.raises(OverflowError):
            bessel_i(0, 800.0)

    def test_recurrence(self):
        for nu in [0.5 * k for k in range(1, 11)]:
            for x in (0.1, 0.5, 1.5, 4.0, 9.0, 17.0, 30.0):
                lhs = bessel_i(nu - 1, x) - bessel_i(nu + 1, x) \
                    - 2.0 * nu / x * bessel_i(nu, x)
                assert abs(lhs) <= 1e-11 * bessel_i(nu - 1, x)


class TestBesselIScaled:
    def test_at_zero(self):
        assert bessel_i_scaled(0, 0.0) == 1.0
        assert bessel_i_scaled(1, 0.0) == 0.0

    def test_cross_path_overlap(self):
        ref = bessel_i(1, 30.0) * math.exp(-30.0)
        assert abs(bessel_i_scaled(1, 30.0) - ref) <= 1e-10 * ref

    def test_asymptotic_oracle_large_x(self):
        ref = asymptotic_i_scaled(2.0, 1000.0)
        got = bessel_i_scaled(2, 1000.0)
        assert abs(got - ref) <= 1e-8 * ref
        # 50-digit reference
        assert abs(got - 0.012592018595377399) <= 1e-12

    def test_finite_across_range(self):
        for x in (0.0, 1.0, 30.0, 1e3, 1e6):
            v = bessel_i_scaled(3, x)
            assert math.isfinite(v)

    def test_spot_values(self):
        # 50-digit references
        cases = [
            (0, 50.0, 0.056561626647454193),
            (6, 75.0, 0.036243500091569567),
            (2.5, 200.0, 0.027788452700665301),
            (0, 1e6, 0.00039894233026924578),
        ]
        for nu, x, ref in cases:
            assert abs(bessel_i_scaled(nu, x) - ref) <= 1e-12 * ref

    def test_scaled_unscaled_consistency(self):
        for nu in (0, 1, 2, 3, 5.5):
            for x in (0.5, 5.0, 29.0, 31.0, 100.0, 600.0):
                a = bessel_i_scaled(nu, x) * math.exp(x)
                b = bessel_i(nu, x)
                assert abs(a - b) <= 1e-10 * b


class TestBesselRatio:
    def test_hyperbolic_identity(self):
        assert abs(bessel_ratio(0.5, 2.0) - math.tanh(2.0)) <= 1e-13
        for b in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
            assert abs(bessel_ratio(0.5, b) - math.tanh(b)) <= 1e-12

    def test_small_argument_leading_term(self):
        # I_2/I_1 ~ x/4 + O(x^3)
        got = bessel_ratio(2, 1e-4)
        assert abs(got - 2.5e-5) <= 1e-6 * 2.5e-5

    def test_largest_gap_value(self):
        # tanh - ratio at the gap maximizer matches the frozen gap 0.561292
        v = bessel_ratio(2, 1.45489)
        assert abs(math.tanh(1.45489) - v - 0.561292) <= 1e-4

    def test_in_unit_interval(self):
        for nu in (0.5, 1, 2, 3.5, 6):
            for x in (1e-3, 0.5, 3.0, 29.0, 40.0, 1e3):
                r = bessel_ratio(nu, x)
                assert 0.0 < r <= 1.0
                if x <= 29.0:
                    assert r < 1.0

    def test_matches_direct_quotient(self):
        for nu in (1, 2, 4.5):
            for x in (0.3, 2.0, 15.0, 28.0):
                ref = bessel_i(nu, x) / bessel_i(nu - 1, x)
                assert abs(bessel_ratio(nu, x) - ref) <= 1e-12 * ref

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            bessel_ratio(2, 0.0)
        with pytest.raises(ValueError):
            bessel_ratio(2, -1.0)
        with pytest.raises(ValueError):
            bessel_ratio(0.0, 1.0)  # would need order -1 < -1/2


class TestBesselJ0:
    def test_at_zero(self):
        assert bessel_j0(0.0) == 1.0

    def test_series_oracle(self):
        ref = series_j0_decimal("1")
        assert abs(bessel_j0(1.0) - ref) <= 1e-12

    def test_first_zero_from_series_bisection(self):
        lo, hi = 2.0, 3.0
        flo = series_j0_decimal("2")
        assert flo > 0.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if series_j0_decimal(repr(mid), terms=60) > 0.0:
                lo = mid
            else:
                hi = mid
        root = 0.5 * (lo + hi)
        assert abs(root - 2.404825557695773) <= 1e-10
        assert abs(bessel_j0(2.404825557695773)) <= 1e-9

    def test_spot_values(self):
        # 50-digit references, spanning series and asymptotic branches
        cases = [
            (5.0, -0.1775967713143383),
            (9.5, -0.19392874768742236),
            (15.0, -0.014224472826780773),
            (30.0, -0.086367983581040211),
        ]
        for x, ref in cases:
            assert abs(bessel_j0(x) - ref) <= 1e-11

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            bessel_j0(-0.5)


class TestMagnetization:
    def test_reduces_to_tanh(self):
        assert abs(magnetization(1, 3.0) - math.tanh(3.0)) <= 1e-13

    def test_reduces_to_langevin(self):
        ref = 1.0 / math.tanh(2.0) - 0.5
        assert abs(magnetization(3, 2.0) - ref) <= 1e-12

    def test_odd(self):
        assert magnetization(4, 0.0) == 0.0
        for d in (1, 3, 4, 6):
            for b in (0.2, 1.7, 8.0):
                assert magnetization(d, -b) == -magnetization(d, b)

    def test_quaternion_case(self):
        ref = bessel_i(3, 2.5) / bessel_i(2, 2.5)
        assert abs(magnetization(6, 2.5) - ref) <= 1e-12 * ref

    def test_ordering(self):
        for b in (0.05, 0.6, 2.2, 6.0, 9.9):
            seq = [magnetization(d, b) for d in (1, 3, 4, 6)]
            assert seq[0] > seq[1] > seq[2] > seq[3]

    def test_invalid_dimension(self):
        with pytest.raises(ValueError):
            magnetization(0, 1.0)
        with pytest.raises(ValueError):
            magnetization(-2, 1.0)


class TestMagnetizationSlope:
    def test_tanh_derivative(self):
        ref = 1.0 / math.cosh(1.0) ** 2
        assert abs(magnetization_slope(1, 1.0) - ref) <= 1e-12

    def test_analytic_limits_at_zero(self):
        assert magnetization_slope(4, 0.0) == 0.25
        assert abs(magnetization_slope(3, 0.0) - 1.0 / 3.0) <= 1e-15

    def test_finite_difference_oracle(self):
        # central differences carry an eps/h ~ 1e-11 rounding floor of their
        # own; the relative criterion applies only above that noise scale
        h = 1e-5
        for d in (1, 3, 4, 6):
            for b in (0.3, 1.0, 2.5, 7.0, 20.0):
                fd = (magnetization(d, b + h) - magnetization(d, b - h)) / (2.0 * h)
                got = magnetization_slope(d, b)
                assert abs(got - fd) <= max(1e-8 * abs(fd), 2e-10)

    def test_even(self):
        assert magnetization_slope(4, -1.3) == magnetization_slope(4, 1.3)


class TestHeatCapacity:
    def test_tanh_law_decays(self):
        assert heat_capacity(1, 10.0) < 1e-3

    def test_ratio_law_low_temperature_limit(self):
        values = [heat_capacity(4, b) for b in (50.0, 100.0, 200.0)]
        for v in values:
            assert abs(v - 1.5) <= 0.02 * 1.5
        gaps = [abs(v - 1.5) for v in values]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_zero_prefactor(self):
        assert heat_capacity(4, 0.0) == 0.0

    def test_negative_beta_rejected(self):
        with pytest.raises(ValueError):
            heat_capacity(4, -1.0)
