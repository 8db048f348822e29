import math

import pytest

from dtpcap.special import (
    EULER_GAMMA,
    digamma_int,
    e1_continued_fraction,
    e1_power_series,
    euler_gamma,
    exp_integral_e1,
    g_exponent,
    log_factorial,
    scaled_e1,
)

from oracles import e1_quadrature

# frozen from the quadrature / series / continued-fraction oracles
E1_AT_1 = 0.21938393439552027
E1_AT_01 = 1.8229239584193906
E1_AT_10 = 4.1569689296853243e-06
SCALED_E1_AT_1 = 0.5963473623231941


def log_grid(lo, hi, n):
    ratio = hi / lo
    return [lo * ratio ** (i / (n - 1)) for i in range(n)]


class TestEulerGamma:
    def test_value(self):
        assert euler_gamma() == 0.5772156649015329

    def test_exp_one_plus_gamma(self):
        # used inside the q parameter choice
        assert math.exp(1.0 + EULER_GAMMA) == pytest.approx(4.8414567889923683, rel=1e-15)

    def test_digamma_consistency(self):
        assert digamma_int(1) == -EULER_GAMMA


class TestE1:
    @pytest.mark.parametrize(
        "z,expected",
        [(1.0, E1_AT_1), (0.1, E1_AT_01), (10.0, E1_AT_10)],
    )
    def test_frozen_values(self, z, expected):
        assert exp_integral_e1(z) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("z", [0.01, 0.3, 0.9, 1.1, 3.0, 25.0, 80.0])
    def test_against_quadrature(self, z):
        assert exp_integral_e1(z) == pytest.approx(e1_quadrature(z), rel=1e-11)

    def test_regimes_agree_near_crossover(self):
        for z in log_grid(0.5, 2.0, 50):
            a = e1_power_series(z)
            b = e1_continued_fraction(z)
            assert abs(a - b) <= 1e-12 * abs(b)

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            exp_integral_e1(bad)


class TestScaledE1:
    def test_at_one(self):
        assert scaled_e1(1.0) == pytest.approx(SCALED_E1_AT_1, rel=1e-13)

    def test_large_argument_bracket(self):
        v = scaled_e1(1000.0)
        assert 1.0 / 1001.0 < v < 1.0 / 1000.0

    def test_matches_unscaled(self):
        for z in (0.2, 0.7, 1.5, 5.0):
            assert scaled_e1(z) == pytest.approx(math.exp(z) * exp_integral_e1(z), rel=1e-13)

    def test_log_lower_bound(self):
        # e^z E1(z) > ln(1 + 2/z)/2 over the whole working range
        for z in log_grid(1e-6, 100.0, 200):
            assert scaled_e1(z) > 0.5 * math.log1p(2.0 / z)

    def test_derivative_positivity_and_monotone_f(self):
        prev = None
        for z in log_grid(1e-6, 100.0, 200):
            s = scaled_e1(z)
            assert (1.0 + z) * s >= 1.0 - 1e-12
            f = z * s
            if prev is not None:
                assert f >= prev - 1e-12
            prev = f


class TestDigammaInt:
    def test_small_values(self):
        assert digamma_int(1) == pytest.approx(-0.5772156649015329, abs=1e-16)
        assert digamma_int(2) == pytest.approx(0.4227843350984671, rel=1e-15)
        assert digamma_int(5) == pytest.approx(1.5061176684318003, rel=1e-15)

    def test_recurrence_sampled(self):
        y = 1
        while y <= 1_000_000:
            assert abs(digamma_int(y + 1) - digamma_int(y) - 1.0 / y) <= 1e-14
            y = y * 3 + 1

    def test_recurrence_at_switch(self):
        # harmonic-sum regime hands over to the asymptotic expansion at 64
        for y in (63, 64, 65, 66):
            assert abs(digamma_int(y + 1) - digamma_int(y) - 1.0 / y) <= 1e-14

    @pytest.mark.parametrize("bad", [0, -3, 1.5, "2"])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            digamma_int(bad)


class TestGExponent:
    def test_zero_branch(self):
        assert g_exponent(0) == 0.0

    def test_small_values(self):
        assert g_exponent(1) == -EULER_GAMMA
        assert g_exponent(3) == pytest.approx(2.7683530052954014, rel=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            g_exponent(-1)


class TestLogFactorial:
    def test_trivial(self):
        assert log_factorial(0) == 0.0
        assert log_factorial(1) == 0.0

    def test_ten(self):
        assert log_factorial(10) == pytest.approx(15.104412573075516, rel=1e-15)

    def test_table_region_vs_lgamma(self):
        for y in (2, 17, 100, 513, 1024):
            assert log_factorial(y) == pytest.approx(math.lgamma(y + 1.0), rel=1e-14)

    def test_beyond_table_vs_prefix_sum(self):
        for y in (1025, 2048, 10_000):
            direct = math.fsum(math.log(k) for k in range(1, y + 1))
            assert abs(log_factorial(y) - direct) <= max(1e-12, 1e-14 * direct)

    def test_domain(self):
        with pytest.raises(ValueError):
            log_factorial(-1)
