import math
from functools import partial

import pytest

from dtpcap.distributions import (
    delta_lambda,
    digamma_normalizer,
    modified_digamma,
    poisson_pmf,
)
from dtpcap.divergence import (
    KlGapCurve,
    kl_brute_force,
    kl_gap_curve,
    kl_gap_digamma,
    kl_gap_modified,
    kl_poisson_digamma_exact,
    kl_poisson_modified_exact,
)

from oracles import kl_poisson_poisson

# frozen oracle values
E1_AT_1 = 0.21938393439552027
GAP_MOD_2_01 = 0.07053579947525739
GAP_DIG_2 = 0.09780102141612224


class TestKlGapDigamma:
    def test_zero(self):
        assert kl_gap_digamma(0.0) == 0.0

    def test_at_one(self):
        assert kl_gap_digamma(1.0) == pytest.approx(E1_AT_1, rel=1e-13)

    def test_exponentially_small(self):
        assert 0.0 < kl_gap_digamma(50.0) < 1e-20


class TestKlGapModified:
    @pytest.mark.parametrize("lam", [0.1, 1.0, 5.0])
    def test_vanishes_at_lambda(self, lam):
        assert kl_gap_modified(lam, lam) == 0.0

    def test_zero_dark_current_collapses(self):
        for z in (0.0, 0.3, 2.0, 10.0):
            assert kl_gap_modified(z, 0.0) == kl_gap_digamma(z)

    def test_frozen_point(self):
        assert kl_gap_modified(2.0, 0.1) == pytest.approx(GAP_MOD_2_01, rel=1e-12)
        assert kl_gap_modified(2.0, 0.1) < kl_gap_digamma(2.0)

    def test_negative_below_lambda(self):
        assert kl_gap_modified(0.01, 1.0) < 0.0


class TestExactFormulas:
    def test_zero_intensity(self):
        dist = digamma_normalizer(0.5)
        assert kl_poisson_digamma_exact(0.0, 0.5) == pytest.approx(-math.log(dist.y0), rel=1e-14)

    @pytest.mark.parametrize("z,q", [(2.0, 0.5), (20.0, 0.9)])
    def test_digamma_exact_vs_brute(self, z, q):
        dist = digamma_normalizer(q)
        exact = kl_poisson_digamma_exact(z, q)
        brute = kl_brute_force(z, dist.pmf)
        assert abs(exact - brute) <= 1e-8

    def test_delta_one_collapses_to_digamma(self):
        for z in (0.0, 0.5, 3.0, 12.0):
            assert kl_poisson_modified_exact(z, 0.7, 1.0) == pytest.approx(
                kl_poisson_digamma_exact(z, 0.7), rel=1e-13
            )

    def test_modified_exact_vs_brute(self):
        delta = delta_lambda(0.1)
        dist = modified_digamma(0.5, delta)
        exact = kl_poisson_modified_exact(2.0, 0.5, delta)
        brute = kl_brute_force(2.0, dist.pmf)
        assert abs(exact - brute) <= 1e-8

    def test_gap_vanishes_on_the_line_at_lambda(self):
        # at z = lam the divergence meets its affine majorant exactly
        lam, q = 0.1, 0.5
        delta = delta_lambda(lam)
        dist = modified_digamma(q, delta)
        kl = kl_poisson_modified_exact(lam, q, delta)
        line = -math.log(dist.alpha) - lam * math.log(q)
        assert kl == pytest.approx(line, abs=1e-12)


class TestBruteForce:
    def test_self_divergence_is_zero(self):
        assert abs(kl_brute_force(3.0, partial(poisson_pmf, 3.0))) <= 1e-10

    def test_poisson_vs_poisson_closed_form(self):
        got = kl_brute_force(1.0, partial(poisson_pmf, 2.0))
        assert got == pytest.approx(kl_poisson_poisson(1.0, 2.0), abs=1e-10)
        assert got == pytest.approx(1.0 + math.log(0.5), abs=1e-10)

    def test_rejects_zero_reference(self):
        with pytest.raises(ValueError):
            kl_brute_force(1.0, partial(poisson_pmf, 0.0))


class TestKlGapCurve:
    def test_constructor_and_helper(self):
        curve = kl_gap_curve([0.5, 1.0, 2.0], 0.1)
        assert curve.z_grid == (0.5, 1.0, 2.0)
        assert curve.gap_values[1] == kl_gap_modified(1.0, 0.1)

    def test_rejects_bad_grids(self):
        with pytest.raises(ValueError):
            KlGapCurve(z_grid=(1.0, 1.0), gap_values=(0.0, 0.0))
        with pytest.raises(ValueError):
            KlGapCurve(z_grid=(1.0, 2.0), gap_values=(0.0,))
