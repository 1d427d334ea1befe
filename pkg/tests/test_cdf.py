"""Distribution function, quantiles, hazard and sampling."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, stats

from gemdist import model as gm
from gemdist.cdf import (
    QuantileRequest,
    ccdf,
    cdf,
    cdf_param_derivatives,
    hazard,
    interval_cdf,
    median,
    quantile,
    sample,
)
from gemdist.errors import DomainError, UnsupportedVariant
from gemdist.model import GemModel

one_sided = st.builds(
    lambda m, n, beta, a, b: GemModel("IV", m, n, beta, a=a, b=b),
    st.floats(min_value=-0.8, max_value=6.0),
    st.floats(min_value=0.3, max_value=6.0),
    st.floats(min_value=0.1, max_value=5.0),
    st.floats(min_value=-10.0, max_value=10.0),
    st.floats(min_value=0.1, max_value=10.0),
)
symmetric = st.builds(
    lambda m, n, beta, a, b: GemModel("III", m, n, beta, a=a, b=b),
    st.sampled_from([0, 2, 4, Fraction(-2, 3), Fraction(2, 5)]),
    st.sampled_from([2, 4, Fraction(2, 3), Fraction(6, 5)]),
    st.floats(min_value=0.1, max_value=5.0),
    st.floats(min_value=-10.0, max_value=10.0),
    st.floats(min_value=0.1, max_value=10.0),
)
levels = st.floats(min_value=1e-10, max_value=1 - 1e-10)


class TestCdf:
    @pytest.mark.parametrize("mdl", [
        GemModel("II", 1.5, 0.7, 1.3),
        GemModel("I", 2, Fraction(2, 3), 0.9),
        GemModel("III", 0, 4, 0.5, a=1.0, b=2.0),
        GemModel("IV", -0.4, 2.2, 0.6, a=-1.0, b=0.5),
    ])
    def test_against_quadrature(self, mdl):
        lo = mdl.support[0]
        for q in (0.01, 0.2, 0.5, 0.77, 0.99):
            x = quantile(mdl, q)
            start = lo if math.isfinite(lo) else -np.inf
            pts = [mdl.a] if start < mdl.a < x else None
            mass = integrate.quad(lambda s: float(gm.pdf(mdl, s)), start, x, points=pts,
                                  limit=400, epsabs=1e-13)[0] if pts is None else (
                integrate.quad(lambda s: float(gm.pdf(mdl, s)), start, mdl.a, limit=400)[0]
                + integrate.quad(lambda s: float(gm.pdf(mdl, s)), mdl.a, x, limit=400)[0])
            np.testing.assert_allclose(cdf(mdl, x), mass, rtol=1e-8, atol=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(st.one_of(one_sided, symmetric), st.floats(min_value=-30, max_value=30))
    def test_complement_and_bounds(self, mdl, x):
        F, Fc = cdf(mdl, x), ccdf(mdl, x)
        assert 0.0 <= F <= 1.0
        assert abs(F + Fc - 1.0) <= 2e-16

    @settings(max_examples=100, deadline=None)
    @given(symmetric, st.floats(min_value=0.0, max_value=30.0))
    def test_symmetric_reflection(self, mdl, d):
        # a -+ d rounds differently on each side; the tail amplifies a relative
        # change in z by n t, so the tolerance scales with t
        t = mdl.beta * (d / mdl.b) ** mdl.nf
        rtol = 1e-14 * (1.0 + mdl.nf * t) * (1.0 + abs(mdl.a) / max(d, 1e-300))
        np.testing.assert_allclose(cdf(mdl, mdl.a - d), ccdf(mdl, mdl.a + d), rtol=rtol, atol=0)

    def test_monotone(self):
        mdl = GemModel("IV", 0.3, 1.7, 0.8, a=2.0, b=3.0)
        x = np.linspace(1.0, 40.0, 500)
        assert np.all(np.diff(cdf(mdl, x)) >= 0.0)

    def test_gaussian_is_erf(self):
        mdl = GemModel("I", 0, 2, 0.5)
        x = np.linspace(-8, 8, 33)
        np.testing.assert_allclose(cdf(mdl, x), stats.norm.cdf(x), rtol=1e-14, atol=1e-300)

    def test_interval(self):
        mdl = GemModel("IV", 1.0, 1.0, 1.0, a=0.0, b=1.0)
        np.testing.assert_allclose(interval_cdf(mdl, 30.0, 31.0),
                                   stats.gamma.sf(30.0, 2) - stats.gamma.sf(31.0, 2), rtol=1e-12)
        with pytest.raises(DomainError):
            interval_cdf(mdl, 2.0, 1.0)

    def test_limits(self):
        mdl = GemModel("II", 1.0, 2.0, 1.0)
        assert cdf(mdl, -1.0) == 0.0
        assert cdf(mdl, math.inf) == 1.0
        assert ccdf(mdl, 0.0) == 1.0


class TestQuantile:
    @settings(max_examples=200, deadline=None)
    @given(st.one_of(one_sided, symmetric), levels)
    def test_round_trip(self, mdl, q):
        x = quantile(mdl, q)
        # compare on the smaller tail, where the probability is well conditioned;
        # x itself is only known to one ulp, worth f(x) * ulp(x) in probability
        slack = 4.0 * float(gm.pdf(mdl, x)) * np.spacing(abs(x))
        if q <= 0.5:
            np.testing.assert_allclose(cdf(mdl, x), q, rtol=1e-9, atol=slack)
        else:
            np.testing.assert_allclose(ccdf(mdl, x), 1.0 - q, rtol=1e-9, atol=slack)

    @pytest.mark.parametrize("lam", [0.5, 2.0])
    def test_exponential_closed_form(self, lam):
        mdl = GemModel("II", 0.0, 1.0, lam)
        for q in (1e-12, 0.3, 0.5, 1 - 1e-9):
            np.testing.assert_allclose(quantile(mdl, q), -math.log1p(-q) / lam, rtol=1e-14)

    def test_against_scipy_gamma(self):
        mdl = GemModel("II", 2.5, 1.0, 1.0)
        for q in (1e-8, 0.05, 0.5, 0.95, 1 - 1e-8):
            np.testing.assert_allclose(quantile(mdl, q), stats.gamma.ppf(q, 3.5), rtol=1e-10)

    def test_median_symmetric(self):
        assert median(GemModel("III", 2, 2, 1.0, a=-3.0, b=2.0)) == -3.0

    def test_bracket(self):
        mdl = GemModel("II", 1.0, 2.0, 1.0)
        x = quantile(mdl, QuantileRequest(0.3, bracket=(0.1, 5.0)))
        np.testing.assert_allclose(cdf(mdl, x), 0.3, rtol=1e-12)

    @pytest.mark.parametrize("q", [0.0, 1.0, -0.1, 1.5, math.nan])
    def test_level_domain(self, q):
        with pytest.raises(DomainError):
            QuantileRequest(q)


class TestHazard:
    def test_matches_ratio(self):
        mdl = GemModel("IV", 1.2, 1.5, 0.7, a=1.0, b=2.0)
        for x in (1.5, 3.0, 8.0):
            np.testing.assert_allclose(hazard(mdl, x), gm.pdf(mdl, x) / ccdf(mdl, x), rtol=1e-13)

    def test_weibull_far_tail(self):
        # h(t) = a b t^(b-1) stays exact where 1 - F underflows
        mdl = GemModel("II", 1.0, 2.0, 1.0)
        for t in (5.0, 30.0, 100.0):
            np.testing.assert_allclose(hazard(mdl, t), 2.0 * t, rtol=1e-11)

    def test_symmetric_rejected(self):
        with pytest.raises(UnsupportedVariant):
            hazard(GemModel("I", 0, 2, 0.5), 1.0)


class TestSampling:
    def test_reproducible(self):
        mdl = GemModel("II", 1.0, 2.0, 1.0)
        np.testing.assert_array_equal(sample(mdl, 50, seed=3), sample(mdl, 50, seed=3))

    @pytest.mark.parametrize("mdl", [GemModel("IV", 0.5, 1.5, 1.0, a=2.0, b=0.5),
                                     GemModel("III", 2, 2, 0.5, a=0.0, b=1.0)])
    def test_distribution(self, mdl):
        draws = sample(mdl, 2000, seed=11)
        res = stats.kstest(draws, lambda x: cdf(mdl, x))
        assert res.pvalue > 1e-3


class TestGradient:
    def test_conventions_agree_on_beta(self):
        mdl = GemModel("II", 1.5, 2.0, 0.8)
        g1 = cdf_param_derivatives(mdl, 1.2, "fixed_gamma")
        g2 = cdf_param_derivatives(mdl, 1.2, "fixed_m")
        assert g1.d_beta == g2.d_beta
        assert g1.d_m is None and g2.d_gamma is None
        assert g1.d_a is None

    def test_location_scale_relation(self):
        # F depends on (x - a)/b only, so dF/db = (x - a)/b * dF/da
        mdl = GemModel("IV", 0.5, 1.3, 1.0, a=1.0, b=2.0)
        g = cdf_param_derivatives(mdl, 4.0)
        np.testing.assert_allclose(g.d_b, 1.5 * g.d_a, rtol=1e-14)
        h = 1e-6
        fd = (cdf(mdl.replace(a=1.0 + h), 4.0) - cdf(mdl.replace(a=1.0 - h), 4.0)) / (2 * h)
        np.testing.assert_allclose(g.d_a, fd, rtol=1e-7)

    def test_bad_convention(self):
        with pytest.raises(ValueError):
            cdf_param_derivatives(GemModel("II", 1.0, 1.0, 1.0), 1.0, "other")
