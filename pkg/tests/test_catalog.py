"""Named distributions: parameter maps, textbook forms and closed-form moments."""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from gemdist import model as gm
from gemdist.catalog import (
    CATALOG,
    NAMES,
    NamedDistribution,
    analytic_mean,
    analytic_moments,
    analytic_variance,
    catalog_pdf,
    classical_pdf,
    has_moment_table,
    lognormal_source,
    reduction_check,
    to_gem,
    transformed_gamma_cdf_dlambda,
)
from gemdist.errors import DomainError, RangeViolation, UnsupportedMapping
from gemdist.special import reg_lower

# scipy.stats equivalents, an oracle independent of both code paths
SCIPY = {
    "normal_std": ({}, stats.norm()),
    "error_fn": ({"h": 2.0}, stats.norm(scale=1 / (2.0 * math.sqrt(2)))),
    "exponential": ({"lambda": 2.0}, stats.expon(scale=0.5)),
    "gamma": ({"p": 3.0, "lambda": 2.0}, stats.gamma(3.0, scale=0.5)),
    "weibull": ({"a": 1.0, "b": 2.5}, stats.weibull_min(2.5)),
    "chi_square": ({"nu": 5.0}, stats.chi2(5.0)),
    "rayleigh": ({"sigma": 1.7}, stats.rayleigh(scale=1.7)),
    "maxwell": ({}, stats.maxwell()),
    "nakagami": ({"mu": 1.5, "omega": 2.0}, stats.nakagami(1.5, scale=math.sqrt(2.0))),
    "generalized_gamma": ({"a": 2.0, "d": 3.0, "p": 1.5}, stats.gengamma(2.0, 1.5, scale=2.0)),
    "normal": ({"mu": 1.0, "sigma": 2.0}, stats.norm(1.0, 2.0)),
    "lognormal": ({"mu": 0.3, "sigma": 0.6}, stats.lognorm(0.6, scale=math.exp(0.3))),
    "laplace": ({"a": -1.0, "b": 0.5}, stats.laplace(-1.0, 0.5)),
    "exponential_2p": ({"lambda": 2.0, "gamma": 1.0}, stats.expon(loc=1.0, scale=0.5)),
    "gamma_3p": ({"lambda": 1.5, "p": 2.5, "gamma": 0.5}, stats.gamma(2.5, loc=0.5, scale=1 / 1.5)),
    "weibull_3p": ({"a": 1.0, "b": 1.8, "gamma": -1.0}, stats.weibull_min(1.8, loc=-1.0)),
    "pearson_iii": ({"a": 2.0, "b": 1.5, "p": 2.0}, stats.gamma(2.0, loc=2.0, scale=1.5)),
    # (lambda x)^alpha ~ gamma(r): generalized gamma with shape r, power alpha, scale 1/lambda
    "transformed_gamma": ({"lambda": 1.5, "alpha": 2.0, "r": 1.5},
                          stats.gengamma(1.5, 2.0, scale=1 / 1.5)),
}


class TestCatalog:
    def test_eighteen_rows(self):
        assert len(NAMES) == 18
        assert set(SCIPY) == set(NAMES)

    @pytest.mark.parametrize("name", NAMES)
    def test_textbook_form_matches_scipy(self, name):
        params, ref = SCIPY[name]
        x = np.linspace(*ref.ppf([0.001, 0.999]), 80)
        np.testing.assert_allclose(classical_pdf(name, x, params), ref.pdf(x), rtol=1e-12)

    @pytest.mark.parametrize("name", NAMES)
    def test_family_form_matches_scipy(self, name):
        params, ref = SCIPY[name]
        x = np.linspace(*ref.ppf([0.001, 0.999]), 80)
        np.testing.assert_allclose(catalog_pdf(name, x, params), ref.pdf(x), rtol=1e-12)

    @pytest.mark.parametrize("name", [n for n in NAMES if n != "lognormal"])
    def test_family_cdf_matches_scipy(self, name):
        from gemdist.cdf import cdf

        params, ref = SCIPY[name]
        x = ref.ppf(np.linspace(0.01, 0.99, 15))
        np.testing.assert_allclose(cdf(to_gem(name, params), x), ref.cdf(x), rtol=1e-11)

    def test_lognormal_has_no_direct_map(self):
        with pytest.raises(UnsupportedMapping):
            to_gem("lognormal", {"mu": 0.0, "sigma": 1.0})
        assert lognormal_source(0.5, 2.0).variant == "III"

    def test_parameter_checks(self):
        with pytest.raises(DomainError):
            NamedDistribution("cauchy", {})
        with pytest.raises(DomainError):
            NamedDistribution("gamma", {"p": 2.0})
        with pytest.raises(DomainError):
            NamedDistribution("gamma", {"p": 2.0, "lambda": 1.0, "k": 3.0})
        with pytest.raises(RangeViolation):
            NamedDistribution("gamma", {"p": -2.0, "lambda": 1.0})
        with pytest.raises(RangeViolation):
            NamedDistribution("normal", {"mu": 0.0, "sigma": 0.0})

    def test_location_parameters_unrestricted_where_allowed(self):
        assert to_gem("weibull_3p", {"a": 1.0, "b": 2.0, "gamma": -5.0}).a == -5.0
        with pytest.raises(RangeViolation):
            to_gem("exponential_2p", {"lambda": 1.0, "gamma": -1.0})

    def test_moment_table_flags(self):
        flagged = {n for n in NAMES if has_moment_table(n)}
        assert "maxwell" in flagged and "nakagami" not in flagged
        assert CATALOG["pearson_iii"].variant == "IV"


class TestMoments:
    @pytest.mark.parametrize("name", [n for n in NAMES if n != "lognormal"])
    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_closed_form_vs_scipy(self, name, j):
        params, ref = SCIPY[name]
        np.testing.assert_allclose(analytic_moments(name, j, params), ref.moment(j),
                                   rtol=1e-9, atol=1e-12)

    @pytest.mark.parametrize("name", [n for n in NAMES if n != "lognormal"])
    def test_family_moments_match_closed_form(self, name):
        params, _ = SCIPY[name]
        mdl = to_gem(name, params)
        for j in range(1, 5):
            np.testing.assert_allclose(gm.raw_moment(mdl, j), analytic_moments(name, j, params),
                                       rtol=1e-11, atol=1e-13)
        np.testing.assert_allclose(gm.mean(mdl), analytic_mean(name, params), rtol=1e-12, atol=1e-14)
        np.testing.assert_allclose(gm.variance(mdl), analytic_variance(name, params), rtol=1e-11)

    def test_lognormal_moments(self):
        params, ref = SCIPY["lognormal"]
        for j in (1, 2, 3):
            np.testing.assert_allclose(analytic_moments("lognormal", j, params), ref.moment(j),
                                       rtol=1e-12)

    def test_maxwell_literals(self):
        np.testing.assert_allclose(analytic_mean("maxwell"), 2 * math.sqrt(2 / math.pi), rtol=1e-15)
        np.testing.assert_allclose(analytic_moments("maxwell", 2), 3.0, rtol=1e-15)
        np.testing.assert_allclose(analytic_variance("maxwell"), (3 * math.pi - 8) / math.pi,
                                   rtol=1e-15)


class TestReductions:
    def test_collapse_at_unit_shape(self):
        rep = reduction_check(1.0, theta=2.0)
        for v in rep.values.values():
            np.testing.assert_allclose(v, rep.values["exponential"], rtol=1e-14)
        assert rep.max_discrepancy <= 1e-15

    @pytest.mark.parametrize("k,theta", [(2.5, 1.7), (0.6, 0.8)])
    def test_forms_match_family_members(self, k, theta):
        rep = reduction_check(k, theta=theta, d=1.7, r=2.2, gamma_shape=1.3)
        for name in ("exponential", "gamma", "weibull", "generalized_gamma", "transformed_gamma"):
            scale = float(np.max(rep.values[name]))
            assert rep.model_discrepancy[name] <= 1e-13 * scale, name
        assert rep.max_discrepancy > 1e-3

    def test_scale_shape_form_normalized_only_on_unit_axes(self):
        def mass(k, theta):
            f = lambda x: float(reduction_check(k, theta=theta, gamma_shape=1.3,
                                                grid=np.array([x])).values["gem_ii"][0])
            return integrate.quad(f, 0, np.inf, limit=200)[0]

        np.testing.assert_allclose(mass(1.0, 2.5), 1.0, rtol=1e-8)
        np.testing.assert_allclose(mass(2.0, 1.0), 1.0, rtol=1e-8)
        assert abs(mass(2.0, 2.5) - 1.0) > 1e-2

    def test_transformed_gamma_derivative(self):
        lam, al, r, x = 1.3, 1.7, 2.2, 0.9
        h = 1e-6
        fd = (reg_lower(r, ((lam + h) * x) ** al) - reg_lower(r, ((lam - h) * x) ** al)) / (2 * h)
        np.testing.assert_allclose(transformed_gamma_cdf_dlambda(lam, al, r, x), fd, rtol=1e-8)
