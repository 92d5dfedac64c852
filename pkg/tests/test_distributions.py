import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greedfear import distributions as d
from greedfear.numerics import DomainError, cf_to_pdf, integrate

from conftest import ks_statistic

ALL_SPECS = [
    d.Laplace(0.0, 1.0),
    d.Laplace(0.3, 1.2),
    d.Laplace(-1.0, 0.4),
    d.Logistic(0.0, 1.0),
    d.Logistic(-1.0, 0.7),
    d.Logistic(2.0, 0.2),
    d.Gumbel(0.0, 1.0),
    d.Gumbel(0.5, 2.0),
    d.Gumbel(-0.3, 0.5),
    d.NegGumbel(0.0, 1.0),
    d.NegGumbel(1.0, 0.5),
    d.NegGumbel(-0.5, 2.0),
    d.DoublePareto(2.0),
    d.DoublePareto(4.5),
    d.DoublePareto(7.0),
    d.Cauchy(1.0),
    d.Cauchy(2.5),
    d.Cauchy(0.3),
    d.Gaussian(0.0, 1.0),
    d.Gaussian(1.0, 2.0),
    d.Gaussian(-0.5, 0.3),
    d.Weibull(0.5, 1.0),
    d.Weibull(1.5, 2.0),
    d.Weibull(3.0, 0.7),
    d.GenGamma(0.8, 2.0),
    d.GenGamma(-0.8, 2.0),
    d.GenGamma(1.5, 1.0),
    d.Uniform(-1.0, 1.0),
    d.Uniform(0.0, 3.0),
    d.Uniform(-2.0, -0.5),
]


def _spec_id(spec):
    return repr(spec)


class TestPdfCdf:
    def test_laplace_pdf_at_zero(self):
        assert d.Laplace(0, 1).pdf(0.0) == pytest.approx(0.5, abs=1e-14)

    def test_logistic_pdf_at_zero(self):
        assert d.Logistic(0, 1).pdf(0.0) == pytest.approx(0.25, abs=1e-14)

    def test_double_pareto_pdf_at_zero(self):
        assert d.DoublePareto(2.0).pdf(0.0) == pytest.approx(0.5, abs=1e-14)

    def test_laplace_cdf_at_zero(self):
        assert d.Laplace(0, 1).cdf(0.0) == pytest.approx(0.5, abs=1e-14)

    def test_neggumbel_cdf_at_zero(self):
        assert d.NegGumbel(0, 1).cdf(0.0) == pytest.approx(1 - math.exp(-1), abs=1e-14)

    def test_cauchy_cdf_at_zero(self):
        assert d.Cauchy(1.0).cdf(0.0) == pytest.approx(0.5, abs=1e-14)

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=_spec_id)
    def test_pdf_integrates_to_one(self, spec):
        lo, hi = spec.support()
        assert integrate(spec.pdf, lo, hi) == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=_spec_id)
    def test_cdf_monotone(self, spec):
        xs = [spec.quantile(u) for u in np.linspace(0.01, 0.99, 25)]
        vals = [spec.cdf(x) for x in xs]
        assert all(a <= b + 1e-14 for a, b in zip(vals, vals[1:]))


class TestQuantile:
    def test_logistic_median(self):
        assert d.Logistic(1.7, 0.4).quantile(0.5) == pytest.approx(1.7, abs=1e-12)

    def test_double_pareto_median(self):
        assert d.DoublePareto(3.0).quantile(0.5) == pytest.approx(0.0, abs=1e-12)

    def test_laplace_round_trip(self):
        spec = d.Laplace(0, 1)
        assert spec.quantile(spec.cdf(0.7)) == pytest.approx(0.7, abs=1e-10)

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=_spec_id)
    def test_cdf_quantile_round_trip(self, spec):
        for u in np.arange(0.01, 1.0, 0.07):
            assert spec.cdf(spec.quantile(float(u))) == pytest.approx(float(u), abs=1e-9)

    @pytest.mark.parametrize("u", [0.0, 1.0, -0.2, 1.5])
    def test_quantile_domain(self, u):
        with pytest.raises(DomainError):
            d.Gaussian(0, 1).quantile(u)


class TestCf:
    def test_laplace_cf(self):
        assert d.Laplace(0, 1).cf(1.0) == pytest.approx(0.5 + 0j, abs=1e-14)

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=_spec_id)
    def test_cf_at_zero(self, spec):
        assert spec.cf(0.0) == pytest.approx(1.0 + 0j, abs=1e-12)

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=_spec_id)
    def test_cf_bounded_and_symmetric(self, spec):
        for theta in (0.3, 1.0, 4.0):
            v = spec.cf(theta)
            assert abs(v) <= 1.0 + 1e-10
            assert spec.cf(-theta) == pytest.approx(v.conjugate(), abs=1e-10)

    def test_neggumbel_cf_modulus(self):
        assert abs(d.NegGumbel(0, 1).cf(1.0)) == pytest.approx(
            0.521564046864940, abs=1e-12
        )

    @pytest.mark.parametrize(
        "spec",
        [d.Laplace(0.2, 1.2), d.Logistic(-0.3, 1.1), d.NegGumbel(0.4, 0.9), d.Gaussian(0.1, 1.3)],
        ids=_spec_id,
    )
    def test_cf_inversion_recovers_pdf(self, spec):
        scale = math.sqrt(spec.moments().variance)
        center = spec.quantile(0.5)
        for x in np.linspace(center - 5 * scale, center + 5 * scale, 41):
            assert cf_to_pdf(spec.cf, float(x)) == pytest.approx(
                spec.pdf(float(x)), abs=1e-8
            )


class TestMgf:
    def test_logistic_near_zero(self):
        assert d.Logistic(0, 0.5).mgf(1e-12) == pytest.approx(1.0, abs=1e-9)

    def test_neggumbel_gamma_identity(self):
        assert d.NegGumbel(0, 1).mgf(1.0) == pytest.approx(1.0, abs=1e-14)

    def test_laplace_domain(self):
        with pytest.raises(DomainError):
            d.Laplace(0, 1).mgf(2.0)

    def test_domain_error_names_interval(self):
        with pytest.raises(DomainError, match="1"):
            d.Logistic(0, 1).mgf(1.5)


class TestMoments:
    def test_laplace(self):
        m = d.Laplace(0, 1.3).moments()
        assert m.mean == 0.0
        assert m.variance == pytest.approx(2 * 1.3**2, abs=1e-14)
        assert m.skewness == 0.0
        assert m.excess_kurtosis == 3.0

    def test_logistic(self):
        m = d.Logistic(0.4, 0.9).moments()
        assert m.mean == pytest.approx(0.4)
        assert m.variance == pytest.approx(0.9**2 * math.pi**2 / 3, abs=1e-14)
        assert m.excess_kurtosis == pytest.approx(1.2, abs=1e-14)

    def test_neggumbel(self):
        m = d.NegGumbel(0.5, 1.1).moments()
        assert m.mean == pytest.approx(0.5 - 1.1 * 0.5772156649015329, abs=1e-12)
        assert m.skewness == pytest.approx(-1.1395470994046488, abs=1e-10)
        assert m.excess_kurtosis == pytest.approx(2.4, abs=1e-14)

    def test_undefined_marked_not_nan(self):
        m = d.Cauchy(1.0).moments()
        assert m.mean is None and m.variance is None
        m2 = d.DoublePareto(2.5).moments()
        assert m2.variance is None

    @pytest.mark.parametrize(
        "spec",
        [s for s in ALL_SPECS if not isinstance(s, d.Cauchy)],
        ids=_spec_id,
    )
    def test_closed_form_vs_quadrature(self, spec):
        m = spec.moments()
        nm = d.numeric_moments(spec)
        for a, b in [
            (m.mean, nm.mean),
            (m.variance, nm.variance),
            (m.skewness, nm.skewness),
            (m.excess_kurtosis, nm.excess_kurtosis),
        ]:
            if a is None or b is None:
                continue
            assert a == pytest.approx(b, abs=1e-6 * (1 + abs(a)))


class TestInfiniteDivisibility:
    @pytest.mark.parametrize(
        "spec,expected",
        [
            (d.Laplace(0, 1), True),
            (d.Logistic(0, 1), True),
            (d.Gumbel(0, 1), True),
            (d.NegGumbel(0, 1), True),
            (d.DoublePareto(2.0), True),
            (d.Cauchy(1.0), True),
            (d.Gaussian(0, 1), True),
            (d.Weibull(0.5, 1.0), True),
            (d.Weibull(1.0, 1.0), True),
            (d.Weibull(2.0, 1.0), False),
            (d.GenGamma(0.8, 1.0), True),
            (d.GenGamma(-1.5, 1.0), False),
            (d.Uniform(-1, 1), False),
        ],
    )
    def test_predicate(self, spec, expected):
        assert spec.is_infinitely_divisible() is expected


class TestSampling:
    def test_determinism(self):
        a = d.Logistic(0, 1).sample(1000, seed=5)
        b = d.Logistic(0, 1).sample(1000, seed=5)
        assert np.array_equal(a, b)

    def test_laplace_mean(self):
        s = d.Laplace(0, 1).sample(10**6, seed=11)
        assert abs(s.mean()) < 0.005

    def test_logistic_ks(self):
        s = d.Logistic(0, 1).sample(10**4, seed=3)
        assert ks_statistic(s, d.Logistic(0, 1).cdf) < 0.02

    def test_laplace_as_exponential_difference(self, rng):
        b = 0.8
        n = 10**4
        pos = rng.exponential(scale=b, size=n)
        neg = rng.exponential(scale=b, size=n)
        assert ks_statistic(pos - neg, d.Laplace(0, b).cdf) < 0.02


class TestValidationAndJson:
    @pytest.mark.parametrize(
        "bad",
        [
            lambda: d.Laplace(0, -1),
            lambda: d.Logistic(0, 0.0),
            lambda: d.DoublePareto(1.0),
            lambda: d.Cauchy(-2.0),
            lambda: d.Gaussian(0, 0),
            lambda: d.Weibull(-1, 1),
            lambda: d.GenGamma(0.0, 1),
            lambda: d.Uniform(1, 1),
        ],
    )
    def test_constructor_validation(self, bad):
        with pytest.raises(ValueError):
            bad()

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=_spec_id)
    def test_json_round_trip(self, spec):
        assert d.from_json(spec.to_json()) == spec

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            d.from_json({"family": "stable", "alpha": 1.5})

    def test_unknown_param(self):
        with pytest.raises(ValueError):
            d.from_json({"family": "laplace", "m": 0, "b": 1, "nu": 2})


@given(
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=0.1, max_value=3),
    st.floats(min_value=0.01, max_value=0.99),
)
@settings(max_examples=60, deadline=None)
def test_logistic_quantile_property(m, rho, u):
    spec = d.Logistic(m, rho)
    assert spec.cdf(spec.quantile(u)) == pytest.approx(u, abs=1e-9)
