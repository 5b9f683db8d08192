import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdist.errors import IntegrationError
from qdist.numerics import (
    FitResult,
    Interval,
    QuadratureConfig,
    fit_log_linear,
    fit_power_law,
    hermite_psi,
    integrate_adaptive,
    invert_cdf,
)


class TestInterval:
    def test_orientation_enforced(self):
        with pytest.raises(ValueError):
            Interval(1.0, 1.0)
        with pytest.raises(ValueError):
            Interval(2.0, -3.0)

    def test_infinite_endpoints_allowed(self):
        iv = Interval(-math.inf, math.inf)
        assert not iv.finite
        assert iv.contains(Interval(0.0, 1.0))


class TestQuadrature:
    def test_gaussian_integral(self):
        val = integrate_adaptive(lambda x: math.exp(-x * x), Interval(-math.inf, math.inf))
        assert val == pytest.approx(math.sqrt(math.pi), abs=1e-10)

    def test_box_density_normalized(self):
        val = integrate_adaptive(lambda x: 2.0 * math.sin(math.pi * x) ** 2, Interval(0.0, 1.0))
        assert val == pytest.approx(1.0, abs=1e-12)

    def test_abs_sine_with_kinks(self):
        # antiderivative over half-periods gives exactly 2/pi
        val = integrate_adaptive(
            lambda x: abs(math.sin(2.0 * math.pi * x)),
            Interval(0.0, 1.0),
            singularities=[0.5],
        )
        assert val == pytest.approx(2.0 / math.pi, abs=1e-12)

    def test_budget_exhaustion_carries_partial(self):
        cfg = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-14, max_subdivisions=2)
        with pytest.raises(IntegrationError) as err:
            integrate_adaptive(lambda x: abs(math.sin(8 * math.pi * x)), Interval(0.0, 1.0), cfg)
        assert err.value.partial is not None

    def test_config_validation(self):
        with pytest.raises(ValueError):
            QuadratureConfig(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureConfig(max_subdivisions=0)

    def test_infinite_domain_with_interior_points(self):
        val = integrate_adaptive(
            lambda x: math.exp(-abs(x)), Interval(-math.inf, math.inf), singularities=[0.0]
        )
        assert val == pytest.approx(2.0, abs=1e-10)


class TestInvertCdf:
    def test_uniform_quantile(self):
        assert invert_cdf(lambda x: min(1.0, max(0.0, x)), 0.25) == pytest.approx(0.25, abs=1e-12)

    def test_box_ground_state_median(self):
        cdf = lambda x: min(1.0, max(0.0, x - math.sin(2 * math.pi * x) / (2 * math.pi)))
        assert invert_cdf(cdf, 0.5) == pytest.approx(0.5, abs=1e-10)

    def test_gaussian_median_is_zero(self):
        cdf = lambda x: 0.5 * (1.0 + math.erf(x))
        assert abs(invert_cdf(cdf, 0.5)) <= 1e-10

    def test_flat_segment_returns_infimum(self):
        def cdf(x):
            if x < 0.4:
                return x / 0.4 * 0.5
            if x <= 0.6:
                return 0.5
            return 0.5 + (x - 0.6) / 0.4 * 0.5

        assert invert_cdf(cdf, 0.5) == pytest.approx(0.4, abs=1e-10)

    @pytest.mark.parametrize("q", [0.0, 1.0, -0.2, 1.5])
    def test_domain_errors(self, q):
        with pytest.raises(ValueError):
            invert_cdf(lambda x: x, q)

    def test_roundtrip_identity_on_increasing_region(self):
        cdf = lambda x: 0.5 * (1.0 + math.erf(x))
        for q in (0.1, 0.31, 0.5, 0.77, 0.93):
            assert cdf(invert_cdf(cdf, q)) == pytest.approx(q, abs=1e-10)


def _simpson_norm(n, lim, m=40001):
    from scipy.integrate import simpson

    x = np.linspace(-lim, lim, m)
    return simpson(hermite_psi(n, x) ** 2, x=x)


class TestHermite:
    def test_ground_state_value(self):
        assert hermite_psi(0, 0.0) == pytest.approx(math.pi**-0.25, abs=1e-15)

    def test_first_state_odd(self):
        assert hermite_psi(1, 0.0) == 0.0

    def test_n50_normalized_against_quadrature_oracle(self):
        assert _simpson_norm(50, 15.0) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize(
        "m,n", [(0, 0), (3, 3), (100, 100), (0, 2), (7, 19), (40, 100)]
    )
    def test_orthonormality_spot_pairs(self, m, n):
        from scipy.integrate import simpson

        x = np.linspace(-18.0, 18.0, 40001)
        overlap = simpson(hermite_psi(m, x) * hermite_psi(n, x), x=x)
        assert overlap == pytest.approx(1.0 if m == n else 0.0, abs=1e-8)

    @settings(max_examples=40, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=1000),
        x=st.floats(min_value=-50.0, max_value=50.0, allow_nan=False),
    )
    def test_recurrence_residual(self, n, x):
        lhs = hermite_psi(n + 1, x)
        rhs = x * math.sqrt(2.0 / (n + 1)) * hermite_psi(n, x) - math.sqrt(
            n / (n + 1.0)
        ) * hermite_psi(n - 1, x)
        assert abs(lhs - rhs) < 1e-12

    def test_no_overflow_at_extreme_arguments(self):
        for x in (0.0, 137.0, 200.0, -200.0):
            v = hermite_psi(10_000, x)
            assert math.isfinite(v)

    def test_array_and_scalar_paths_agree(self):
        x = np.linspace(-30.0, 30.0, 257)
        arr = hermite_psi(137, x)
        for i in (0, 64, 128, 200, 256):
            assert arr[i] == pytest.approx(hermite_psi(137, float(x[i])), rel=1e-13, abs=1e-300)

    def test_subnormal_seed_survives(self):
        # seed underflows past |x| ~ 38; the rescaled recurrence must still
        # climb back to the oscillatory region
        v = hermite_psi(900, 40.0)
        assert math.isfinite(v) and abs(v) > 1e-6

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            hermite_psi(-1, 0.0)


class TestFits:
    def test_log_linear_exact(self):
        pts = [(n, 2.0 * math.log(n) + 1.0) for n in range(2, 11)]
        fit = fit_log_linear(pts)
        assert fit.params == pytest.approx((2.0, 1.0), abs=1e-12)
        assert fit.residual_rms == pytest.approx(0.0, abs=1e-12)
        assert fit.n_range == (2, 10)

    def test_log_linear_stability_under_perturbation(self):
        pts = [(n, math.log(n)) for n in range(2, 12)]
        pts[4] = (pts[4][0], pts[4][1] + 1e-6)
        fit = fit_log_linear(pts)
        assert fit.params[0] == pytest.approx(1.0, abs=1e-5)

    def test_log_linear_degenerate(self):
        with pytest.raises(ValueError):
            fit_log_linear([(3, 1.0), (3, 2.0), (3, 3.0)])

    def test_power_law_exact(self):
        pts = [(n, 3.0 * n**0.5) for n in (1, 2, 4, 9, 16, 30)]
        fit = fit_power_law(pts)
        assert fit.params == pytest.approx((3.0, 0.5), abs=1e-12)

    def test_power_law_box_decay(self):
        pts = [(n, 1.0 / (n * math.pi**2)) for n in range(1, 21)]
        fit = fit_power_law(pts)
        assert fit.params[1] == pytest.approx(-1.0, abs=1e-9)

    def test_power_law_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            fit_power_law([(1, 1.0), (2, -0.5), (3, 2.0)])

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            fit_log_linear([(1, 0.0), (2, 1.0)])

    def test_fit_result_validation(self):
        with pytest.raises(ValueError):
            FitResult((1.0, 2.0), -0.1, (1, 5))
