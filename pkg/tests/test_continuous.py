import math

import numpy as np
import pytest

from choquetkit import (DivergenceError, IntervalUnion, Kernel,
                        LevelSetFunction, QuadratureConfig, QuadratureError,
                        RealCapacity, choquet_integral_real,
                        choquet_integral_real_grid,
                        choquet_integral_real_with_error, function_spec,
                        has_finite_integral, indicator_plateau,
                        integrate_adaptive, kernel_level_function,
                        kernel_normalizer, level_set_product,
                        product_level_function)

SQRT_M = RealCapacity.sqrt_lebesgue()


class TestProductLevelSets:
    def test_exp_neg_matches_displayed_interval(self):
        # f = exp(-t), Laplace kernel: [(nx + ln a)/(n-1), (nx - ln a)/(n+1)]
        spec = function_spec("exp_neg")
        n, x = 3.0, 0.4
        g = product_level_function(spec, Kernel.laplace(n, x))
        for alpha in (0.1, 0.3, math.exp(-x)):
            level = g.level(alpha)
            la = math.log(alpha)
            lo, hi = level.intervals[0]
            assert lo == pytest.approx((n * x + la) / (n - 1.0), abs=1e-12)
            assert hi == pytest.approx((n * x - la) / (n + 1.0), abs=1e-12)
        assert g.level(math.exp(-x) * 1.0001).is_empty

    def test_exp_neg_requires_decay(self):
        with pytest.raises(DivergenceError):
            product_level_function(function_spec("exp_neg", lam=2.0),
                                   Kernel.laplace(1.5, 0.0))

    def test_exp_neg_gauss_any_rate(self):
        spec = function_spec("exp_neg", lam=3.0)
        g = product_level_function(spec, Kernel.gauss(1.0, 0.0))
        assert g.sup_value == pytest.approx(math.exp(9.0 / 4.0), abs=1e-12)
        lv = g.level(1.0)
        assert not lv.is_empty

    def test_const_matches_bare_kernel(self):
        k = Kernel.laplace(2.0, -1.0)
        bare = kernel_level_function(k)
        prod = product_level_function(function_spec("e0"), k)
        for alpha in (0.2, 0.7, 1.0):
            assert prod.level(alpha) == bare.level(alpha)
        assert level_set_product(function_spec("e0"), k, 0.5) == bare.level(0.5)

    def test_abs_dev_annulus(self):
        n, x = 3.0, 0.5
        g = product_level_function(function_spec("abs_dev", center=x),
                                   Kernel.laplace(n, x))
        assert g.sup_value == pytest.approx(1.0 / (n * math.e), abs=1e-15)
        level = g.level(0.5 / (n * math.e))
        assert level.n_components == 2
        (a1, b1), (a2, b2) = level.intervals
        # symmetric annulus, and the profile really crosses alpha at the rims
        assert a1 == pytest.approx(2 * x - b2, abs=1e-10)
        assert b1 == pytest.approx(2 * x - a2, abs=1e-10)
        for r in (a2 - x, b2 - x):
            assert r * math.exp(-n * r) == pytest.approx(0.5 / (n * math.e), abs=1e-12)
        assert g.level(1.01 / (n * math.e)).is_empty

    def test_abs_dev_gauss_annulus(self):
        n, x = 2.0, 0.0
        g = product_level_function(function_spec("abs_dev", center=x),
                                   Kernel.gauss(n, x))
        assert g.sup_value == pytest.approx(1.0 / math.sqrt(2 * n * math.e), abs=1e-15)
        level = g.level(g.sup_value / 2)
        assert level.n_components == 2
        for a, b in level.intervals:
            for r in (abs(a), abs(b)):
                assert r * math.exp(-n * r * r) == pytest.approx(
                    g.sup_value / 2, abs=1e-12)

    def test_generic_pw_linear_profile(self):
        spec = function_spec("pw_linear",
                             knots=[(-1.0, 0.0), (0.0, 2.0), (1.0, 0.5), (2.0, 1.5)])
        k = Kernel.laplace(4.0, 0.25)
        g = product_level_function(spec, k)
        ts = np.linspace(-3.0, 4.0, 400)
        for alpha in (0.05, 0.3, 0.9, 1.4):
            level = g.level(alpha)
            for t in ts:
                t = float(t)
                gt = g.value(t)
                if abs(gt - alpha) > 1e-6:
                    assert level.contains(t) == (gt >= alpha), (t, gt, alpha)

    def test_generic_sqrt_profile(self):
        spec = function_spec("sqrt", shift=1.0)
        for k in (Kernel.laplace(3.0, 0.5), Kernel.gauss(3.0, 0.5)):
            g = product_level_function(spec, k)
            ts = np.linspace(-2.5, 3.5, 300)
            for alpha in (0.1, 0.6, 1.0):
                level = g.level(alpha)
                for t in ts:
                    t = float(t)
                    gt = g.value(t)
                    if abs(gt - alpha) > 1e-6:
                        assert level.contains(t) == (gt >= alpha)

    def test_nested_levels(self):
        specs = [
            product_level_function(function_spec("exp_neg"), Kernel.laplace(2.0, 0.3)),
            product_level_function(function_spec("abs_dev", center=0.3),
                                   Kernel.laplace(2.0, 0.3)),
            product_level_function(
                function_spec("pw_linear", knots=[(0.0, 1.0), (1.0, 3.0)]),
                Kernel.gauss(2.0, 0.3)),
        ]
        for g in specs:
            alphas = np.linspace(g.sup_value * 1e-3, g.sup_value * 0.999, 12)
            for a1, a2 in zip(alphas, alphas[1:]):
                assert g.level(float(a2)).issubset(g.level(float(a1)))

    def test_level_requires_positive_alpha(self):
        g = product_level_function(function_spec("exp_neg"), Kernel.laplace(2.0, 0.0))
        with pytest.raises(ValueError):
            g.level(0.0)

    def test_rejects_signed_function(self):
        with pytest.raises(ValueError):
            product_level_function(function_spec("e1"), Kernel.laplace(2.0, 0.0))


class TestQuadrature:
    def test_possibility_normalizer_exact_and_by_quadrature(self):
        k = Kernel.laplace(4.0, 1.0)
        mu = RealCapacity.possibility(k)
        assert kernel_normalizer(k, mu) == 1.0
        byquad = kernel_normalizer(k, mu, force_quadrature=True)
        assert byquad == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("n", [1, 2, 4, 16, 64])
    def test_sqrt_m_normalizer(self, n):
        k = Kernel.laplace(float(n), 0.7)
        c = kernel_normalizer(k, SQRT_M)
        assert c == pytest.approx(math.sqrt(math.pi / (2 * n)), rel=1e-6)

    def test_gauss_sqrt_m_normalizer_matches_quadrature_oracle(self):
        # oracle first: direct quadrature of the level-length integrand

        from scipy.integrate import quad
        for n in (1.0, 2.0, 8.0):
            oracle, _ = quad(lambda s: math.sqrt(2.0) * (s / n) ** 0.25 * math.exp(-s),
                             0, np.inf)
            closed = math.sqrt(2.0) * math.gamma(1.25) * n ** -0.25
            assert closed == pytest.approx(oracle, rel=1e-9)
            got = kernel_normalizer(Kernel.gauss(n, -0.4), SQRT_M)
            assert got == pytest.approx(closed, rel=1e-8)

    def test_plateau_single_layer(self):
        g = indicator_plateau(2.5, 0.0, 4.0)
        assert choquet_integral_real(g, SQRT_M) == pytest.approx(5.0, abs=1e-9)

    def test_zero_function(self):
        g = indicator_plateau(0.0, 0.0, 1.0)
        assert choquet_integral_real(g, SQRT_M) == 0.0

    def test_error_estimate_consistency(self):
        g = product_level_function(function_spec("abs_dev", center=0.0),
                                   Kernel.laplace(2.0, 0.0))
        loose = QuadratureConfig(abs_tol=1e-6, rel_tol=1e-5)
        tight = QuadratureConfig(abs_tol=5e-7, rel_tol=5e-6)
        v1, e1 = choquet_integral_real_with_error(g, SQRT_M, loose)
        v2, _ = choquet_integral_real_with_error(g, SQRT_M, tight)
        assert abs(v1 - v2) <= max(e1, 1e-12)

    def test_grid_engine_agrees(self):
        for mu in (SQRT_M, RealCapacity.possibility(Kernel.laplace(3.0, 0.2))):
            g = product_level_function(function_spec("exp_neg"),
                                       Kernel.laplace(3.0, 0.2))
            a = choquet_integral_real(g, mu)
            b = choquet_integral_real_grid(g, mu)
            assert a == pytest.approx(b, rel=1e-6, abs=1e-9)

    def test_monotone_in_capacity(self):
        # pointwise-dominated possibility kernels order the integrals
        g = product_level_function(function_spec("exp_neg"), Kernel.laplace(4.0, 0.5))
        small = RealCapacity.possibility(Kernel.laplace(4.0, 0.5))
        large = RealCapacity.possibility(Kernel.laplace(2.0, 0.5))
        assert (choquet_integral_real(g, small)
                <= choquet_integral_real(g, large) + 1e-9)

    def test_nonconvergence_raises_with_partial_value(self):
        cfg = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=10)
        with pytest.raises(QuadratureError) as err:
            integrate_adaptive(lambda t: abs(t - 1 / 3) ** -0.5, 0.0, 1.0, cfg)
        assert math.isfinite(err.value.value)
        assert err.value.error_estimate >= 0.0

    def test_infinite_sup_rejected(self):
        g = LevelSetFunction(lambda t: 1.0, lambda a: IntervalUnion.empty(),
                             math.inf)
        with pytest.raises(DivergenceError):
            choquet_integral_real(g, SQRT_M)

    def test_finiteness_probe(self):
        g = product_level_function(function_spec("exp_neg"), Kernel.laplace(2.0, 0.0))
        assert has_finite_integral(g, SQRT_M)
        bad = LevelSetFunction(lambda t: 1.0, lambda a: IntervalUnion.empty(),
                               math.inf)
        assert not has_finite_integral(bad, SQRT_M)
