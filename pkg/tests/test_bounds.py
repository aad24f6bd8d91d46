import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from korenblum import kernels
from korenblum import tolerances as tols
from korenblum.annulus import cstar_circle
from korenblum.bounds import (
    DEFAULT_GRIDS,
    UNBOUNDED,
    F_bound,
    GridSpec,
    f_n_factor,
    fg_ratio,
    fg_ratio_threshold,
    g_n_at_zero,
    g_n_factor,
    gamma_from_F,
    gamma_upper,
    verify_f_domination,
    verify_fg_product,
    verify_fn_bound,
    verify_gn_theta_max,
    verify_tail_bound,
    verify_tedious_bound,
)
from korenblum.errors import DomainError


class TestFactors:
    def test_fn_at_sqrt_c(self):
        c, n = 0.21, 2
        expected = (1 + c ** (2 * n)) ** 2 / (1 + c ** (2 * n - 1)) ** 2
        assert f_n_factor(math.sqrt(c), c, n) == pytest.approx(expected, rel=1e-15)

    def test_fn_small_c(self):
        assert f_n_factor(0.5, 1e-9, 1) == pytest.approx(1.0, abs=1e-8)

    def test_fn_bound_point(self):
        c = 0.21
        assert f_n_factor(0.5, c, 1) <= (1 + c**3) / (1 + c)

    def test_gn_small_c(self):
        assert g_n_factor(0.5, 1e-9, 1.3, 2) == pytest.approx(1.0, abs=1e-8)

    def test_gn_theta_zero_closed_form(self):
        rho, c = 0.5, 0.21
        expected = (1 - c**2) ** 2 / ((1 - rho**2) * (1 - c**2 / rho**2))
        assert g_n_factor(rho, c, 0.0, 1) == pytest.approx(expected, rel=1e-14)
        assert g_n_at_zero(rho, c, 1) == pytest.approx(expected, rel=1e-15)

    def test_gn_max_at_zero(self):
        assert g_n_factor(0.5, 0.21, math.pi / 2, 1) <= g_n_factor(0.5, 0.21, 0.0, 1)

    @settings(max_examples=200)
    @given(st.floats(0.01, 0.3), st.floats(0.01, 0.99), st.floats(-10, 10), st.integers(1, 8))
    def test_gn_even_and_maximal(self, c, s, theta, n):
        rho = c + s * (1 - c)
        g = g_n_factor(rho, c, theta, n)
        assert g == pytest.approx(g_n_factor(rho, c, -theta, n), rel=1e-14)
        assert g <= g_n_at_zero(rho, c, n) * (1 + 1e-12)

    def test_region_checked(self):
        with pytest.raises(DomainError):
            f_n_factor(0.1, 0.21, 1)
        with pytest.raises(DomainError):
            F_bound(1.0, 0.21)


class TestF:
    def test_dominates_sampled_circle(self):
        thetas = np.linspace(0, math.pi, 720)
        sup = max(cstar_circle(0.5, t, 0.21) for t in thetas)
        assert F_bound(0.5, 0.21) >= sup - tols.F_DOMINATION_TOL

    def test_boundary_layer(self):
        assert F_bound(0.999, 0.21) >= 1

    def test_single_point(self):
        assert F_bound(0.3, 0.21) >= cstar_circle(0.3, math.pi, 0.21)

    def test_matches_factor_product(self):
        # F is the leading factor times the first five f_n g_n(0) products and the tail bound
        rho, c = 0.6, 0.21
        v = (c / rho) * (1 + rho**2 / c) * 2.0 * (1 - c**12) / (1 - c**10)
        for n in range(1, 6):
            v *= f_n_factor(rho, c, n) * g_n_factor(rho, c, math.pi, n)
        assert F_bound(rho, c) == pytest.approx(v, rel=1e-13)

    def test_array_input(self):
        rhos = np.linspace(0.3, 0.9, 7)
        out = F_bound(rhos, 0.21)
        assert out.shape == (7,)
        assert out[3] == F_bound(rhos[3], 0.21)


class TestGamma:
    def test_zero_limit(self):
        assert gamma_from_F(0.0) == 0.0

    def test_finite_iff_f_below_one(self):
        assert math.isfinite(gamma_upper(0.5, 0.21)) == (F_bound(0.5, 0.21) < 1)

    def test_unbounded_marker(self):
        assert gamma_upper(0.999, 0.21) == UNBOUNDED

    def test_monotone_in_F(self):
        F = np.sort(np.random.default_rng(0).uniform(0, 1, 1000))
        g = gamma_from_F(F)
        assert np.all(np.diff(g) >= 0)


class TestVerifiers:
    @pytest.mark.parametrize("verifier", [
        verify_fn_bound, verify_gn_theta_max, verify_fg_product,
        verify_tail_bound, verify_tedious_bound, verify_f_domination,
    ])
    def test_default_grids_pass(self, verifier):
        rep = verifier()
        assert rep.passed, rep
        assert not rep.low_density
        assert rep.points > 0

    def test_fn_single_point_at_sqrt_c(self):
        c = 0.21
        grid = GridSpec(c_values=(c,), rho_steps=1, n_range=(1, 10))
        assert grid.rhos(c)[0] == pytest.approx((c + 1) / 2)
        rep = verify_fn_bound(grid)
        assert rep.max_violation <= 0

    def test_fn_bound_equality_at_sqrt_c(self):
        c = 0.21
        for n in range(1, 10):
            assert f_n_factor(math.sqrt(c), c, n) <= (1 + c ** (2 * n + 1)) / (1 + c ** (2 * n - 1))

    def test_empty_n_range(self):
        rep = verify_fn_bound(GridSpec(n_range=(3, 2)))
        assert rep.passed and rep.max_violation == 0.0 and rep.points == 0

    def test_gn_theta_zero_is_equality(self):
        # the two closed forms agree up to rounding
        rep = verify_gn_theta_max(GridSpec(c_values=(0.21,), rho_steps=50, theta_steps=1, n_range=(1, 1)))
        assert abs(rep.max_violation) <= 1e-13

    def test_gn_random_spot_grid(self):
        rng = np.random.default_rng(7)
        c = rng.uniform(0.01, 0.25, 10_000)
        rho = c + rng.uniform(0.001, 0.999, c.size) * (1 - c)
        theta = rng.uniform(0, math.pi, c.size)
        n = rng.integers(1, 11, c.size)
        g = np.array([g_n_factor(r, cc, t, k) / g_n_at_zero(r, cc, k) for r, cc, t, k in zip(rho, c, theta, n)])
        assert np.max(g - 1) <= tols.GN_THETA_TOL

    def test_fg_c_to_zero(self):
        assert fg_ratio(1e-8, 3) == pytest.approx(1.0, abs=1e-12)

    def test_fg_at_024(self):
        assert verify_fg_product(GridSpec(c_values=(0.24,), n_range=(1, 50))).passed

    def test_fg_reports_violations_at_03(self):
        # stated expectation: the product bound fails beyond c = 1/4
        rep = verify_fg_product(GridSpec(c_values=(0.3,), n_range=(1, 50)))
        assert not rep.passed

    def test_fg_detects_violations_beyond_threshold(self):
        rep = verify_fg_product(GridSpec(c_values=(0.6,), n_range=(1, 50)))
        assert not rep.passed
        assert rep.worst_point["n"] == 1
        assert rep.max_violation == pytest.approx(fg_ratio(0.6, 1) - 1)

    def test_fg_threshold_root(self):
        t = fg_ratio_threshold()
        assert t**4 + t**2 + t - 1 == pytest.approx(0.0, abs=1e-14)
        assert fg_ratio(t - 1e-6, 1) <= 1 < fg_ratio(t + 1e-6, 1)
        ns = np.arange(1, 200)
        assert np.all(fg_ratio(t - 1e-6, ns) <= 1)

    def test_tail_c_to_zero(self):
        rep = verify_tail_bound(GridSpec(c_values=(1e-4,), rho_steps=20, n_range=(6, 6)))
        assert rep.passed

    def test_tail_single_point(self):
        c = 0.21
        grid = GridSpec(c_values=(c,), rho_steps=1, n_range=(6, 6))
        assert verify_tail_bound(grid).passed

    def test_tedious_equality_at_pi(self):
        assert kernels.tedious_excess(0.5, math.pi, 0.21) == pytest.approx(0.0, abs=1e-12)

    def test_tedious_random_scan(self):
        rng = np.random.default_rng(11)
        for c in (0.1, 0.21, 0.24):
            rho = c + rng.uniform(1e-6, 1 - 1e-6, 100_000) * (1 - c)
            theta = rng.uniform(0, 2 * math.pi, rho.size)
            assert np.max(kernels.tedious_excess(rho, theta, c)) <= tols.TEDIOUS_TOL

    def test_low_density_flag(self):
        rep = verify_tedious_bound(GridSpec(c_values=(0.21,), rho_steps=400, theta_steps=4))
        assert rep.passed and rep.low_density

    def test_default_tedious_grid_size(self):
        g = DEFAULT_GRIDS["tedious"]
        assert (g.rho_steps, g.theta_steps, g.c_values) == (400, 720, (0.1, 0.21, 0.24))
