import math

import numpy as np
import pytest

from symhardy import trials as tr
from symhardy.constants import FunctionClass
from symhardy.errors import BudgetError, DomainError, InvalidDimensionError
from symhardy.polynomials import constant_factor, odd_linear, vandermonde

ANTI = FunctionClass.ANTISYMMETRIC
ODD = FunctionClass.ODD


def fd_gradient(f, x, h=1e-5):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for k in range(len(x)):
        xp, xm = x.copy(), x.copy()
        xp[k] += h
        xm[k] -= h
        g[k] = (f(xp) - f(xm)) / (2.0 * h)
    return g


def fd_laplacian(f, x, h=1e-4):
    x = np.asarray(x, dtype=float)
    f0 = f(x)
    acc = 0.0
    for k in range(len(x)):
        xp, xm = x.copy(), x.copy()
        xp[k] += h
        xm[k] -= h
        acc += (f(xp) - 2.0 * f0 + f(xm)) / (h * h)
    return acc


class TestGaussianTrial:
    def test_gradient_assembly_d2(self):
        u = tr.gaussian_trial(vandermonde(2), 1.0)
        x = np.array([1.0, 2.0])
        got = u.gradient(x)
        fd = fd_gradient(u.value, x)
        assert np.max(np.abs(got - fd)) <= 1e-6 * (1.0 + np.max(np.abs(got)))

    @pytest.mark.parametrize(
        "factor,d", [(vandermonde(2), 2), (vandermonde(3), 3), (odd_linear(3), 3)]
    )
    def test_derivatives_match_finite_differences(self, factor, d):
        u = tr.gaussian_trial(factor, 1.3)
        rng = np.random.default_rng(31)
        for _ in range(100):
            x = rng.standard_normal(d)
            g = u.gradient(x)
            fd = fd_gradient(u.value, x)
            assert np.max(np.abs(g - fd)) <= 1e-6 * (1.0 + np.max(np.abs(g)))
            lap = u.laplacian(x)
            lap_fd = fd_laplacian(u.value, x)
            assert abs(lap - lap_fd) <= 1e-4 * (1.0 + abs(lap))

    def test_antisymmetry_of_vandermonde_trial(self):
        u = tr.gaussian_trial(vandermonde(3), 1.0)
        rng = np.random.default_rng(32)
        x = rng.standard_normal(3)
        swapped = x[[1, 0, 2]]
        assert u.value(swapped) == pytest.approx(-u.value(x), rel=1e-12)
        assert u.class_residual(50) < 1e-12

    def test_laplacian_where_factor_vanishes(self):
        # With F(x) = 0 the product rule leaves 2 <grad F, grad psi>, which
        # the Euler relation makes vanish as well.
        u = tr.gaussian_trial(vandermonde(3), 1.0)
        x = np.array([1.0, 1.0, 2.5])
        F = vandermonde(3)
        r = np.linalg.norm(x)
        dpsi = -(r / 1.0) * math.exp(-0.5 * r * r)
        cross = 2.0 * dpsi / r * float(F.gradient(x) @ x)
        assert u.laplacian(x) == pytest.approx(cross, abs=1e-12)
        assert abs(u.laplacian(x) - fd_laplacian(u.value, x)) < 1e-6

    def test_general_tag_with_constant_factor(self):
        u = tr.gaussian_trial(constant_factor(3), 1.0,
                              class_tag=FunctionClass.GENERAL)
        assert u.value([0.0, 0.0, 0.0]) == 1.0
        assert u.class_residual(10) == 0.0

    def test_constant_profile_shell_is_harmonic(self):
        # Harmonic angular factor times a locally constant radial profile
        # contributes nothing to the Laplacian.
        ones = lambda r: np.ones_like(np.asarray(r, dtype=float))
        zeros = lambda r: np.zeros_like(np.asarray(r, dtype=float))
        u = tr.TrialFunction(
            vandermonde(3),
            tr.RadialProfile("custom", ones, zeros, zeros),
            ANTI,
        )
        rng = np.random.default_rng(37)
        X = rng.standard_normal((50, 3))
        assert np.max(np.abs(u.laplacian(X))) == 0.0


class TestSharpnessFamily:
    def test_pure_power_laplacian_identity(self):
        # Delta(V r^-rho) = rho (rho + 2 - d - 2 lam) V r^(-rho-2) away from
        # the collar.
        d = 3
        factor = vandermonde(d)
        lam = factor.homogeneity
        u = tr.sharpness_family(factor, 0.1, 0.05)
        a_in = u.radial.meta["alpha_in"]
        b_out = u.radial.meta["beta_out"]
        rng = np.random.default_rng(33)
        for rho, rlo, rhi in [(a_in, 0.2, 0.9), (b_out, 1.1, 3.0)]:
            for _ in range(50):
                x = rng.standard_normal(d)
                x = x / np.linalg.norm(x) * rng.uniform(rlo, rhi)
                got = u.laplacian(x)
                r = np.linalg.norm(x)
                expected = (
                    rho
                    * (rho + 2.0 - d - 2.0 * lam)
                    * factor.value(x)
                    * r ** (-rho - 2.0)
                )
                assert abs(got - expected) <= 1e-8 * (1.0 + abs(expected))

    def test_collar_is_c2(self):
        u = tr.sharpness_family(vandermonde(3), 0.2, 0.05)
        prof = u.radial
        eps = 1e-9
        for edge in (0.95, 1.05):
            for fn in (prof.psi, prof.dpsi, prof.d2psi):
                left = float(fn(edge - eps))
                right = float(fn(edge + eps))
                assert abs(left - right) <= 1e-5 * (1.0 + abs(left))

    def test_derivatives_on_collar_match_fd(self):
        u = tr.sharpness_family(vandermonde(3), 0.2, 0.05)
        rng = np.random.default_rng(34)
        for _ in range(30):
            x = rng.standard_normal(3)
            x = x / np.linalg.norm(x) * rng.uniform(0.96, 1.04)
            g = u.gradient(x)
            fdg = fd_gradient(u.value, x, h=1e-6)
            assert np.max(np.abs(g - fdg)) <= 1e-5 * (1.0 + np.max(np.abs(g)))

    def test_class_tags(self):
        ua = tr.sharpness_family(vandermonde(3), 0.1, 0.02)
        assert ua.class_tag is ANTI
        assert ua.class_residual(50) < 1e-10
        assert not ua.heuristic
        uo = tr.sharpness_family(odd_linear(3), 0.1, 0.02)
        assert uo.class_tag is ODD
        assert uo.class_residual(50) < 1e-10

    def test_exponent_choices(self):
        d = 3
        ua = tr.sharpness_family(vandermonde(d), 0.1, 0.02)
        assert ua.radial.meta["alpha_in"] == pytest.approx((d * d - 4) / 2.0 - 0.1)
        assert ua.radial.meta["beta_out"] == pytest.approx((d * d - 4) / 2.0 + 0.1)
        uo = tr.sharpness_family(odd_linear(d), 0.1, 0.02)
        assert uo.radial.meta["alpha_in"] == pytest.approx(d / 2.0 - 1.0 - 0.1)
        uh = tr.sharpness_family(vandermonde(d), 0.1, 0.02, functional="hardy")
        assert uh.radial.meta["alpha_in"] == pytest.approx((d * d - 2) / 2.0 - 0.1)
        assert uh.heuristic

    def test_guards(self):
        with pytest.raises(DomainError):
            tr.sharpness_family(vandermonde(3), 0.1, 0.0)
        with pytest.raises(DomainError):
            tr.sharpness_family(vandermonde(3), 1.5, 0.01)
        with pytest.raises(InvalidDimensionError):
            tr.sharpness_family(vandermonde(2), 0.1, 0.01, functional="rellich")

    def test_cutoff_radius_from_tail_budget(self):
        u = tr.sharpness_family(vandermonde(3), 0.5, 0.01)
        assert u.radial.meta["cutoff"] == pytest.approx(500.0, rel=1e-12)


class TestProjectors:
    def test_antisymmetrize_linear_coordinate(self):
        got = tr.antisymmetrize(lambda x: x[0], np.array([2.0, 5.0]))
        assert got == pytest.approx((2.0 - 5.0) / 2.0, rel=1e-14)

    def test_idempotence(self):
        rng = np.random.default_rng(35)
        f = lambda x: x[0] ** 2 * x[1] - 3.0 * x[2] + x[0] * x[1] * x[2]
        for _ in range(20):
            x = rng.standard_normal(3)
            once = tr.antisymmetrize(f, x)
            twice = tr.antisymmetrize(lambda y: tr.antisymmetrize(f, y), x)
            assert twice == pytest.approx(once, rel=1e-12, abs=1e-12)

    def test_odd_projector(self):
        even = lambda x: float(np.sum(np.asarray(x) ** 2))
        rng = np.random.default_rng(36)
        for _ in range(20):
            x = rng.standard_normal(4)
            assert tr.odd_project(even, x) == 0.0
        odd = lambda x: float(np.asarray(x)[0] ** 3)
        x = rng.standard_normal(4)
        assert tr.odd_project(odd, x) == pytest.approx(odd(x), rel=1e-14)

    def test_budget(self):
        with pytest.raises(BudgetError):
            tr.antisymmetrize(lambda x: x[0], np.zeros(9))

    def test_parity(self):
        assert tr.perm_parity([0, 1, 2]) == 1
        assert tr.perm_parity([1, 0, 2]) == -1
        assert tr.perm_parity([2, 0, 1]) == 1
