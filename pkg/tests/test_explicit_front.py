import math

import numpy as np
import pytest

from frontforge import explicit_front as ef
from frontforge.analysis import fit_decay
from frontforge.explicit_front import (
    ExplicitFrontParams,
    asymptotic_constant,
    explicit_front,
    explicit_front_dy,
    explicit_nonlinearity,
    explicit_nonlinearity_deriv,
    front_profile,
    green_g,
    invert_trace,
    kernel_mass,
    poisson_kernel,
)
from frontforge.grid import TraceProfile
from frontforge.nonlinearity import antiderivative, validate
from frontforge.specfun import bessel_k, k_ratio

P12 = ExplicitFrontParams(t=1.0, c=2.0)


def test_params_validation():
    with pytest.raises(ValueError):
        ExplicitFrontParams(t=0.0, c=2.0)
    with pytest.raises(ValueError):
        ExplicitFrontParams(t=1.0, c=-1.0)


class TestKernel:
    def test_green_value_at_origin(self):
        assert green_g(1.0, 0.0, 0.0) == pytest.approx(bessel_k(0, 1.0) / (2 * math.pi), rel=1e-12)

    def test_green_solves_weighted_laplace(self):
        # residual of Laplace(G) + 2 G_y by centered differences
        h = 1e-3
        x0, y0 = 0.5, 0.3
        lap = (
            green_g(1.0, x0 + h, y0)
            + green_g(1.0, x0 - h, y0)
            + green_g(1.0, x0, y0 + h)
            + green_g(1.0, x0, y0 - h)
            - 4.0 * green_g(1.0, x0, y0)
        ) / (h * h)
        gy = (green_g(1.0, x0, y0 + h) - green_g(1.0, x0, y0 - h)) / (2.0 * h)
        assert abs(lap + 2.0 * gy) < 1e-5

    def test_green_vanishes_upward(self):
        assert green_g(1.0, 0.0, 60.0) < 1e-40

    def test_kernel_positive(self):
        ys = np.linspace(-40.0, 40.0, 101)
        assert np.all(poisson_kernel(1.0, 0.5, ys) > 0.0)

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_unit_mass(self, t):
        assert kernel_mass(t) == pytest.approx(1.0, abs=1e-6)

    def test_unit_mass_off_boundary(self):
        assert kernel_mass(1.0, x=1.5) == pytest.approx(1.0, abs=1e-6)

    def test_tail_asymptotics_both_sides(self):
        target = 1.0 / math.sqrt(2.0 * math.pi)
        plus = poisson_kernel(1.0, 0.0, 20.0) * 20.0**1.5 * math.exp(40.0)
        minus = poisson_kernel(1.0, 0.0, -20.0) * 20.0**1.5
        assert plus == pytest.approx(target, rel=2e-2)
        assert minus == pytest.approx(target, rel=2e-2)


class TestFrontValues:
    def test_limit_one_downward(self):
        # the invading-side tail is a slow power law: 1 - u ~ (-y)^{-1/2},
        # so reaching 1e-6 of the limit takes -y of order 1e12
        assert explicit_front(P12, 0.0, -6.5e11) == pytest.approx(1.0, abs=1e-6)
        assert 1.0 - explicit_front(P12, 0.0, -40.0) == pytest.approx(0.126, abs=5e-3)

    def test_limit_zero_upward(self):
        assert explicit_front(P12, 0.0, 40.0) == pytest.approx(0.0, abs=1e-10)

    def test_pinned_center_value(self):
        assert explicit_front(P12, 0.0, 0.0) == pytest.approx(0.10449683150232618, rel=1e-9)

    def test_profile_matches_pointwise_evaluation(self):
        ys = np.linspace(-12.0, 4.0, 97)
        prof = front_profile(P12, 0.3, ys)
        for k in (0, 31, 48, 96):
            assert prof[k] == pytest.approx(explicit_front(P12, 0.3, float(ys[k])), abs=1e-12)

    def test_monotone_and_in_range(self):
        ys = np.linspace(-30.0, 10.0, 400)
        prof = front_profile(P12, 0.0, ys)
        assert np.all(np.diff(prof) < 0.0)
        assert np.all((prof > 0.0) & (prof < 1.0))

    def test_scaling_between_speeds(self):
        # u^{t,c}(x, y) = u^{t,2}(c x/2, c y/2)
        p_slow = ExplicitFrontParams(t=1.0, c=0.5)
        assert explicit_front(p_slow, 0.8, -2.0) == pytest.approx(
            explicit_front(P12, 0.2, -0.5), rel=1e-11
        )


class TestFrontDerivative:
    def test_matches_finite_difference(self):
        h = 1e-5
        fd = (explicit_front(P12, 0.0, 1.0 + h) - explicit_front(P12, 0.0, 1.0 - h)) / (2 * h)
        assert explicit_front_dy(P12, 0.0, 1.0) == pytest.approx(fd, abs=1e-6)

    def test_strictly_negative(self):
        rng = np.random.default_rng(7)
        ys = rng.uniform(-25.0, 8.0, size=20)
        assert np.all(explicit_front_dy(P12, 0.4, ys) < 0.0)

    def test_compensated_tail_constant(self):
        y = 20.0
        val = -explicit_front_dy(P12, 0.0, y) * y**1.5 * math.exp(2.0 * y)
        assert val == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=2e-2)


class TestImplicitNonlinearity:
    def test_exact_zeros_at_endpoints(self):
        assert explicit_nonlinearity(P12, 0.0) == 0.0
        assert explicit_nonlinearity(P12, 1.0) == 0.0

    def test_interior_rejects_outside(self):
        with pytest.raises(ValueError):
            explicit_nonlinearity(P12, -0.1)
        with pytest.raises(ValueError):
            explicit_nonlinearity(P12, 1.1)

    def test_boundary_flux_consistency(self):
        # -u_x(0, y) == f(u(0, y)) at 50 points, one-sided 2nd order in x
        ys = np.linspace(-8.0, 3.0, 50)
        h = 5e-4
        u0 = front_profile(P12, 0.0, ys)
        u1 = front_profile(P12, h, ys)
        u2 = front_profile(P12, 2 * h, ys)
        ux = (-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * h)
        for k in range(0, 50, 7):
            f_val = explicit_nonlinearity(P12, float(u0[k]))
            assert -ux[k] == pytest.approx(f_val, abs=1e-6)

    @pytest.mark.parametrize("s", [0.1, 0.5, 0.9])
    def test_derivative_consistency(self, s):
        h = 1e-6
        fd = (explicit_nonlinearity(P12, s + h) - explicit_nonlinearity(P12, s - h)) / (2 * h)
        assert explicit_nonlinearity_deriv(P12, s) == pytest.approx(fd, abs=1e-5)

    def test_derivative_endpoint_values(self):
        assert explicit_nonlinearity_deriv(P12, 0.0) == -1.0
        assert explicit_nonlinearity_deriv(P12, 1.0) == -1.0
        p = ExplicitFrontParams(t=2.0, c=1.0)
        assert explicit_nonlinearity_deriv(p, 0.0) == -0.25

    def test_derivative_sign_pattern(self):
        # negative near both endpoints, positive in between
        svals = np.array([1e-3, 0.02, 0.3, 0.6, 0.95, 0.999])
        signs = np.sign([explicit_nonlinearity_deriv(P12, float(s)) for s in svals])
        assert signs[0] == -1 and signs[-1] == -1
        assert np.any(signs[1:-1] > 0)

    def test_phase_function_positive_at_center(self):
        t = 1.0
        assert float(k_ratio(t)) > 0.0  # h^t(0) = (K_0+K_2)/(2K_1)(t)

    @pytest.mark.parametrize("t,c", [(0.5, 2.0), (1.0, 2.0), (2.0, 1.0)])
    def test_positive_integral(self, t, c, oracle_nl):
        from frontforge.explicit_front import front_nonlinearity

        nl = oracle_nl if (t, c) == (1.0, 2.0) else front_nonlinearity(ExplicitFrontParams(t, c))
        assert antiderivative(nl, 1.0) > 0.0

    def test_inversion_roundtrip(self):
        for s in (0.05, 0.4, 0.85):
            y = invert_trace(P12, s)
            assert explicit_front(P12, 0.0, y) == pytest.approx(s, rel=1e-9)


class TestPackagedNonlinearity:
    def test_validates(self, oracle_nl):
        assert validate(oracle_nl, 1000).passed

    def test_table_matches_exact_operation(self, oracle_nl):
        for s in np.linspace(0.02, 0.98, 17):
            assert float(oracle_nl.f(s)) == pytest.approx(
                explicit_nonlinearity(P12, float(s)), abs=1e-6
            )

    def test_structural_constants(self, oracle_nl):
        assert 0.0 < oracle_nl.delta < 0.5
        assert 0.0 < oracle_nl.alpha < oracle_nl.beta < 1.0
        assert float(oracle_nl.f(oracle_nl.alpha)) == pytest.approx(0.0, abs=1e-7)


def test_asymptotic_constant_values():
    assert asymptotic_constant(P12, "plus") == pytest.approx(1.0 / math.sqrt(2 * math.pi), rel=1e-12)
    assert asymptotic_constant(P12, "plus") == asymptotic_constant(P12, "minus")
    doubled = asymptotic_constant(ExplicitFrontParams(2.0, 2.0), "plus")
    assert doubled == pytest.approx(2.0 * asymptotic_constant(P12, "plus"), rel=1e-12)
    with pytest.raises(ValueError):
        asymptotic_constant(P12, "sideways")


def test_front_satisfies_all_four_tail_bounds():
    ys = np.linspace(-60.0, 30.0, 1500)
    u = front_profile(P12, 0.0, ys)
    uy = explicit_front_dy(P12, 0.0, ys)
    tr, tdy = TraceProfile(ys, u), TraceProfile(ys, uy)
    for side, quantity in (
        ("plus", "minus_u_y"),
        ("minus", "minus_u_y"),
        ("plus", "u"),
        ("minus", "one_minus_u"),
    ):
        rep = fit_decay(tr, tdy, P12.c, side, quantity)
        assert np.isfinite(rep.sandwich_b) and rep.sandwich_b >= 1.0
