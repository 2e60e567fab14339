import math

import numpy as np
import pytest

from frontforge import nonlinearity as nlmod
from frontforge.nonlinearity import (
    NonlinearityError,
    antiderivative,
    ignition_point,
    make_bistable_cubic,
    make_combustion,
    make_custom,
    potential,
    reflect,
    validate,
)
from oracles import simpson_integral

CUBIC_BETA_CLOSED = (5.0 - math.sqrt(7.0)) / 6.0


class TestBistableCubic:
    def test_roots_are_exact(self):
        nl = make_bistable_cubic(0.25)
        assert float(nl.f(0.0)) == 0.0
        assert float(nl.f(1.0)) == 0.0
        assert float(nl.f(0.25)) == 0.0

    def test_integral_closed_form(self):
        nl = make_bistable_cubic(0.25)
        assert antiderivative(nl, 1.0) == pytest.approx((1.0 - 0.5) / 12.0, abs=1e-10)
        # independent Simpson cross-check
        assert simpson_integral(nl.f, 0.0, 1.0) == pytest.approx(1.0 / 24.0, abs=1e-10)

    def test_endpoint_derivatives_negative(self):
        nl = make_bistable_cubic(0.25)
        assert float(nl.f_prime(0.0)) == -0.25
        assert float(nl.f_prime(1.0)) == -(1.0 - 0.25)

    def test_beta_stored_matches_closed_form(self):
        nl = make_bistable_cubic(0.25)
        assert nl.beta == pytest.approx(CUBIC_BETA_CLOSED, rel=1e-12)

    def test_rejects_alpha_out_of_range(self):
        for bad in (0.0, 0.5, 0.7, -0.1):
            with pytest.raises(NonlinearityError):
                make_bistable_cubic(bad)

    def test_validates(self):
        assert validate(make_bistable_cubic(0.25), 1000).passed


class TestCombustion:
    def test_zero_below_ignition(self):
        nl = make_combustion(0.3, 1.0)
        assert float(nl.f(0.15)) == 0.0
        assert float(nl.f(0.3)) == 0.0

    def test_value_above_ignition(self):
        nl = make_combustion(0.3, 1.0)
        assert float(nl.f(0.65)) == pytest.approx(0.35 * 0.35, rel=1e-12)

    def test_integral_closed_form(self):
        nl = make_combustion(0.3, 1.0)
        assert antiderivative(nl, 1.0) == pytest.approx((1.0 - 0.3) ** 3 / 6.0, rel=1e-9)

    def test_validates(self):
        assert validate(make_combustion(0.3, 1.0), 1000).passed

    def test_rejects_bad_parameters(self):
        with pytest.raises(NonlinearityError):
            make_combustion(1.2, 1.0)
        with pytest.raises(NonlinearityError):
            make_combustion(0.3, -1.0)


class TestPotential:
    def test_zero_at_origin(self):
        for nl in (make_bistable_cubic(0.25), make_combustion(0.3, 1.0)):
            assert potential(nl, 0.0) == 0.0

    def test_cubic_value_at_one(self):
        nl = make_bistable_cubic(0.25)
        assert potential(nl, 1.0) == pytest.approx(-(1.0 - 0.5) / 12.0, rel=1e-12)

    def test_combustion_flat_below_ignition(self):
        nl = make_combustion(0.3, 1.0)
        assert potential(nl, 0.3) == 0.0

    def test_derivative_is_minus_f(self):
        nl = make_bistable_cubic(0.3)
        for s in (-0.5, 0.2, 0.7, 1.4):
            h = 1e-6
            fd = (potential(nl, s + h) - potential(nl, s - h)) / (2.0 * h)
            assert fd == pytest.approx(-float(nl.f(s)), abs=1e-9)

    def test_sign_structure(self):
        for nl in (make_bistable_cubic(0.25), make_combustion(0.3, 1.0)):
            g1 = potential(nl, 1.0)
            assert g1 < 0.0
            s_neg = np.linspace(-5.0, 0.0, 100)
            assert np.all(np.asarray(nl.G(s_neg)) >= -1e-15)
            s_hi = np.linspace(1.0, 6.0, 100)
            assert np.all(np.asarray(nl.G(s_hi)) >= g1 - 1e-15)
            s_b = np.linspace(0.0, nl.beta, 200)
            assert np.all(np.asarray(nl.G(s_b)) >= -1e-15)

    def test_quadratic_bound(self):
        for nl in (make_bistable_cubic(0.25), make_combustion(0.3, 1.0)):
            s = np.linspace(-10.0, 10.0, 4001)
            g = np.asarray(nl.G(s))
            c_fit = float(np.max(np.abs(g) / np.maximum(s * s, 1e-12))) * (1.0 + 1e-12)
            assert np.all(g <= c_fit * s * s + 1e-12)
            assert np.all(g >= -c_fit * s * s - 1e-12)


class TestValidator:
    def test_constant_law_fails_endpoint_condition(self):
        flat = make_custom(
            lambda s: 0.1 * np.ones_like(np.asarray(s, dtype=float)),
            lambda s: np.zeros_like(np.asarray(s, dtype=float)),
            delta=0.1,
            beta=0.5,
        )
        rep = validate(flat, 1000)
        assert not rep.passed
        assert any(cond == "f(0)=f(1)=0" for cond, _ in rep.violated_conditions)

    def test_reflected_cubic_fails_integral_condition(self):
        rep = validate(reflect(make_bistable_cubic(0.25)), 1000)
        assert not rep.passed
        assert any(cond == "integral_f_positive" for cond, _ in rep.violated_conditions)

    def test_samples_precondition(self):
        with pytest.raises(ValueError):
            validate(make_bistable_cubic(0.25), 50)

    def test_report_consistency(self):
        rep = validate(make_combustion(0.4, 0.7), 500)
        assert rep.passed == (not rep.violated_conditions)


class TestReflect:
    def test_involution_pointwise(self):
        nl = make_bistable_cubic(0.25)
        back = reflect(reflect(nl))
        s = np.linspace(-1.0, 2.0, 301)
        assert np.allclose(np.asarray(back.f(s)), np.asarray(nl.f(s)), atol=1e-14)
        assert np.allclose(np.asarray(back.G(s)), np.asarray(nl.G(s)), atol=1e-14)

    def test_root_mapping(self):
        refl = reflect(make_bistable_cubic(0.25))
        assert float(refl.f(0.75)) == pytest.approx(0.0, abs=1e-15)

    def test_integral_negation(self):
        nl = make_bistable_cubic(0.3)
        assert antiderivative(reflect(nl), 1.0) == pytest.approx(
            -antiderivative(nl, 1.0), rel=1e-9
        )


class TestIgnitionPoint:
    def test_combustion_returns_stored(self):
        assert ignition_point(make_combustion(0.3, 1.0)) == 0.3

    def test_cubic_bisection_matches_closed_form(self):
        assert ignition_point(make_bistable_cubic(0.25)) == pytest.approx(
            CUBIC_BETA_CLOSED, abs=1e-9
        )

    def test_balanced_limit_pushes_beta_up(self):
        betas = [ignition_point(make_bistable_cubic(al)) for al in (0.25, 0.4, 0.49)]
        assert betas[0] < betas[1] < betas[2]
        assert betas[2] > 0.9

    def test_bracket_failure_raises(self):
        bad = make_custom(
            lambda s: -np.asarray(s, dtype=float) * (1.0 - np.asarray(s, dtype=float)),
            lambda s: -(1.0 - 2.0 * np.asarray(s, dtype=float)),
            delta=0.1,
            beta=0.5,
            alpha=0.5,
        )
        with pytest.raises(NonlinearityError):
            ignition_point(bad)


def test_custom_wrapper_extends_linearly():
    nl = make_custom(
        lambda s: np.sin(np.pi * np.asarray(s, dtype=float)) * 0.1,
        lambda s: 0.1 * np.pi * np.cos(np.pi * np.asarray(s, dtype=float)),
        delta=0.2,
        beta=0.5,
    )
    slope0, slope1 = nl.extension_slopes
    for tau in (0.25, 1.0, 2.0):
        assert float(nl.f(-tau)) == pytest.approx(-tau * slope0, abs=1e-12)
        assert float(nl.f(1.0 + tau)) == pytest.approx(tau * slope1, abs=1e-12)


def test_adaptive_simpson_tolerance():
    val = nlmod._adaptive_simpson(lambda x: math.exp(-x) * math.sin(8 * x), 0.0, 2.0, tol=1e-12)
    exact = (8 - math.exp(-2) * (math.sin(16) * 1 + 8 * math.cos(16))) / 65.0
    assert val == pytest.approx(exact, abs=5e-12)
