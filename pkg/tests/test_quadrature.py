"""Quadrature rules: exactness, symmetry, refinement, and validation."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2h import (PeriodicRule, RadialRule, SpectralGrid, ValidationError,
                  integrate_periodic, integrate_radial, radial_weight)


class TestPeriodicRule:
    def test_mass_one(self):
        rule = PeriodicRule(64)
        assert rule.weights.sum() == pytest.approx(1.0, abs=1e-15)

    def test_exact_for_trigonometric_polynomials(self):
        rule = PeriodicRule(32)
        for k in range(1, 31):
            val = integrate_periodic(np.exp(1j * k * rule.nodes), rule)
            assert abs(val) < 1e-14
        assert integrate_periodic(np.ones(32), rule) == pytest.approx(1.0)

    def test_aliasing_at_node_count(self):
        rule = PeriodicRule(16)
        # degree-16 mode aliases to the constant: the classic failure mode
        val = integrate_periodic(np.exp(1j * 16 * rule.nodes), rule)
        assert val == pytest.approx(1.0)

    def test_refined(self):
        assert PeriodicRule(16).refined(4).node_count == 64

    def test_validation(self):
        with pytest.raises(ValidationError):
            PeriodicRule(2)
        with pytest.raises(ValidationError):
            integrate_periodic(np.ones(5), PeriodicRule(8))


class TestRadialRule:
    def test_weights_integrate_interval(self):
        rule = RadialRule(7.5, 16)
        assert rule.weights.sum() == pytest.approx(7.5, rel=1e-14)
        assert rule.nodes.min() > 0.0 and rule.nodes.max() < 7.5
        assert np.all(np.diff(rule.nodes) > 0)

    def test_polynomial_exactness(self):
        # Gauss with q points per panel is exact through degree 2q-1
        rule = RadialRule(4.0, 8)
        for deg in (0, 3, 9, 15):
            got = float(integrate_radial(rule.nodes ** deg, rule, weight=None))
            assert got == pytest.approx(4.0 ** (deg + 1) / (deg + 1), rel=1e-13)

    def test_haar_weight_closed_form(self):
        # Int_0^T 2 sinh(2t) dt = cosh(2T) - 1
        rule = RadialRule(3.0, 32)
        got = float(integrate_radial(np.ones(rule.nodes.size), rule))
        assert got == pytest.approx(math.cosh(6.0) - 1.0, rel=1e-14)

    def test_gaussian_against_mpmath(self):
        rule = RadialRule(6.0, 32)
        f = np.exp(-4.0 * (rule.nodes - 2.0) ** 2)
        got = float(integrate_radial(f, rule))
        want = float(mpmath.quad(
            lambda t: mpmath.exp(-4 * (t - 2) ** 2) * 2 * mpmath.sinh(2 * t),
            [0, 2, 6]))
        assert got == pytest.approx(want, rel=1e-13)

    def test_fractional_last_panel(self):
        rule = RadialRule(4.25, 8)
        assert rule.weights.sum() == pytest.approx(4.25, rel=1e-14)

    def test_key_and_refined(self):
        a, b = RadialRule(8.0, 64), RadialRule(8.0, 64)
        assert a.key == b.key
        assert a.refined().points_per_panel == 128
        assert a.refined().key != a.key

    def test_validation(self):
        with pytest.raises(ValidationError):
            RadialRule(-1.0, 8)
        with pytest.raises(ValidationError):
            RadialRule(2.0, 1)
        with pytest.raises(ValidationError):
            integrate_radial(np.ones(3), RadialRule(2.0, 8))
        with pytest.raises(ValidationError):
            integrate_radial(np.ones(16), RadialRule(2.0, 8), weight="bogus")

    def test_radial_weight_formula(self):
        ts = np.array([0.0, 0.5, 1.0])
        np.testing.assert_allclose(radial_weight(ts), 2.0 * np.sinh(2.0 * ts))


class TestSpectralGrid:
    def test_symmetric_with_exact_zero(self):
        grid = SpectralGrid(10.0, 11)
        assert grid.samples[5] == 0.0
        np.testing.assert_array_equal(grid.samples, -grid.samples[::-1])
        assert grid.weights.sum() == pytest.approx(20.0)

    def test_trapezoid_on_smooth_even_function(self):
        grid = SpectralGrid(20.0, 2001)
        got = float((np.exp(-grid.samples ** 2) * grid.weights).sum())
        assert got == pytest.approx(math.sqrt(math.pi), rel=1e-12)

    def test_spacing_refined_widened(self):
        grid = SpectralGrid(60.0, 1025)
        assert grid.spacing == pytest.approx(120.0 / 1024)
        fine = grid.refined(2)
        assert fine.node_count == 2049 and fine.lambda_max == 60.0
        wide = grid.widened(2.0)
        assert wide.lambda_max == pytest.approx(120.0)
        assert wide.spacing == pytest.approx(grid.spacing, rel=1e-12)
        assert wide.node_count % 2 == 1

    def test_validation(self):
        with pytest.raises(ValidationError):
            SpectralGrid(10.0, 10)  # even
        with pytest.raises(ValidationError):
            SpectralGrid(0.0, 11)


@settings(max_examples=25, deadline=None)
@given(t_max=st.floats(0.5, 20.0), q=st.integers(4, 24))
def test_radial_rule_mass_property(t_max, q):
    rule = RadialRule(t_max, q)
    assert rule.weights.sum() == pytest.approx(t_max, rel=1e-12)
    assert rule.nodes.size == rule.weights.size
