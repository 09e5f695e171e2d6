"""Parity classes, discrete index sets, spectral density, weak norms."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2h import (Parity, SpectralGrid, TypePair, ValidationError, gamma_set,
                  plancherel_density, spectral_measure_integral,
                  weak_sup_norm)


class TestParity:
    def test_parse(self):
        assert Parity.parse("plus") is Parity.EVEN
        assert Parity.parse("even") is Parity.EVEN
        assert Parity.parse("+") is Parity.EVEN
        assert Parity.parse("MINUS") is Parity.ODD
        assert Parity.parse("odd") is Parity.ODD
        with pytest.raises(ValidationError):
            Parity.parse("sideways")

    def test_pair_parity(self):
        assert TypePair(2, 4).tau is Parity.EVEN
        assert TypePair(3, -1).tau is Parity.ODD
        assert TypePair(0, 0).is_spherical
        assert not TypePair(2, 2).is_spherical
        assert TypePair(4, 2).swapped() == TypePair(2, 4)
        with pytest.raises(ValidationError):
            TypePair(2, 1)


class TestGammaSet:
    # indices of parity opposite to l, strictly between 0 and both weights
    FROZEN = {
        (0, 0): (), (2, 2): (1,), (4, 4): (1, 3), (6, 6): (1, 3, 5),
        (3, 3): (2,), (5, 5): (2, 4), (1, 1): (), (4, 2): (1,),
        (2, 4): (1,), (5, 3): (2,), (-2, -2): (-1,), (-4, -4): (-3, -1),
        (-3, -3): (-2,), (2, -2): (), (0, 4): (), (-2, 4): (),
    }

    def test_frozen_table(self):
        for (l, n), want in self.FROZEN.items():
            assert gamma_set(l, n) == want, (l, n)
            assert TypePair(l, n).gamma() == want

    def test_parity_validation(self):
        with pytest.raises(ValidationError):
            gamma_set(2, 1)

    @settings(max_examples=100, deadline=None)
    @given(l=st.integers(-8, 8), n=st.integers(-8, 8))
    def test_properties(self, l, n):
        if (l - n) % 2 != 0:
            with pytest.raises(ValidationError):
                gamma_set(l, n)
            return
        ks = gamma_set(l, n)
        assert ks == gamma_set(n, l)
        for k in ks:
            assert (k - l) % 2 == 1
            # every index lies strictly between zero and both weights
            if l > 0:
                assert 0 < k < min(l, n)
            else:
                assert max(l, n) < k < 0


class TestPlancherelDensity:
    def test_even_closed_form(self):
        # (pi lam / 2) tanh(pi lam / 2)
        for lam in (0.5, 1.0, 3.0, 17.0):
            x = math.pi * lam / 2.0
            want = x * math.tanh(x)
            assert float(plancherel_density(Parity.EVEN, lam)) == pytest.approx(
                want, rel=1e-15)
        assert float(plancherel_density(Parity.EVEN, 0.0)) == 0.0

    def test_odd_closed_form_and_removable_singularity(self):
        for lam in (0.5, 1.0, 3.0, 17.0):
            x = math.pi * lam / 2.0
            want = x / math.tanh(x)
            assert float(plancherel_density(Parity.ODD, lam)) == pytest.approx(
                want, rel=1e-15)
        assert float(plancherel_density(Parity.ODD, 0.0)) == 1.0

    def test_odd_series_matches_mpmath_near_zero(self):
        with mpmath.workdps(40):
            for lam in (1e-12, 1e-8, 1e-4, 1e-2):
                x = mpmath.pi * lam / 2
                want = float(x / mpmath.tanh(x))
                got = float(plancherel_density(Parity.ODD, lam))
                assert got == pytest.approx(want, rel=1e-15)

    def test_even_in_lambda(self):
        lams = np.linspace(-5.0, 5.0, 41)
        for tau in (Parity.EVEN, Parity.ODD):
            np.testing.assert_allclose(plancherel_density(tau, lams),
                                       plancherel_density(tau, -lams),
                                       rtol=0, atol=0)

    def test_measure_integral_against_mpmath(self):
        grid = SpectralGrid(6.0, 1201)
        vals = np.exp(-grid.samples ** 2)
        got = float(spectral_measure_integral(vals, Parity.EVEN, grid))
        want = float(mpmath.quad(
            lambda u: mpmath.exp(-u ** 2) * (mpmath.pi * u / 2)
            * mpmath.tanh(mpmath.pi * u / 2), [-6, 0, 6]))
        assert got == pytest.approx(want, rel=1e-10)


class TestWeakSupNorm:
    GRID = SpectralGrid(200.0, 8001)

    def test_exponent_zero_is_sup(self):
        val = weak_sup_norm(lambda lam: 3.0 / (1.0 + lam ** 2),
                            Parity.EVEN, self.GRID, 0.0)
        assert val == pytest.approx(3.0, rel=1e-12)

    def test_decaying_symbol_against_direct_sweep(self):
        psi = lambda lam: 1.0 / (1.0 + np.asarray(lam) ** 2)
        got = weak_sup_norm(psi, Parity.EVEN, self.GRID, 1.0)
        # direct sweep: alpha * mu({psi > alpha}) on a dense alpha grid;
        # the level set is |lam| < sqrt(1/alpha - 1)
        best = 0.0
        mu_w = (plancherel_density(Parity.EVEN, self.GRID.samples)
                * self.GRID.weights)
        vals = psi(self.GRID.samples)
        for alpha in np.geomspace(1e-6, 1.0, 2000):
            best = max(best, alpha * float(mu_w[vals > alpha].sum()))
        assert got == pytest.approx(best, rel=5e-3)

    def test_homogeneity_is_exact(self):
        psi = lambda lam: 1.0 / (1.0 + np.abs(np.asarray(lam))) ** 3
        base = weak_sup_norm(psi, Parity.ODD, self.GRID, 1.0)
        for c in (0.1, 3.0, 100.0):
            scaled = weak_sup_norm(lambda lam: c * psi(lam), Parity.ODD,
                                   self.GRID, 1.0)
            assert abs(scaled - c * base) <= 1e-10 * max(1.0, c * base)

    def test_divergent_symbol_returns_inf(self):
        assert weak_sup_norm(lambda lam: np.ones_like(np.asarray(lam, dtype=float)),
                             Parity.EVEN, SpectralGrid(50.0, 1001), 1.0) == math.inf

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValidationError):
            weak_sup_norm(lambda lam: lam, Parity.EVEN, self.GRID, -1.0)
