"""Tests for potentials, Green's function, closed-form waves, reduced kernels."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fredscat.errors import InvalidArgumentError, SingularPointError
from fredscat.quadrature import Interval
from fredscat.scattering import (
    FOUR_PI,
    PhysicalParams,
    PotentialSpec,
    ReducedKernelChoice,
    amplitude_range,
    coulomb_potential,
    derive_params,
    greens_function,
    podolsky_potential,
    psi_coulomb_closed,
    psi_podolsky_closed,
    reduced_kernel,
    sample_wavefunction,
)

PAPER_PARAMS = derive_params(mass=2.0, hbar=1.0, energy=0.25, charge=1.0)

# coefficient of the 1/x scattered term at lam = -1, frozen from the
# exponential-integral oracle: e^(6i) sin(4) * (-1) / (1 - (E1(i) - E1(5i)))
COULOMB_AMPLITUDE = 0.36410189912072644 - 0.28238516745979014j


class TestCoulombPotential:
    def test_reference_value(self):
        assert abs(coulomb_potential(2.0, 1.0) - 1.0 / (8.0 * math.pi)) < 1e-15

    def test_zero_charge(self):
        assert coulomb_potential(3.7, 0.0) == 0.0

    @pytest.mark.parametrize("r", [0.0, -1.0])
    def test_origin_is_singular(self, r):
        with pytest.raises(SingularPointError):
            coulomb_potential(r, 1.0)

    def test_strictly_decreasing(self):
        rs = np.logspace(-6, 3, 40)
        vals = [coulomb_potential(r, 1.0) for r in rs]
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestPodolskyPotential:
    def test_finite_origin_limit(self):
        assert abs(podolsky_potential(0.0, 1.0, 2.0) - 1.0 / (8.0 * math.pi)) < 1e-15

    def test_reference_value(self):
        expected = (1.0 - math.exp(-2.0)) / (8.0 * math.pi)
        assert abs(podolsky_potential(2.0, 1.0, 1.0) - expected) < 1e-15

    def test_far_field_matches_coulomb(self):
        ratio = podolsky_potential(1000.0, 1.0, 1.0) / coulomb_potential(1000.0, 1.0)
        assert abs(ratio - 1.0) < 1e-12

    def test_zero_screening_delegates_to_coulomb(self):
        assert podolsky_potential(2.0, 1.5, 0.0) == coulomb_potential(2.0, 1.5)
        with pytest.raises(SingularPointError):
            podolsky_potential(0.0, 1.0, 0.0)

    def test_negative_inputs_rejected(self):
        with pytest.raises(InvalidArgumentError):
            podolsky_potential(-1.0, 1.0, 1.0)
        with pytest.raises(InvalidArgumentError):
            podolsky_potential(1.0, 1.0, -1.0)

    @settings(max_examples=100, deadline=None)
    @given(
        r=st.floats(min_value=1e-6, max_value=1e3),
        a=st.floats(min_value=1e-6, max_value=1e2),
    )
    def test_bounded_by_coulomb(self, r, a):
        assert 0.0 <= podolsky_potential(r, 1.0, a) <= coulomb_potential(r, 1.0)

    def test_monotone_decrease(self):
        rs = np.logspace(-6, 3, 60)
        for a in (0.5, 1.0, 5.0):
            vals = [podolsky_potential(0.0, 1.0, a)] + [podolsky_potential(r, 1.0, a) for r in rs]
            assert all(u > v for u, v in zip(vals, vals[1:]))

    def test_limit_agreement_beyond_ten_screening_lengths(self):
        for a in (0.1, 1.0, 10.0):
            for r in np.logspace(math.log10(10.0 * a) + 0.01, math.log10(10.0 * a) + 2, 12):
                ratio = podolsky_potential(r, 1.0, a) / coulomb_potential(r, 1.0)
                assert abs(ratio - 1.0) < 0.01


class TestGreensFunction:
    def test_reference_value(self):
        expected = -(math.cos(1.0) + 1j * math.sin(1.0)) / FOUR_PI
        assert abs(greens_function(1.0, 1.0) - expected) < 1e-15

    def test_static_limit(self):
        assert abs(greens_function(1.0, 0.0) - (-1.0 / FOUR_PI)) < 1e-15

    @pytest.mark.parametrize("k", [0.0, 1.0, 2.5, -1.0])
    def test_modulus_independent_of_wavenumber(self, k):
        assert abs(abs(greens_function(2.0, k)) - 1.0 / (8.0 * math.pi)) < 1e-15

    def test_origin_is_singular(self):
        with pytest.raises(SingularPointError):
            greens_function(0.0, 1.0)

    def test_radial_helmholtz_residual(self):
        # u(rho) = rho G(rho, k) must satisfy u'' + k^2 u = 0
        k, h = 1.0, 1e-3
        for rho in np.linspace(0.5, 10.0, 200):
            u = lambda r: r * greens_function(r, k)
            second = (u(rho + h) - 2.0 * u(rho) + u(rho - h)) / h**2
            assert abs(second + k * k * u(rho)) <= 1e-5 * abs(u(rho))


class TestDeriveParams:
    def test_reference_scenario(self):
        assert PAPER_PARAMS.k == 1.0
        assert PAPER_PARAMS.lam == -1.0

    def test_wavenumber_arithmetic(self):
        params = derive_params(2.0, 1.0, 1.0, 1.0)
        assert abs(params.k - 2.0) < 1e-15

    def test_free_particle(self):
        assert derive_params(2.0, 1.0, 0.25, 0.0).lam == 0.0

    @pytest.mark.parametrize("bad", [{"mass": -1.0}, {"hbar": 0.0}, {"energy": -0.5}])
    def test_rejects_non_positive(self, bad):
        kwargs = dict(mass=2.0, hbar=1.0, energy=0.25, charge=1.0)
        kwargs.update(bad)
        with pytest.raises(InvalidArgumentError):
            derive_params(**kwargs)


class TestClosedFormWaves:
    def test_free_wave_at_zero_coupling(self):
        for x in (0.3, 1.0, 7.0):
            assert abs(psi_coulomb_closed(x, 0.0) - cmath.exp(1j * x)) < 1e-15
            assert abs(psi_podolsky_closed(x, 2.0, 0.0) - cmath.exp(1j * x)) < 1e-15

    def test_coulomb_reference_point(self):
        expected = cmath.exp(1j) + COULOMB_AMPLITUDE
        assert abs(psi_coulomb_closed(1.0, -1.0) - expected) < 1e-10
        assert abs(psi_coulomb_closed(1.0, -1.0) - (0.9044 + 0.5591j)) < 1e-4

    def test_origin_is_singular(self):
        with pytest.raises(SingularPointError):
            psi_coulomb_closed(0.0, -1.0)
        with pytest.raises(SingularPointError):
            psi_podolsky_closed(0.0, 1.0, -1.0)

    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
    def test_zero_screening_reproduces_coulomb(self, x):
        diff = psi_podolsky_closed(x, 0.0, -1.0) - psi_coulomb_closed(x, -1.0)
        assert abs(diff) < 1e-12

    def test_strong_screening_suppresses_scattering(self):
        scattered = psi_podolsky_closed(1.0, 5.0, -1.0) - cmath.exp(1j)
        assert abs(scattered) < 0.01

    def test_scattered_term_decays_like_inverse_distance(self):
        xs = np.linspace(10.0, 100.0, 30)
        fitted = [abs(psi_coulomb_closed(x, -1.0) - cmath.exp(1j * x)) * x for x in xs]
        assert max(fitted) - min(fitted) <= 1e-10 * max(fitted)

    def test_large_screening_stays_finite(self):
        value = psi_podolsky_closed(1.0, 50.0, -1.0)
        assert cmath.isfinite(value)
        assert abs(value - cmath.exp(1j)) < 1e-6


class TestReducedKernel:
    def test_separable_far_field_composition(self):
        kernel = reduced_kernel(
            PotentialSpec.coulomb(1.0),
            PAPER_PARAMS,
            Interval(1.0, 5.0),
            ReducedKernelChoice.separable_far_field(),
        )
        assert kernel.is_separable
        x, t = 2.0, 3.0
        expected = cmath.exp(1j * x) / x * cmath.exp(-1j * t) / (FOUR_PI * t)
        assert abs(kernel(x, t) - expected) < 1e-15

    def test_separable_far_field_podolsky_factor(self):
        kernel = reduced_kernel(
            PotentialSpec.podolsky(1.0, 1.0),
            PAPER_PARAMS,
            Interval(0.5, 5.0),
            ReducedKernelChoice.separable_far_field(),
        )
        expected = cmath.exp(-0.5j) * (1.0 - math.exp(-0.5)) / (FOUR_PI * 0.5)
        assert abs(kernel.h(0.5) - expected) < 1e-15
        assert abs(kernel.h(0.5) - (0.054956493369714421 - 0.030022869160958754j)) < 1e-15

    def test_regularized_green_diagonal(self):
        epsilon = 0.1
        kernel = reduced_kernel(
            PotentialSpec.coulomb(1.0),
            PAPER_PARAMS,
            Interval(1.0, 5.0),
            ReducedKernelChoice.regularized_green(epsilon),
        )
        t = 2.0
        expected = cmath.exp(1j * epsilon) / epsilon * coulomb_potential(t, 1.0)
        assert abs(kernel(t, t) - expected) < 1e-14

    def test_closed_form_only_is_rejected(self):
        with pytest.raises(InvalidArgumentError):
            reduced_kernel(
                PotentialSpec.coulomb(1.0),
                PAPER_PARAMS,
                Interval(1.0, 5.0),
                ReducedKernelChoice.closed_form_only(),
            )

    def test_interval_touching_singularity_is_rejected(self):
        with pytest.raises(SingularPointError):
            reduced_kernel(
                PotentialSpec.coulomb(1.0),
                PAPER_PARAMS,
                Interval(0.0, 5.0),
                ReducedKernelChoice.regularized_green(),
            )

    def test_podolsky_may_touch_origin_with_green_kernel(self):
        kernel = reduced_kernel(
            PotentialSpec.podolsky(1.0, 1.0),
            PAPER_PARAMS,
            Interval(0.0, 5.0),
            ReducedKernelChoice.regularized_green(),
        )
        assert cmath.isfinite(kernel(0.0, 0.0))

    def test_epsilon_must_be_positive(self):
        with pytest.raises(InvalidArgumentError):
            ReducedKernelChoice.regularized_green(0.0)


class TestSampleWavefunction:
    def test_coulomb_samples(self):
        wave = sample_wavefunction("coulomb", [1.0, 2.0, 3.0], 0.0, PAPER_PARAMS)
        assert np.all(np.isfinite(wave.values.view(float)))
        scattered = wave.values - np.exp(1j * wave.grid)
        np.testing.assert_allclose(np.abs(scattered) * wave.grid, abs(COULOMB_AMPLITUDE), atol=1e-10)

    def test_zero_screening_matches_coulomb(self):
        grid = np.linspace(0.5, 5.0, 40)
        coulomb = sample_wavefunction("coulomb", grid, 0.0, PAPER_PARAMS)
        podolsky = sample_wavefunction("podolsky", grid, 0.0, PAPER_PARAMS)
        assert np.abs(coulomb.values - podolsky.values).max() < 1e-12

    def test_strong_screening_stabilizes_amplitude(self):
        grid = np.arange(0.5, 5.0 + 1e-9, 0.01)
        coulomb = sample_wavefunction("coulomb", grid, 0.0, PAPER_PARAMS)
        podolsky = sample_wavefunction("podolsky", grid, 5.0, PAPER_PARAMS)
        assert amplitude_range(podolsky) < amplitude_range(coulomb)

    def test_nonpositive_grid_rejected(self):
        with pytest.raises(SingularPointError):
            sample_wavefunction("coulomb", [0.0, 1.0], 0.0, PAPER_PARAMS)

    def test_non_unit_wavenumber_rejected(self):
        params = derive_params(2.0, 1.0, 1.0, 1.0)  # k = 2
        with pytest.raises(InvalidArgumentError):
            sample_wavefunction("coulomb", [1.0], 0.0, params)

    def test_unknown_variant_rejected(self):
        with pytest.raises(InvalidArgumentError):
            sample_wavefunction("yukawa", [1.0], 0.0, PAPER_PARAMS)


class TestSpecsValidation:
    def test_potential_spec_invariants(self):
        with pytest.raises(InvalidArgumentError):
            PotentialSpec(kind="hulthen", charge=1.0)
        with pytest.raises(InvalidArgumentError):
            PotentialSpec.podolsky(1.0, -2.0)

    def test_podolsky_spec_with_zero_screening_matches_coulomb_spec(self):
        zero_screened = PotentialSpec.podolsky(1.0, 0.0)
        plain = PotentialSpec.coulomb(1.0)
        for r in (0.5, 1.0, 10.0):
            assert zero_screened.evaluate(r) == plain.evaluate(r)
        assert zero_screened.singular_at_origin
