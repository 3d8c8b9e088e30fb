"""Tests for the Mexican hat wavelet, scale ladder, and 2D CWT."""

import numpy as np
import pytest

from terrain_cwt.errors import InvalidScaleParams, NonPositiveInput, ScaleTooLargeForGrid
from terrain_cwt.grid import DemGrid
from terrain_cwt.wavelet import (
    CwtVolume,
    ScaleSet,
    build_scale_set,
    cwt2d,
    default_scale_set,
    max_valid_scale,
    mexican_hat,
    mexican_hat_hat,
    scale_to_wavelength,
    wavelength_to_scale,
)

from conftest import from_array, tone_grid
from oracles import brute_force_cwt, quadrature


class TestMexicanHat:
    def test_value_at_origin(self):
        assert mexican_hat(0.0, 0.0) == pytest.approx(0.7978845608, abs=1e-9)

    def test_zero_ring_at_radius_sqrt2(self):
        assert mexican_hat(np.sqrt(2.0), 0.0) == pytest.approx(0.0, abs=1e-15)
        assert mexican_hat(1.0, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_value_at_unit_radius(self):
        assert mexican_hat(1.0, 0.0) == pytest.approx(0.2419707245, abs=1e-9)

    def test_unit_energy_quadrature(self):
        assert quadrature(lambda x, y: mexican_hat(x, y) ** 2) == pytest.approx(
            1.0, abs=1e-3
        )

    def test_zero_mean_quadrature(self):
        assert abs(quadrature(mexican_hat)) < 1e-6

    def test_radial_symmetry(self, rng):
        r = rng.uniform(0, 4, size=64)
        t = rng.uniform(0, 2 * np.pi, size=64)
        a = mexican_hat(r * np.cos(t), r * np.sin(t))
        b = mexican_hat(r, np.zeros_like(r))
        assert np.allclose(a, b, atol=1e-14)


class TestMexicanHatHat:
    def test_zero_at_dc(self):
        for s in (1.0, 3.0, 8.0):
            assert mexican_hat_hat(0.0, 0.0, s) == 0.0

    def test_real_nonnegative_radially_symmetric(self, rng):
        u = rng.uniform(-0.5, 0.5, size=128)
        v = rng.uniform(-0.5, 0.5, size=128)
        vals = mexican_hat_hat(u, v, 2.0)
        assert np.all(vals >= 0.0)
        rho = np.hypot(u, v)
        assert np.allclose(vals, mexican_hat_hat(rho, 0.0, 2.0), atol=1e-14)

    def test_single_radial_maximum_at_sqrt2_over_2pis(self):
        """The kernel peaks at rho = sqrt(2)/(2*pi*s) and falls off both ways."""
        for s in (1.0, 4.0, 8.0):
            rho = np.linspace(1e-6, 1.0 / s, 200001)
            vals = mexican_hat_hat(rho, 0.0, s)
            peak = rho[np.argmax(vals)]
            assert peak == pytest.approx(np.sqrt(2) / (2 * np.pi * s), rel=1e-4)
            k = np.argmax(vals)
            assert np.all(np.diff(vals[:k]) > 0) and np.all(np.diff(vals[k:]) < 0)

    def test_peak_frequency_from_a_sampled_fft_oracle(self):
        """An FFT of densely sampled psi_s locates the same radial peak."""
        s, n = 8.0, 256
        c = np.arange(n) - n // 2
        X, Y = np.meshgrid(c, c)
        F = np.fft.fft2(np.fft.ifftshift((1.0 / s) * mexican_hat(X / s, Y / s)))
        freqs = np.fft.fftfreq(n)
        rho = np.hypot(freqs[:, None], freqs[None, :])
        peak = rho.ravel()[np.argmax(F.real.ravel())]
        assert peak == pytest.approx(np.sqrt(2) / (2 * np.pi * s), rel=5e-3)

    def test_peak_sits_within_a_ladder_step_of_the_wavelength_convention(self):
        """f_peak and sqrt(2.5)/(2*pi*s) agree to better than one delta_j=0.25 step."""
        s = 4.0
        rho = np.linspace(1e-6, 0.5, 400001)
        peak = rho[np.argmax(mexican_hat_hat(rho, 0.0, s))]
        convention = 1.0 / (scale_to_wavelength(s, 1.0))
        assert abs(np.log2(peak / convention)) < 0.25

    def test_sampled_fft_cross_check_at_s8(self):
        """FFT of the sampled wavelet matches the analytic kernel to < 1e-3."""
        s, n = 8.0, 256
        c = np.arange(n) - n // 2
        X, Y = np.meshgrid(c, c)
        F = np.fft.fft2(np.fft.ifftshift((1.0 / s) * mexican_hat(X / s, Y / s)))
        freqs = np.fft.fftfreq(n)
        analytic = mexican_hat_hat(*np.meshgrid(freqs, freqs), s)
        assert np.abs(F.imag).max() < 1e-12
        rel = np.abs(F.real - analytic).max() / analytic.max()
        assert rel < 1e-3

    def test_rejects_non_positive_scale(self):
        with pytest.raises(NonPositiveInput):
            mexican_hat_hat(0.1, 0.1, 0.0)


class TestScaleWavelength:
    def test_unit_scale_wavelength(self):
        assert scale_to_wavelength(1.0, 1.0) == pytest.approx(3.97384, abs=1e-4)

    def test_inverse_pair(self):
        for s in (2.0, 3.7, 16.0):
            for cell in (1.0, 30.0):
                back = wavelength_to_scale(scale_to_wavelength(s, cell), cell)
                assert back == pytest.approx(s, abs=1e-12)

    def test_wavelength_2222m_maps_to_the_expected_scale(self):
        cell = 30.0
        s = wavelength_to_scale(2222.0, cell)
        assert s == pytest.approx(2222.0 * np.sqrt(2.5) / (2 * np.pi * cell), rel=1e-12)

    def test_rejects_non_positive(self):
        with pytest.raises(NonPositiveInput):
            scale_to_wavelength(0.0, 1.0)
        with pytest.raises(NonPositiveInput):
            wavelength_to_scale(100.0, -1.0)


class TestBuildScaleSet:
    def test_octave_ladder(self):
        assert build_scale_set(2.0, 1.0, 3).scales.tolist() == [2.0, 4.0, 8.0, 16.0]

    def test_quarter_octave_ladder(self):
        got = build_scale_set(2.0, 0.25, 4).scales
        assert np.allclose(got, [2.0, 2.378, 2.828, 3.364, 4.0], atol=1e-3)

    def test_single_scale_set(self):
        assert build_scale_set(2.0, 0.25, 0).scales.tolist() == [2.0]

    def test_invalid_parameters(self):
        with pytest.raises(InvalidScaleParams):
            build_scale_set(1.5, 0.25, 3)
        with pytest.raises(InvalidScaleParams):
            build_scale_set(2.0, 0.0, 3)
        with pytest.raises(InvalidScaleParams):
            build_scale_set(2.0, 1.5, 3)
        with pytest.raises(InvalidScaleParams):
            build_scale_set(2.0, 0.25, -1)

    def test_default_ladder_tops_out_at_the_grid_extent(self):
        sc = default_scale_set((256, 256))
        lam = sc.wavelengths(1.0)
        assert lam[-1] <= 256.0
        next_scale = sc.scales[-1] * 2**0.25
        assert scale_to_wavelength(next_scale, 1.0) > 256.0


class TestCwt2d:
    def test_constant_grid_gives_zero_coefficients(self):
        g = from_array(np.full((64, 64), 7.0))
        vol = cwt2d(g, build_scale_set(2.0, 1.0, 1))
        assert np.abs(vol.planes).max() < 1e-10 * 7.0

    def test_impulse_reproduces_the_sampled_wavelet(self):
        v = np.zeros((64, 64))
        v[32, 32] = 1.0
        s = 3.0
        vol = cwt2d(DemGrid(v, 1.0), ScaleSet(np.array([s]), s, 0.25))
        X, Y = np.meshgrid(np.arange(64.0) - 32, np.arange(64.0) - 32)
        expected = (1.0 / s) * mexican_hat(X / s, Y / s)
        rel = np.abs(vol.planes[0] - expected).max() / np.abs(expected).max()
        assert rel < 1e-6

    def test_fft_path_matches_brute_force_summation(self, rng):
        g = DemGrid(rng.normal(size=(16, 16)), 1.0)
        sc = build_scale_set(2.0, 1.0, 1)  # scales 2, 4
        fft_planes = cwt2d(g, sc).planes
        bf = brute_force_cwt(g, sc)
        for j in range(len(sc)):
            rel = np.abs(fft_planes[j] - bf[j]).max() / np.abs(bf[j]).max()
            assert rel < 1e-6

    def test_periodic_path_matches_brute_force_summation(self, rng):
        g = DemGrid(rng.normal(size=(16, 16)), 1.0)
        sc = build_scale_set(2.0, 1.0, 0)
        fft_planes = cwt2d(g, sc, boundary="periodic").planes
        bf = brute_force_cwt(g, sc, boundary="periodic")
        rel = np.abs(fft_planes[0] - bf[0]).max() / np.abs(bf[0]).max()
        assert rel < 1e-6

    def test_linearity(self, rng):
        ga = DemGrid(rng.normal(size=(40, 40)), 1.0)
        gb = DemGrid(rng.normal(size=(40, 40)), 1.0)
        sc = build_scale_set(2.0, 0.5, 2)
        va = cwt2d(ga, sc).planes
        vb = cwt2d(gb, sc).planes
        vab = cwt2d(DemGrid(2.5 * ga.values - 1.25 * gb.values, 1.0), sc).planes
        rel = np.abs(vab - (2.5 * va - 1.25 * vb)).max() / np.abs(vab).max()
        assert rel < 1e-9

    def test_shift_covariance_on_an_exactly_periodic_field(self):
        g = tone_grid(16.0, n=64)
        sc = build_scale_set(2.0, 0.5, 2)
        base = cwt2d(g, sc, boundary="periodic").planes
        shifted = cwt2d(
            DemGrid(np.roll(g.values, (5, -3), axis=(0, 1)), 1.0), sc, boundary="periodic"
        ).planes
        assert np.abs(np.roll(base, (5, -3), axis=(1, 2)) - shifted).max() < 1e-12

    def test_tone_peaks_at_the_matching_ladder_scale(self):
        """Variance argmax lands within one ladder step of the tone's scale."""
        lam = 32.0
        g = tone_grid(lam, n=256)
        sc = default_scale_set((256, 256))
        vol = cwt2d(g, sc)
        var = np.square(vol.planes).sum(axis=(1, 2))
        s_peak = sc.scales[np.argmax(var)]
        lam_implied = scale_to_wavelength(s_peak, 1.0)
        assert abs(np.log2(lam_implied / lam)) <= 0.25

    def test_scale_too_large_for_grid(self):
        g = from_array(np.zeros((32, 32)))
        assert max_valid_scale((32, 32)) == pytest.approx(8.0527, abs=1e-3)
        with pytest.raises(ScaleTooLargeForGrid):
            cwt2d(g, build_scale_set(2.0, 1.0, 3))  # includes scale 16

    def test_boundary_argument_validation(self):
        g = from_array(np.zeros((16, 16)))
        with pytest.raises(ValueError, match="boundary"):
            cwt2d(g, build_scale_set(2.0, 1.0, 0), boundary="wrap")

    def test_volume_shape_and_invariants(self, rng):
        g = DemGrid(rng.normal(size=(20, 24)), 2.0)
        sc = build_scale_set(2.0, 0.5, 2)
        vol = cwt2d(g, sc)
        assert vol.planes.shape == (3, 20, 24)
        assert np.isfinite(vol.planes).all()
        with pytest.raises(ValueError):
            CwtVolume(np.zeros((2, 4, 4)), sc, 1.0)  # plane count mismatch
