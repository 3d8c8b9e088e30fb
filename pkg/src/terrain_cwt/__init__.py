"""Spectral terrain analysis for high-resolution DEMs.

Detects steep, slide-prone relief by computing 2D continuous-wavelet and
Fourier power spectra, extracting the characteristic wavelength band of
hazardous slopes, and mapping per-cell band power next to hillshade
relief renderings.
"""

__version__ = "0.1.0"

from .grid import DemGrid, SynthSpec, crop, detrend_plane, fill_nodata, load_ascii_grid, synth_terrain, write_ascii_grid
from .hillshade import GradientField, ShadeParams, gradient, hillshade, slope_aspect
from .riskmap import (
    FrequencyBand,
    PowerMap,
    cwt_band_power_map,
    dft_band_power_map,
    render_power_map,
)
from .spectral import (
    BandResult,
    Periodogram2D,
    PowerSpectrum,
    cwt_spectrum,
    cwt_variance_spectrum,
    dft_periodogram,
    dft_spectrum,
    find_peak_fwhm,
    normalize_spectrum,
    radial_average,
    write_spectrum_csv,
)
from .wavelet import (
    CwtVolume,
    ScaleSet,
    build_scale_set,
    cwt2d,
    default_scale_set,
    mexican_hat,
    mexican_hat_hat,
    scale_to_wavelength,
    wavelength_to_scale,
)

__all__ = [
    "BandResult",
    "CwtVolume",
    "DemGrid",
    "FrequencyBand",
    "GradientField",
    "Periodogram2D",
    "PowerMap",
    "PowerSpectrum",
    "ScaleSet",
    "ShadeParams",
    "SynthSpec",
    "build_scale_set",
    "crop",
    "cwt2d",
    "cwt_band_power_map",
    "cwt_spectrum",
    "cwt_variance_spectrum",
    "default_scale_set",
    "detrend_plane",
    "dft_band_power_map",
    "dft_periodogram",
    "dft_spectrum",
    "fill_nodata",
    "find_peak_fwhm",
    "gradient",
    "hillshade",
    "load_ascii_grid",
    "mexican_hat",
    "mexican_hat_hat",
    "normalize_spectrum",
    "radial_average",
    "render_power_map",
    "scale_to_wavelength",
    "slope_aspect",
    "synth_terrain",
    "wavelength_to_scale",
    "write_ascii_grid",
    "write_spectrum_csv",
]
