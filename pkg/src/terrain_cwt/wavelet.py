"""Unit-energy 2D Mexican hat wavelet and the FFT-accelerated 2D CWT.

The mother wavelet is the radially symmetric second derivative of a
Gaussian, normalized to unit energy so coefficient magnitudes are
directly comparable across scales:

    psi(x, y) = (1/sqrt(2*pi)) * (2 - x^2 - y^2) * exp(-(x^2 + y^2)/2)

A scale-s copy keeps unit energy via the 2D scaling (1/s)*psi(x/s, y/s).
Its continuous Fourier transform (frequencies u, v in cycles per cell,
rho^2 = u^2 + v^2) follows from psi = -laplacian(gaussian):

    psi_hat_s(u, v) = (8*pi^3 / sqrt(2*pi)) * s^3 * rho^2 * exp(-2*pi^2*s^2*rho^2)

which is real, non-negative, radially symmetric, zero at the origin, and
peaks at rho = sqrt(2)/(2*pi*s). The conventional equivalent wavelength
used for axis labeling is lambda = 2*pi*s/sqrt(2.5) cells, the standard
Fourier-wavelength convention for this wavelet family; it sits within a
quarter-octave of the kernel's own peak response, which is why band and
peak tolerances in this package are expressed in ladder steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidScaleParams, NonPositiveInput, ScaleTooLargeForGrid
from .grid import DemGrid

# Wavelet support radius in units of s used to size the mirror pad. The
# kernel tail energy beyond radius 6s is ~1e-13 of total, keeping the
# circular-wraparound error of the padded FFT below 1e-7 relative; a
# radius of 5 would leave ~1e-5 wrap contamination at the borders.
TRUNCATION_RADIUS = 6.0

_NORM = 1.0 / math.sqrt(2.0 * math.pi)
_HAT_COEF = 8.0 * math.pi**3 * _NORM


@dataclass(frozen=True)
class ScaleSet:
    """Dyadic ladder of wavelet scales, in grid-cell units.

    scales[j] == s0 * 2**(j * delta_j), strictly increasing.
    """

    scales: np.ndarray
    s0: float
    delta_j: float

    def __post_init__(self):
        s = np.asarray(self.scales, dtype=np.float64)
        if s.ndim != 1 or s.size == 0:
            raise InvalidScaleParams("scales must be a non-empty 1D sequence")
        if not (s > 0).all() or not (np.diff(s) > 0).all():
            raise InvalidScaleParams("scales must be strictly increasing and positive")
        s = s.copy()
        s.setflags(write=False)
        object.__setattr__(self, "scales", s)

    def __len__(self) -> int:
        return self.scales.size

    def wavelengths(self, cell_size: float) -> np.ndarray:
        """Equivalent wavelength in meters for every scale."""
        return scale_to_wavelength(self.scales, cell_size)


@dataclass(frozen=True)
class CwtVolume:
    """Stack of per-scale CWT coefficient planes over one source grid."""

    planes: np.ndarray  # (n_scales, rows, cols)
    scales: ScaleSet
    cell_size: float

    def __post_init__(self):
        p = np.asarray(self.planes, dtype=np.float64)
        if p.ndim != 3 or p.shape[0] != len(self.scales):
            raise ValueError(
                f"planes shape {p.shape} inconsistent with {len(self.scales)} scales"
            )
        if not np.isfinite(p).all():
            raise ValueError("coefficient planes must be finite")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "planes", p)

    @property
    def grid_shape(self) -> tuple[int, int]:
        return self.planes.shape[1:]


def mexican_hat(x, y):
    """Unit-energy 2D Mexican hat at dimensionless coordinates (x, y)."""
    r2 = np.asarray(x, dtype=np.float64) ** 2 + np.asarray(y, dtype=np.float64) ** 2
    return _NORM * (2.0 - r2) * np.exp(-0.5 * r2)


def mexican_hat_hat(u, v, s: float = 1.0):
    """Continuous Fourier transform of the unit-energy scale-s wavelet.

    Evaluated at spatial frequency (u, v) in cycles per cell. Real,
    non-negative, radially symmetric, zero at DC, single radial maximum
    at sqrt(u^2 + v^2) = sqrt(2)/(2*pi*s).
    """
    if s <= 0:
        raise NonPositiveInput(f"scale must be > 0, got {s}")
    rho2 = np.asarray(u, dtype=np.float64) ** 2 + np.asarray(v, dtype=np.float64) ** 2
    return _kernel(rho2, s)


def _kernel(rho2: np.ndarray, s: float) -> np.ndarray:
    return _HAT_COEF * s**3 * rho2 * np.exp(-2.0 * math.pi**2 * s**2 * rho2)


def scale_to_wavelength(s, cell_size: float):
    """Equivalent wavelength in meters: lambda = 2*pi*s/sqrt(2.5) * cell_size."""
    s = np.asarray(s, dtype=np.float64)
    if not (s > 0).all() or cell_size <= 0:
        raise NonPositiveInput("scale and cell_size must be > 0")
    lam = 2.0 * math.pi * s / math.sqrt(2.5) * cell_size
    return float(lam) if lam.ndim == 0 else lam


def wavelength_to_scale(lam, cell_size: float):
    """Inverse of scale_to_wavelength: s = lambda*sqrt(2.5)/(2*pi*cell_size)."""
    lam = np.asarray(lam, dtype=np.float64)
    if not (lam > 0).all() or cell_size <= 0:
        raise NonPositiveInput("wavelength and cell_size must be > 0")
    s = lam * math.sqrt(2.5) / (2.0 * math.pi * cell_size)
    return float(s) if s.ndim == 0 else s


def build_scale_set(s0: float = 2.0, delta_j: float = 0.25, J: int = 8) -> ScaleSet:
    """Dyadic scale ladder s0 * 2**(j*delta_j) for j = 0..J.

    s0 below 2 cells would probe wavelengths at the sampling limit, so it
    is rejected; delta_j in (0, 1]; J >= 0 (J = 0 gives a single scale).
    """
    if s0 < 2.0:
        raise InvalidScaleParams(f"s0 must be >= 2 cells, got {s0}")
    if not 0 < delta_j <= 1.0:
        raise InvalidScaleParams(f"delta_j must be in (0, 1], got {delta_j}")
    if J < 0 or int(J) != J:
        raise InvalidScaleParams(f"J must be a non-negative integer, got {J}")
    scales = s0 * 2.0 ** (np.arange(int(J) + 1) * delta_j)
    return ScaleSet(scales=scales, s0=s0, delta_j=delta_j)


def max_valid_scale(shape: tuple[int, int]) -> float:
    """Largest usable scale: its equivalent wavelength equals the short grid side."""
    return min(shape) * math.sqrt(2.5) / (2.0 * math.pi)


def default_scale_set(
    shape: tuple[int, int], s0: float = 2.0, delta_j: float = 0.25
) -> ScaleSet:
    """Ladder from s0 up to the largest scale the grid can represent."""
    smax = max_valid_scale(shape)
    if smax < s0:
        raise InvalidScaleParams(
            f"grid {shape} too small for the minimum scale {s0} "
            f"(max usable scale {smax:.2f})"
        )
    J = int(math.floor(math.log2(smax / s0) / delta_j))
    return build_scale_set(s0=s0, delta_j=delta_j, J=J)


def cwt2d(
    grid: DemGrid,
    scales: ScaleSet,
    boundary: str = "mirror",
    pad_for_scale: float | None = None,
) -> CwtVolume:
    """2D continuous wavelet transform of a DEM at every ladder scale.

    Correlates the elevation field with the unit-energy scaled wavelet
    (1/s)*psi((x-a)/s, (y-b)/s) for each scale s. The wavelet is real and
    even, so correlation and convolution coincide; the product is formed
    in the frequency domain using the analytic kernel (mexican_hat_hat)
    rather than an FFT of sampled wavelet values, avoiding sampling error
    at small scales.

    boundary:
        'mirror' (default) reflect-pads by ceil(TRUNCATION_RADIUS * s_max)
        cells before the FFT and crops afterwards, suppressing edge
        artifacts; 'periodic' wraps without padding, which is exact for
        fields holding a whole number of periods.

    pad_for_scale sizes the mirror pad for a larger scale than the ladder
    holds, so transforms of ladder subsets share one geometry and their
    per-scale planes coincide bit-for-bit with the full ladder's.

    Raises ScaleTooLargeForGrid when the largest scale's equivalent
    wavelength exceeds the short side of the grid.
    """
    grid.require_complete("cwt2d")
    grid.require_min_shape("cwt2d")
    if boundary not in ("mirror", "periodic"):
        raise ValueError(f"boundary must be 'mirror' or 'periodic', got {boundary!r}")

    s = scales.scales
    smax = float(s[-1])
    if smax > max_valid_scale(grid.shape):
        raise ScaleTooLargeForGrid(
            f"scale {smax:.2f} probes wavelength "
            f"{2 * math.pi * smax / math.sqrt(2.5):.1f} cells, beyond the "
            f"{min(grid.shape)}-cell short side of the grid"
        )

    if boundary == "mirror":
        pad = math.ceil(TRUNCATION_RADIUS * max(smax, pad_for_scale or 0.0))
        gpad = np.pad(grid.values, pad, mode="reflect")
    else:
        pad = 0
        gpad = grid.values

    rows_p, cols_p = gpad.shape
    G = np.fft.rfft2(gpad)
    fy = np.fft.fftfreq(rows_p)          # cycles per cell
    fx = np.fft.rfftfreq(cols_p)
    rho2 = fy[:, None] ** 2 + fx[None, :] ** 2

    planes = np.empty((s.size, grid.rows, grid.cols))
    for j, sj in enumerate(s):
        full = np.fft.irfft2(G * _kernel(rho2, float(sj)), s=gpad.shape)
        planes[j] = full[pad : pad + grid.rows, pad : pad + grid.cols]

    return CwtVolume(planes=planes, scales=scales, cell_size=grid.cell_size)
