"""Power spectra of terrain by two routes, their ratio, and band extraction.

The wavelet route turns a CwtVolume into a per-scale variance spectrum;
the Fourier route estimates a 2D periodogram and collapses it to a radial
curve. Spectra from rugged terrain are normalized by flat-reference
spectra, and the characteristic band of a normalized peak is measured as
its full width at half maximum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import AllBinsFloored, AxisMismatch, NoPeak
from .grid import DemGrid, detrend_plane
from .wavelet import CwtVolume, ScaleSet, cwt2d, default_scale_set, scale_to_wavelength


@dataclass(frozen=True)
class PowerSpectrum:
    """1D curve of power versus spatial frequency.

    frequencies are cycles per meter, strictly increasing, DC excluded;
    power is non-negative; method is 'cwt' or 'dft' (kept through
    normalization).
    """

    frequencies: np.ndarray
    power: np.ndarray
    method: str
    grid_shape: tuple[int, int]
    cell_size: float

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=np.float64)
        p = np.asarray(self.power, dtype=np.float64)
        if f.shape != p.shape or f.ndim != 1:
            raise ValueError("frequencies and power must be matching 1D arrays")
        if f.size and (not (f > 0).all() or not (np.diff(f) > 0).all()):
            raise ValueError("frequencies must be strictly increasing and positive")
        if p.size and not (p >= 0).all():
            raise ValueError("power must be non-negative")
        f = f.copy()
        p = p.copy()
        f.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "power", p)

    @property
    def wavelengths(self) -> np.ndarray:
        return 1.0 / self.frequencies

    def __len__(self) -> int:
        return self.frequencies.size


@dataclass(frozen=True)
class Periodogram2D:
    """2D DFT periodogram on the discrete frequency lattice.

    power is laid out like numpy's fft2 output (DC at index (0, 0),
    conjugate-symmetric for the real input field); freq_step holds the
    per-axis lattice spacing (1/(rows*cell), 1/(cols*cell)) in cycles per
    meter.
    """

    power: np.ndarray
    freq_step: tuple[float, float]
    cell_size: float

    def __post_init__(self):
        p = np.asarray(self.power, dtype=np.float64)
        if p.ndim != 2:
            raise ValueError("power must be 2D")
        if not np.isfinite(p).all() or (p < 0).any():
            raise ValueError("power must be finite and non-negative")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "power", p)

    @property
    def dc_index(self) -> tuple[int, int]:
        return (0, 0)


@dataclass(frozen=True)
class BandResult:
    """Spectral peak and its FWHM frequency band.

    f_lo and f_hi bracket the peak frequency; when a half-maximum
    crossing is not reached before the axis ends, the end frequency is
    used and the corresponding censored flag is set.
    """

    peak_wavelength: float
    peak_power: float
    f_lo: float
    f_hi: float
    method: str
    censored_lo: bool = False
    censored_hi: bool = False

    def __post_init__(self):
        f_peak = 1.0 / self.peak_wavelength
        if not self.f_lo < f_peak < self.f_hi:
            raise ValueError(
                f"band [{self.f_lo}, {self.f_hi}] does not bracket peak {f_peak}"
            )


# ---------------------------------------------------------------------------
# Spectrum estimation
# ---------------------------------------------------------------------------

def cwt_variance_spectrum(volume: CwtVolume) -> PowerSpectrum:
    """Variance of the wavelet coefficients per scale.

    power(s) = sum over the grid of CWT(a, b, s)^2 / (2 * Na * Nb), with
    (Na, Nb) the grid shape; the factor of 2 is part of the adopted
    variance normalization and cancels in rugged/flat ratios. The
    frequency of each scale is 1/scale_to_wavelength(s).
    """
    na, nb = volume.grid_shape
    lam = volume.scales.wavelengths(volume.cell_size)
    # ascending scale means descending frequency; flip to ascending
    freqs = (1.0 / lam)[::-1]
    var = np.square(volume.planes).reshape(len(volume.scales), -1).sum(axis=1)
    var = var[::-1] / (2.0 * na * nb)
    return PowerSpectrum(
        frequencies=freqs,
        power=var,
        method="cwt",
        grid_shape=(na, nb),
        cell_size=volume.cell_size,
    )


def dft_periodogram(grid: DemGrid, window: str = "hann") -> Periodogram2D:
    """2D periodogram |FFT(z)|^2 / (M^2 * N^2).

    With window='hann' the field is tapered by a separable Hann window
    and the tile mean is removed first; the result is divided by the
    taper's mean-square gain so total power still matches mean(z^2) to
    about a percent on noise-like fields. With window='none' the identity
    sum(p) == mean(z^2) is exact.
    """
    grid.require_complete("dft_periodogram")
    if window not in ("hann", "none"):
        raise ValueError(f"window must be 'hann' or 'none', got {window!r}")
    z = grid.values
    m, n = z.shape
    if window == "hann":
        taper = np.outer(np.hanning(m), np.hanning(n))
        z = (z - z.mean()) * taper
        gain = float(np.mean(taper**2))
    else:
        gain = 1.0
    p = np.abs(np.fft.fft2(z)) ** 2 / (m * m * n * n * gain)
    step = (1.0 / (m * grid.cell_size), 1.0 / (n * grid.cell_size))
    return Periodogram2D(power=p, freq_step=step, cell_size=grid.cell_size)


def radial_average(p: Periodogram2D) -> PowerSpectrum:
    """Collapse a 2D periodogram into a radial curve by annulus means.

    Bin width equals the fundamental frequency of the longer axis; each
    bin's power is the mean of the lattice points whose radial frequency
    falls inside it (so isotropic white noise stays flat). DC is
    excluded and empty bins are omitted; reported frequencies are bin
    centers.
    """
    m, n = p.power.shape
    df = min(p.freq_step)
    fy = np.fft.fftfreq(m, d=p.cell_size)
    fx = np.fft.fftfreq(n, d=p.cell_size)
    rho = np.hypot(fy[:, None], fx[None, :])

    bins = np.floor(rho / df + 1e-9).astype(np.int64)
    bins[0, 0] = -1  # drop DC
    flat_bins = bins.ravel()
    keep = flat_bins >= 0
    flat_bins = flat_bins[keep]
    flat_pow = p.power.ravel()[keep]

    nbins = int(flat_bins.max()) + 1
    counts = np.bincount(flat_bins, minlength=nbins)
    sums = np.bincount(flat_bins, weights=flat_pow, minlength=nbins)
    nonempty = counts > 0
    centers = (np.arange(nbins)[nonempty] + 0.5) * df
    means = sums[nonempty] / counts[nonempty]
    return PowerSpectrum(
        frequencies=centers,
        power=means,
        method="dft",
        grid_shape=(m, n),
        cell_size=p.cell_size,
    )


# ---------------------------------------------------------------------------
# Normalization and band extraction
# ---------------------------------------------------------------------------

FLOOR_RATIO = 1e-12  # of the flat spectrum's maximum


def normalize_spectrum(
    rugged: PowerSpectrum, flat: PowerSpectrum
) -> tuple[PowerSpectrum, np.ndarray]:
    """Pointwise ratio rugged/flat on a shared frequency axis.

    Samples where the flat reference falls below FLOOR_RATIO times its
    maximum are dropped; the second return value lists their frequencies.
    Raises AxisMismatch for different methods or axes, AllBinsFloored if
    no sample survives.
    """
    if rugged.method != flat.method:
        raise AxisMismatch(f"methods differ: {rugged.method} vs {flat.method}")
    if len(rugged) != len(flat) or not np.allclose(
        rugged.frequencies, flat.frequencies, rtol=1e-9, atol=0.0
    ):
        raise AxisMismatch("frequency axes differ; recompute with a shared layout")

    fmax = flat.power.max() if len(flat) else 0.0
    if fmax <= 0.0:
        raise AllBinsFloored("flat reference spectrum is identically zero")
    floor = FLOOR_RATIO * fmax
    keep = flat.power >= floor
    if not keep.any():
        raise AllBinsFloored("every flat-reference sample sits below the floor")
    dropped = rugged.frequencies[~keep]
    ratio = rugged.power[keep] / flat.power[keep]
    out = PowerSpectrum(
        frequencies=rugged.frequencies[keep],
        power=ratio,
        method=rugged.method,
        grid_shape=rugged.grid_shape,
        cell_size=rugged.cell_size,
    )
    return out, dropped


def _interior_maxima(p: np.ndarray) -> np.ndarray:
    i = np.arange(1, p.size - 1)
    strict = (p[i] > p[i - 1]) & (p[i] > p[i + 1])
    return i[strict]


def _cross(f: np.ndarray, p: np.ndarray, lo: int, hi: int, half: float, interp: str) -> float:
    """Frequency where p crosses `half` between samples lo and hi (p[lo] != p[hi])."""
    frac = (half - p[lo]) / (p[hi] - p[lo])
    if interp == "log":
        return float(np.exp(np.log(f[lo]) + frac * (np.log(f[hi]) - np.log(f[lo]))))
    return float(f[lo] + frac * (f[hi] - f[lo]))


def find_peak_fwhm(spectrum: PowerSpectrum, interp: str = "log") -> BandResult:
    """Locate a spectrum's dominant peak and its half-maximum band.

    The peak is the global maximum excluding the lowest-frequency sample.
    Half-maximum crossings on each side are located by interpolating
    power against log-frequency (or linear frequency with
    interp='linear'); an edge reached before the crossing censors that
    side at the end frequency. Raises NoPeak for constant spectra and
    for maxima at boundary samples without an interior local maximum.
    """
    if interp not in ("log", "linear"):
        raise ValueError(f"interp must be 'log' or 'linear', got {interp!r}")
    f = spectrum.frequencies
    p = spectrum.power
    n = p.size
    if n < 3:
        raise ValueError(f"need at least 3 samples, got {n}")
    span = p.max() - p.min()
    if span <= 1e-12 * max(p.max(), 1e-300):
        raise NoPeak("spectrum is constant")

    m = 1 + int(np.argmax(p[1:]))
    shoulder = m == 1 and p[0] >= p[1]  # true maximum sits on the excluded sample
    if m == n - 1 or shoulder:
        interior = _interior_maxima(p)
        if interior.size == 0:
            raise NoPeak("maximum at a boundary sample with no interior prominence")
        m = int(interior[np.argmax(p[interior])])

    half = p[m] / 2.0

    censored_lo = False
    i = m
    while i > 0 and p[i - 1] >= half:
        i -= 1
    if i == 0:
        f_lo = float(f[0])
        censored_lo = True
    else:
        f_lo = _cross(f, p, i - 1, i, half, interp)

    censored_hi = False
    i = m
    while i < n - 1 and p[i + 1] >= half:
        i += 1
    if i == n - 1:
        f_hi = float(f[n - 1])
        censored_hi = True
    else:
        f_hi = _cross(f, p, i + 1, i, half, interp)

    return BandResult(
        peak_wavelength=float(1.0 / f[m]),
        peak_power=float(p[m]),
        f_lo=f_lo,
        f_hi=f_hi,
        method=spectrum.method,
        censored_lo=censored_lo,
        censored_hi=censored_hi,
    )


# ---------------------------------------------------------------------------
# Pipelines and CSV export
# ---------------------------------------------------------------------------

def cwt_spectrum(
    grid: DemGrid,
    scales: ScaleSet | None = None,
    detrend: bool = True,
    boundary: str = "mirror",
) -> PowerSpectrum:
    """Detrend (optional), transform, and reduce to a variance spectrum."""
    g = detrend_plane(grid)[0] if detrend else grid
    sc = scales if scales is not None else default_scale_set(g.shape)
    return cwt_variance_spectrum(cwt2d(g, sc, boundary=boundary))


def dft_spectrum(
    grid: DemGrid, window: str = "hann", detrend: bool = True
) -> PowerSpectrum:
    """Detrend (optional), estimate the periodogram, and radially average."""
    g = detrend_plane(grid)[0] if detrend else grid
    return radial_average(dft_periodogram(g, window=window))


def write_spectrum_csv(spectra: PowerSpectrum | Iterable[PowerSpectrum], path) -> None:
    """Write one or more spectra as CSV blocks sharing a column ordering.

    Columns: frequency_per_m, wavelength_m, power, method. Rows within
    each method block are ordered by ascending frequency; floats are
    printed with shortest-exact formatting so reruns are byte-identical.
    """
    if isinstance(spectra, PowerSpectrum):
        spectra = [spectra]
    lines = ["frequency_per_m,wavelength_m,power,method"]
    for sp in spectra:
        for fq, pw in zip(sp.frequencies, sp.power):
            lines.append(f"{float(fq)!r},{float(1.0 / fq)!r},{float(pw)!r},{sp.method}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def spectra_for_methods(
    grid: DemGrid,
    method: str,
    scales: ScaleSet | None = None,
    window: str = "hann",
    detrend: bool = True,
) -> list[PowerSpectrum]:
    """Spectra for method 'cwt', 'dft', or 'both' (cwt first)."""
    out: list[PowerSpectrum] = []
    if method in ("cwt", "both"):
        out.append(cwt_spectrum(grid, scales=scales, detrend=detrend))
    if method in ("dft", "both"):
        out.append(dft_spectrum(grid, window=window, detrend=detrend))
    if not out:
        raise ValueError(f"method must be 'cwt', 'dft', or 'both', got {method!r}")
    return out
