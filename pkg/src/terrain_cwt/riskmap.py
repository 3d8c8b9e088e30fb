"""Per-cell maps of band-limited spectral power and their color rendering.

High values flag terrain whose relief concentrates power in the
characteristic wavelength band of unstable slopes; the rendered product
runs a blue (stable, flat) to dark-wine (steep, hazard-prone) ramp over
log10 power.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from PIL import Image, ImageDraw, ImageFont

from .errors import AllZeroMap, EmptyBand, WindowLargerThanGrid
from .grid import DemGrid
from .spectral import dft_periodogram
from .wavelet import ScaleSet, cwt2d, default_scale_set, scale_to_wavelength


@dataclass(frozen=True)
class FrequencyBand:
    """Radial frequency interval [f_lo, f_hi] in cycles per meter."""

    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not 0 < self.f_lo < self.f_hi:
            raise ValueError(f"need 0 < f_lo < f_hi, got [{self.f_lo}, {self.f_hi}]")


@dataclass(frozen=True)
class PowerMap:
    """Per-cell summed band power, plus the log10 range used for display."""

    values: np.ndarray
    method: str
    band: FrequencyBand
    cell_size: float
    origin_x: float = 0.0
    origin_y: float = 0.0
    log10_range: tuple[float, float] | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("values must be 2D")
        if not np.isfinite(v).all() or (v < 0).any():
            raise ValueError("band power must be finite and non-negative")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.log10_range is None and v.max() > 0:
            object.__setattr__(self, "log10_range", display_range(v))


def scales_in_band(ladder: ScaleSet, band: FrequencyBand, cell_size: float) -> ScaleSet:
    """Ladder scales whose equivalent frequency lies inside the band.

    Frequency falls monotonically with scale, so the kept scales form a
    contiguous run and remain a valid dyadic ladder. Raises EmptyBand if
    nothing qualifies.
    """
    freqs = 1.0 / ladder.wavelengths(cell_size)
    keep = (freqs >= band.f_lo) & (freqs <= band.f_hi)
    if not keep.any():
        lo = 1.0 / scale_to_wavelength(ladder.scales[0], cell_size)
        hi = 1.0 / scale_to_wavelength(ladder.scales[-1], cell_size)
        raise EmptyBand(
            f"no ladder scale maps into [{band.f_lo:.3g}, {band.f_hi:.3g}] /m; "
            f"ladder covers [{hi:.3g}, {lo:.3g}] /m"
        )
    kept = ladder.scales[keep]
    return ScaleSet(scales=kept, s0=float(kept[0]), delta_j=ladder.delta_j)


def cwt_band_power_map(
    grid: DemGrid,
    band: FrequencyBand,
    ladder: ScaleSet | None = None,
    boundary: str = "mirror",
) -> PowerMap:
    """Sum of squared wavelet coefficients over the in-band scales.

    Expects a detrended, nodata-free grid. The ladder defaults to the
    grid's full dyadic ladder; restricting the same ladder to two bands
    that partition it makes the two maps sum exactly to the full-ladder
    map.
    """
    grid.require_complete("cwt_band_power_map")
    full = ladder if ladder is not None else default_scale_set(grid.shape)
    kept = scales_in_band(full, band, grid.cell_size)
    # pad for the full ladder so maps over ladder partitions add exactly
    vol = cwt2d(grid, kept, boundary=boundary, pad_for_scale=float(full.scales[-1]))
    values = np.square(vol.planes).sum(axis=0)
    return PowerMap(
        values=values,
        method="cwt",
        band=band,
        cell_size=grid.cell_size,
        origin_x=grid.origin_x,
        origin_y=grid.origin_y,
    )


def default_window_cells(band: FrequencyBand, cell_size: float) -> int:
    """Smallest power of two spanning two periods of the band's low edge."""
    need = 2.0 / (band.f_lo * cell_size)
    return int(2 ** math.ceil(math.log2(max(need, 2.0))))


def dft_band_power_map(
    grid: DemGrid,
    band: FrequencyBand,
    window_cells: int | None = None,
    overlap: float = 0.5,
) -> PowerMap:
    """Sliding Hann-windowed periodogram power summed over the band.

    Square tiles of ``window_cells`` slide with the given overlap; each
    tile contributes one scalar (the sum of periodogram power at lattice
    frequencies inside the band) at its center, and the center lattice is
    bilinearly interpolated back to full resolution with edge clamping.
    A warning is issued when the window is too short to resolve f_lo.
    """
    grid.require_complete("dft_band_power_map")
    if not 0 <= overlap < 1:
        raise ValueError(f"overlap must be in [0, 1), got {overlap}")
    w = window_cells if window_cells is not None else default_window_cells(band, grid.cell_size)
    if w < 2:
        raise ValueError(f"window_cells must be >= 2, got {w}")
    if w > min(grid.shape):
        raise WindowLargerThanGrid(
            f"window of {w} cells exceeds the {min(grid.shape)}-cell short side"
        )
    if w < 2.0 / (band.f_lo * grid.cell_size):
        warnings.warn(
            f"window of {w} cells cannot resolve f_lo={band.f_lo:.3g}/m "
            f"(needs {2.0 / (band.f_lo * grid.cell_size):.0f} cells)",
            stacklevel=2,
        )

    rows, cols = grid.shape
    step = max(1, int(round(w * (1.0 - overlap))))
    r_starts = _tile_starts(rows, w, step)
    c_starts = _tile_starts(cols, w, step)

    f1d = np.fft.fftfreq(w, d=grid.cell_size)
    rho = np.hypot(f1d[:, None], f1d[None, :])
    in_band = (rho >= band.f_lo) & (rho <= band.f_hi)
    taper = np.outer(np.hanning(w), np.hanning(w))
    gain = float(np.mean(taper**2))

    tile_power = np.empty((len(r_starts), len(c_starts)))
    for i, r0 in enumerate(r_starts):
        for j, c0 in enumerate(c_starts):
            z = grid.values[r0 : r0 + w, c0 : c0 + w]
            z = (z - z.mean()) * taper
            p = np.abs(np.fft.fft2(z)) ** 2 / (w**4 * gain)
            tile_power[i, j] = p[in_band].sum()

    centers_r = np.asarray(r_starts, dtype=np.float64) + (w - 1) / 2.0
    centers_c = np.asarray(c_starts, dtype=np.float64) + (w - 1) / 2.0
    values = _bilinear_expand(tile_power, centers_r, centers_c, rows, cols)
    return PowerMap(
        values=values,
        method="dft",
        band=band,
        cell_size=grid.cell_size,
        origin_x=grid.origin_x,
        origin_y=grid.origin_y,
    )


def _tile_starts(extent: int, window: int, step: int) -> list[int]:
    starts = list(range(0, extent - window + 1, step))
    if starts[-1] != extent - window:
        starts.append(extent - window)
    return starts


def _axis_weights(centers: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Lower index and fractional weight for clamped linear interpolation."""
    q = np.clip(np.arange(n, dtype=np.float64), centers[0], centers[-1])
    if centers.size == 1:
        return np.zeros(n, dtype=np.int64), np.zeros(n)
    j = np.clip(np.searchsorted(centers, q, side="right") - 1, 0, centers.size - 2)
    t = (q - centers[j]) / (centers[j + 1] - centers[j])
    return j, np.clip(t, 0.0, 1.0)


def _bilinear_expand(
    tiles: np.ndarray, centers_r: np.ndarray, centers_c: np.ndarray, rows: int, cols: int
) -> np.ndarray:
    jr, tr = _axis_weights(centers_r, rows)
    jc, tc = _axis_weights(centers_c, cols)
    jr1 = np.minimum(jr + 1, tiles.shape[0] - 1)
    jc1 = np.minimum(jc + 1, tiles.shape[1] - 1)
    tr = tr[:, None]
    tc = tc[None, :]
    return (
        tiles[np.ix_(jr, jc)] * (1 - tr) * (1 - tc)
        + tiles[np.ix_(jr1, jc)] * tr * (1 - tc)
        + tiles[np.ix_(jr, jc1)] * (1 - tr) * tc
        + tiles[np.ix_(jr1, jc1)] * tr * tc
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

EPS_RATIO = 1e-12  # of the map maximum, added before taking log10

# blue -> cyan -> green -> yellow -> red -> dark wine
_RAMP_POS = np.array([0.0, 0.2, 0.4, 0.6, 0.8, 1.0])
_RAMP_RGB = np.array(
    [
        [0, 0, 150],      # deep blue (zero / floor cells)
        [0, 200, 255],    # cyan
        [0, 180, 0],      # green
        [255, 220, 0],    # yellow
        [230, 30, 30],    # red
        [100, 0, 35],     # dark wine
    ],
    dtype=np.float64,
)

LEGEND_GAP = 6
LEGEND_BAR = 18
LEGEND_TEXT = 46


def display_range(values: np.ndarray, clip_percentiles: tuple[float, float] = (2.0, 98.0)) -> tuple[float, float]:
    """Percentile-clipped log10 display domain of a band-power raster."""
    vmax = float(values.max())
    if vmax <= 0:
        raise AllZeroMap("band power map has no positive value")
    eps = EPS_RATIO * vmax
    logv = np.log10(values + eps)
    lo, hi = np.percentile(logv, clip_percentiles)
    if hi <= lo:
        hi = lo + 1e-9
    return float(lo), float(hi)


def ramp_colors(pos: np.ndarray) -> np.ndarray:
    """Map ramp positions in [0, 1] to RGB bytes; monotone toward warm colors."""
    pos = np.clip(pos, 0.0, 1.0)
    out = np.empty(pos.shape + (3,), dtype=np.uint8)
    for ch in range(3):
        out[..., ch] = np.rint(np.interp(pos, _RAMP_POS, _RAMP_RGB[:, ch])).astype(np.uint8)
    return out


def render_power_map(
    pmap: PowerMap,
    clip_percentiles: tuple[float, float] = (2.0, 98.0),
    legend: bool = True,
) -> np.ndarray:
    """RGB image of log10 band power, north up, optional legend strip.

    The color domain is clipped at the given percentiles of the log10
    values; cells at or below the floor render deep blue. The legend bar
    reproduces the ramp with the log10 domain labeled at its ends.
    """
    lo, hi = display_range(pmap.values, clip_percentiles)
    eps = EPS_RATIO * float(pmap.values.max())
    logv = np.log10(pmap.values + eps)
    pos = (logv - lo) / (hi - lo)
    rgb = ramp_colors(pos)
    rgb = rgb[::-1]  # row 0 is south; images draw top row first

    if not legend:
        return rgb
    return _attach_legend(rgb, lo, hi)


def _attach_legend(rgb: np.ndarray, lo: float, hi: float) -> np.ndarray:
    rows = rgb.shape[0]
    strip = np.full((rows, LEGEND_GAP + LEGEND_BAR + LEGEND_TEXT, 3), 255, dtype=np.uint8)
    bar_pos = np.linspace(1.0, 0.0, rows)  # hi at top
    strip[:, LEGEND_GAP : LEGEND_GAP + LEGEND_BAR] = ramp_colors(bar_pos)[:, None, :]
    img = Image.fromarray(strip)
    draw = ImageDraw.Draw(img)
    font = ImageFont.load_default()
    x = LEGEND_GAP + LEGEND_BAR + 2
    draw.text((x, 1), f"{hi:.2f}", fill=(0, 0, 0), font=font)
    draw.text((x, max(rows - 11, 0)), f"{lo:.2f}", fill=(0, 0, 0), font=font)
    draw.text((x, max(rows // 2 - 5, 0)), "log10", fill=(0, 0, 0), font=font)
    return np.concatenate([rgb, np.asarray(img)], axis=1)
