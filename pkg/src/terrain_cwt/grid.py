"""DEM data model, ESRI ASCII grid I/O, nodata filling, detrending, synthetic terrain.

The raster convention throughout the package: ``values`` is a 2D float64
array with row index 0 at the *south* edge, so y increases with row index
and the (origin_x, origin_y) lower-left corner lines up with ``values[0, 0]``.
Cells are square with side ``cell_size`` meters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ContainsNoData,
    IoFailure,
    MissingHeaderKey,
    NonRectangularBody,
    OutOfBounds,
    SubNyquistWavelength,
    TooManyVoids,
    UnparseableNumber,
)

DEFAULT_NODATA = -9999.0

SYNTH_KINDS = ("flat", "plane", "sinusoid", "flat-plus-noise", "composite-half")


@dataclass(frozen=True, eq=False)
class DemGrid:
    """Rectangular elevation raster.

    Parameters
    ----------
    values : 2D array of float
        Elevations in meters, shape (rows, cols), row 0 southernmost.
        Every entry must be finite or equal to ``nodata``.
    cell_size : float
        Cell side in meters, identical in x and y.
    origin_x, origin_y : float
        Lower-left corner of the raster in meters.
    nodata : float
        Sentinel marking missing cells.

    Grids down to 1x1 are representable (crops can be that small);
    operations that need neighboring cells enforce their own minimum size.
    """

    values: np.ndarray
    cell_size: float
    origin_x: float = 0.0
    origin_y: float = 0.0
    nodata: float = DEFAULT_NODATA

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError(f"values must be 2D, got shape {v.shape}")
        if v.size == 0:
            raise ValueError("grid must hold at least one cell")
        if not self.cell_size > 0:
            raise ValueError(f"cell_size must be > 0, got {self.cell_size}")
        for name in ("cell_size", "origin_x", "origin_y", "nodata"):
            object.__setattr__(self, name, float(getattr(self, name)))
        bad = ~(np.isfinite(v) | (v == self.nodata))
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise ValueError(f"non-finite value {v[r, c]} at ({r}, {c})")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def nodata_mask(self) -> np.ndarray:
        """Boolean mask of missing cells (NaN sentinels compare by isnan)."""
        if np.isnan(self.nodata):
            return np.isnan(self.values)
        return self.values == self.nodata

    def has_nodata(self) -> bool:
        return bool(self.nodata_mask().any())

    def require_complete(self, op: str) -> None:
        """Raise ContainsNoData unless every cell is valid."""
        n = int(self.nodata_mask().sum())
        if n:
            raise ContainsNoData(f"{op}: grid has {n} nodata cells")

    def require_min_shape(self, op: str, rows: int = 2, cols: int = 2) -> None:
        if self.rows < rows or self.cols < cols:
            raise ValueError(f"{op}: needs at least {rows}x{cols}, got {self.rows}x{self.cols}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, DemGrid):
            return NotImplemented
        return (
            self.values.shape == other.values.shape
            and np.array_equal(self.values, other.values)
            and self.cell_size == other.cell_size
            and self.origin_x == other.origin_x
            and self.origin_y == other.origin_y
            and self.nodata == other.nodata
        )


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for a deterministic synthetic terrain.

    ``kind`` is one of flat, plane, sinusoid, flat-plus-noise,
    composite-half. ``orientation`` is degrees counterclockwise from the
    +x (east) axis; ``wavelength`` is in meters and must exceed twice the
    cell size for the sinusoidal kinds.
    """

    kind: str
    amplitude: float = 0.0
    wavelength: float = 0.0
    orientation: float = 0.0
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SYNTH_KINDS:
            raise ValueError(f"unknown synth kind {self.kind!r}")


def cell_coords(grid: DemGrid) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell (X, Y) coordinate arrays in meters, origin at the SW cell."""
    x = grid.origin_x + np.arange(grid.cols) * grid.cell_size
    y = grid.origin_y + np.arange(grid.rows) * grid.cell_size
    return np.meshgrid(x, y)


# ---------------------------------------------------------------------------
# ESRI ASCII grid I/O
# ---------------------------------------------------------------------------

_REQUIRED_KEYS = ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize")


def load_ascii_grid(path) -> DemGrid:
    """Read an ESRI ASCII grid (.asc).

    Header keys are case-insensitive; NODATA_value is optional and
    defaults to -9999. The file stores the top (northern) row first; the
    returned grid is reordered so row 0 is the southernmost row.

    Raises
    ------
    MissingHeaderKey, NonRectangularBody, UnparseableNumber
        Each names the offending header key or 1-based line number.
    """
    try:
        with open(path, "r") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise IoFailure(f"cannot read {path}: {e}") from e

    header: dict[str, float] = {}
    body_start = len(lines)
    for i, line in enumerate(lines):
        tokens = line.split()
        if not tokens:
            continue
        key = tokens[0].lower()
        if key[0].isalpha() or key[0] == "_":
            if len(tokens) != 2:
                raise UnparseableNumber(
                    f"line {i + 1}: header {tokens[0]!r} needs exactly one value"
                )
            try:
                header[key] = float(tokens[1])
            except ValueError:
                raise UnparseableNumber(
                    f"line {i + 1}: cannot parse {tokens[1]!r} for header {tokens[0]!r}"
                ) from None
        else:
            body_start = i
            break

    for key in _REQUIRED_KEYS:
        if key not in header:
            raise MissingHeaderKey(f"header key {key!r} missing in {path}")

    ncols = int(header["ncols"])
    nrows = int(header["nrows"])
    nodata = header.get("nodata_value", DEFAULT_NODATA)

    rows: list[np.ndarray] = []
    for i in range(body_start, len(lines)):
        tokens = lines[i].split()
        if not tokens:
            continue
        if len(tokens) != ncols:
            raise NonRectangularBody(
                f"line {i + 1}: expected {ncols} values, found {len(tokens)}"
            )
        try:
            rows.append(np.array([float(t) for t in tokens]))
        except ValueError:
            raise UnparseableNumber(f"line {i + 1}: non-numeric value in body") from None

    if len(rows) != nrows:
        raise NonRectangularBody(
            f"{path}: header promises {nrows} rows, body has {len(rows)}"
        )

    values = np.flipud(np.vstack(rows))  # file is north-first, we store south-first
    return DemGrid(
        values=values,
        cell_size=header["cellsize"],
        origin_x=header["xllcorner"],
        origin_y=header["yllcorner"],
        nodata=nodata,
    )


def write_ascii_grid(grid: DemGrid, path) -> None:
    """Write an ESRI ASCII grid that round-trips bit-exactly through load.

    Values are printed with shortest-exact float formatting (repr), so
    ``load_ascii_grid(write_ascii_grid(g)) == g`` holds for any valid grid.
    """
    out = [
        f"ncols {grid.cols}",
        f"nrows {grid.rows}",
        f"xllcorner {grid.origin_x!r}",
        f"yllcorner {grid.origin_y!r}",
        f"cellsize {grid.cell_size!r}",
        f"NODATA_value {grid.nodata!r}",
    ]
    for r in range(grid.rows - 1, -1, -1):  # north first on disk
        out.append(" ".join(repr(float(v)) for v in grid.values[r]))
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(out) + "\n")
    except OSError as e:
        raise IoFailure(f"cannot write {path}: {e}") from e


# ---------------------------------------------------------------------------
# Raster preparation
# ---------------------------------------------------------------------------

def fill_nodata(grid: DemGrid, max_fraction: float = 0.1) -> DemGrid:
    """Fill nodata cells with the mean of their valid 8-neighbors, iterated.

    Valid cells are untouched; filled cells become valid for the next
    iteration, so interior voids close from their rims inward. Raises
    TooManyVoids when the nodata fraction exceeds ``max_fraction``.
    """
    mask = grid.nodata_mask()
    frac = mask.mean()
    if frac > max_fraction:
        raise TooManyVoids(
            f"nodata fraction {frac:.3f} exceeds max_fraction {max_fraction}"
        )
    if not mask.any():
        return grid

    values = grid.values.copy()
    while mask.any():
        valid = ~mask
        vp = np.pad(np.where(valid, values, 0.0), 1)
        cp = np.pad(valid.astype(np.float64), 1)
        nsum = np.zeros_like(values)
        ncnt = np.zeros_like(values)
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                if dr == 0 and dc == 0:
                    continue
                sl = (slice(1 + dr, 1 + dr + grid.rows), slice(1 + dc, 1 + dc + grid.cols))
                nsum += vp[sl]
                ncnt += cp[sl]
        fillable = mask & (ncnt > 0)
        values[fillable] = nsum[fillable] / ncnt[fillable]
        mask = mask & ~fillable

    return DemGrid(values, grid.cell_size, grid.origin_x, grid.origin_y, grid.nodata)


def detrend_plane(grid: DemGrid) -> tuple[DemGrid, tuple[float, float, float]]:
    """Remove the least-squares plane a*x + b*y + c.

    Coordinates are the cell_coords() meters, so a grid built as
    2*x + 3*y + 7 detrends to zeros with coefficients (2, 3, 7). Returns
    the residual grid and (a, b, c).
    """
    grid.require_complete("detrend_plane")
    X, Y = cell_coords(grid)
    design = np.column_stack([X.ravel(), Y.ravel(), np.ones(X.size)])
    coef, *_ = np.linalg.lstsq(design, grid.values.ravel(), rcond=None)
    a, b, c = (float(v) for v in coef)
    residual = grid.values - (a * X + b * Y + c)
    out = DemGrid(residual, grid.cell_size, grid.origin_x, grid.origin_y, grid.nodata)
    return out, (a, b, c)


def crop(grid: DemGrid, row0: int, col0: int, height: int, width: int) -> DemGrid:
    """Sub-raster with the origin shifted to the window's SW corner."""
    if (
        row0 < 0
        or col0 < 0
        or height < 1
        or width < 1
        or row0 + height > grid.rows
        or col0 + width > grid.cols
    ):
        raise OutOfBounds(
            f"window ({row0},{col0})+({height}x{width}) outside {grid.rows}x{grid.cols}"
        )
    return DemGrid(
        grid.values[row0 : row0 + height, col0 : col0 + width],
        grid.cell_size,
        grid.origin_x + col0 * grid.cell_size,
        grid.origin_y + row0 * grid.cell_size,
        grid.nodata,
    )


# ---------------------------------------------------------------------------
# Synthetic terrain
# ---------------------------------------------------------------------------

def synth_terrain(spec: SynthSpec, rows: int, cols: int, cell_size: float) -> DemGrid:
    """Build a deterministic test terrain.

    Kinds:

    * ``flat``: constant elevation ``amplitude``.
    * ``plane``: tilt of total relief ``amplitude`` along ``orientation``.
    * ``sinusoid``: ``amplitude * sin(2*pi*(x*cos(t) + y*sin(t)) / wavelength)``.
    * ``flat-plus-noise``: ``amplitude`` plus iid Gaussian noise of sd
      ``noise_sigma`` drawn from ``seed``.
    * ``composite-half``: flat (zero) left half, sinusoid right half with
      phase anchored at the split column so the seam is step-free.

    Same spec and shape always produce bit-identical grids.
    """
    x = np.arange(cols) * cell_size
    y = np.arange(rows) * cell_size
    X, Y = np.meshgrid(x, y)
    theta = np.deg2rad(spec.orientation)

    if spec.kind in ("sinusoid", "composite-half"):
        if not spec.wavelength > 2 * cell_size:
            raise SubNyquistWavelength(
                f"wavelength {spec.wavelength} m not above Nyquist "
                f"{2 * cell_size} m at cell_size {cell_size}"
            )

    if spec.kind == "flat":
        values = np.full((rows, cols), spec.amplitude, dtype=np.float64)
    elif spec.kind == "plane":
        extent = max(rows - 1, cols - 1) * cell_size
        values = spec.amplitude * (X * np.cos(theta) + Y * np.sin(theta)) / extent
    elif spec.kind == "sinusoid":
        phase = 2 * np.pi * (X * np.cos(theta) + Y * np.sin(theta)) / spec.wavelength
        values = spec.amplitude * np.sin(phase)
    elif spec.kind == "flat-plus-noise":
        rng = np.random.default_rng(spec.seed)
        values = spec.amplitude + rng.normal(0.0, spec.noise_sigma, size=(rows, cols))
    else:  # composite-half
        split = cols // 2
        x0 = split * cell_size
        phase = 2 * np.pi * ((X - x0) * np.cos(theta) + Y * np.sin(theta)) / spec.wavelength
        values = np.where(X < x0, 0.0, spec.amplitude * np.sin(phase))

    return DemGrid(values, cell_size)
