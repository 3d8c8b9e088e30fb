"""Gradient, slope/aspect, and hypothetical-illumination shading of a DEM.

Shade for a sun at azimuth az (degrees clockwise from north) and altitude
alt (degrees above horizon) with zenith z = 90 - alt:

    h = 255 * (cos(z)*cos(slope) + sin(z)*sin(slope)*cos(az - aspect))

clamped to [0, 255] and rounded to bytes. Shade depends only on the
gradient, never on absolute elevation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import DemGrid


@dataclass(frozen=True)
class ShadeParams:
    """Light direction: azimuth clockwise from north, altitude above horizon."""

    azimuth_deg: float = 235.0
    altitude_deg: float = 45.0

    def __post_init__(self):
        if not 0 <= self.azimuth_deg < 360:
            raise ValueError(f"azimuth_deg must be in [0, 360), got {self.azimuth_deg}")
        if not 0 < self.altitude_deg <= 90:
            raise ValueError(f"altitude_deg must be in (0, 90], got {self.altitude_deg}")

    @property
    def zenith_deg(self) -> float:
        return 90.0 - self.altitude_deg


@dataclass(frozen=True)
class GradientField:
    """Elevation change per meter along x (east) and y (north)."""

    dzdx: np.ndarray
    dzdy: np.ndarray
    cell_size: float

    def __post_init__(self):
        if self.dzdx.shape != self.dzdy.shape:
            raise ValueError("dzdx and dzdy must share a shape")


def gradient(grid: DemGrid) -> GradientField:
    """Non-weighted finite-difference gradient, dimensionless rise/run.

    Central differences (z[i+1] - z[i-1]) / (2*cell_size) in the interior,
    one-sided differences on the borders. Row index 0 is south, so dzdy is
    positive for terrain rising northward.
    """
    grid.require_complete("gradient")
    grid.require_min_shape("gradient")
    dzdy, dzdx = np.gradient(grid.values, grid.cell_size, edge_order=1)
    return GradientField(dzdx=dzdx, dzdy=dzdy, cell_size=grid.cell_size)


def slope_aspect(grad: GradientField) -> tuple[np.ndarray, np.ndarray]:
    """Slope and aspect rasters in radians.

    slope = atan(sqrt(dzdx^2 + dzdy^2)); aspect is the direction of
    steepest descent, clockwise from north in [0, 2*pi), with flat cells
    assigned aspect 0.
    """
    slope = np.arctan(np.hypot(grad.dzdx, grad.dzdy))
    aspect = np.mod(np.arctan2(-grad.dzdx, -grad.dzdy), 2 * np.pi)
    aspect = np.where(slope == 0, 0.0, aspect)
    return slope, aspect


def shade_from_gradient(grad: GradientField, params: ShadeParams) -> np.ndarray:
    """Byte shade raster from a precomputed gradient field."""
    slope, aspect = slope_aspect(grad)
    zen = np.deg2rad(params.zenith_deg)
    az = np.deg2rad(params.azimuth_deg)
    h = 255.0 * (
        np.cos(zen) * np.cos(slope)
        + np.sin(zen) * np.sin(slope) * np.cos(az - aspect)
    )
    return np.clip(np.rint(h), 0, 255).astype(np.uint8)


def hillshade(grid: DemGrid, params: ShadeParams = ShadeParams()) -> np.ndarray:
    """Shaded-relief byte raster (0-255), same shape as the grid."""
    return shade_from_gradient(gradient(grid), params)
