"""Shared synthetic-terrain fixtures."""

import numpy as np
import pytest

from terrain_cwt.grid import DemGrid, SynthSpec, synth_terrain


def tone_grid(wavelength_cells: float, n: int = 256, cell: float = 1.0, amp: float = 1.0,
              orientation: float = 0.0) -> DemGrid:
    return synth_terrain(
        SynthSpec("sinusoid", amplitude=amp, wavelength=wavelength_cells * cell,
                  orientation=orientation),
        n, n, cell,
    )


def noise_grid(n: int = 256, cell: float = 1.0, sigma: float = 0.1, seed: int = 0) -> DemGrid:
    return synth_terrain(
        SynthSpec("flat-plus-noise", noise_sigma=sigma, seed=seed), n, n, cell
    )


def from_array(values, cell: float = 1.0, **kw) -> DemGrid:
    return DemGrid(np.asarray(values, dtype=float), cell, **kw)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
