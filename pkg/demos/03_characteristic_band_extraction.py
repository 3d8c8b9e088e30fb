"""
Extracting the characteristic band of rugged terrain
====================================================

The band-extraction procedure: compute a spectrum for a rugged area and
for a flat reference area, divide the first by the second to cancel the
background, and measure the surviving peak's full width at half maximum.
The FWHM edges bound the wavelength band in which the rugged terrain
concentrates its relief; that band then drives the risk maps of demo 04.

Requires matplotlib (install the `demos` extra).
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from terrain_cwt import (
    DemGrid,
    SynthSpec,
    cwt_spectrum,
    dft_spectrum,
    find_peak_fwhm,
    normalize_spectrum,
    synth_terrain,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

CELL = 30.0
LAM = 960.0

# Stand-ins for terrain crops: the "flat" reference is low-amplitude
# noise; the "rugged" area carries the same background plus strong
# wavy relief at one characteristic wavelength.
flat = synth_terrain(SynthSpec("flat-plus-noise", noise_sigma=0.2, seed=7), 256, 256, CELL)
relief = synth_terrain(SynthSpec("sinusoid", amplitude=4.0, wavelength=LAM), 256, 256, CELL)
rugged = DemGrid(flat.values + relief.values, CELL)

fig, axes = plt.subplots(1, 2, figsize=(11, 4.5), sharey=False)
for ax, fn in zip(axes, (cwt_spectrum, dft_spectrum)):
    ratio, dropped = normalize_spectrum(fn(rugged), fn(flat))
    band = find_peak_fwhm(ratio)
    print(
        f"{band.method}: peak {band.peak_wavelength:.0f} m, band "
        f"{band.f_lo:.2e}..{band.f_hi:.2e} /m "
        f"({1 / band.f_hi:.0f}..{1 / band.f_lo:.0f} m), "
        f"censored lo/hi: {band.censored_lo}/{band.censored_hi}, "
        f"{dropped.size} reference samples floored"
    )
    ax.semilogx(ratio.frequencies, ratio.power, "o-")
    ax.axvspan(band.f_lo, band.f_hi, color="orange", alpha=0.3, label="FWHM band")
    ax.axhline(band.peak_power / 2, color="gray", ls=":", lw=1)
    ax.set_title(f"{band.method} ratio spectrum")
    ax.set_xlabel("frequency (cycles/m)")
    ax.legend()
axes[0].set_ylabel("rugged / flat power ratio")
fig.tight_layout()
fig.savefig(OUT / "band_extraction.png", dpi=140)
print(f"wrote {OUT / 'band_extraction.png'}")
