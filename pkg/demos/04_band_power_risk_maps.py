"""
Band-power maps of slide-prone relief
=====================================

Sums spectral power inside the characteristic band at every cell, by
both methods, and renders the log10 color maps. On the composite test
card (flat west, wavy east) the rugged half lights up in the warm end
of the ramp while the flat half stays blue; the windowed Fourier map
shows the same contrast with a visibly wider seam because each tile
averages over its whole window.

The last section demonstrates a known failure mode: a sharp scarp (step
edge) concentrates broadband power and lights up in-band even though it
is not wavy terrain at all. The maps report such cells; they do not
suppress them.
"""

from pathlib import Path

import numpy as np
from PIL import Image

from terrain_cwt import (
    DemGrid,
    FrequencyBand,
    SynthSpec,
    cwt_band_power_map,
    detrend_plane,
    dft_band_power_map,
    render_power_map,
    synth_terrain,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

CELL = 30.0
LAM = 960.0  # 32 cells

terrain = synth_terrain(
    SynthSpec("composite-half", amplitude=20.0, wavelength=LAM), 256, 256, CELL
)
terrain = detrend_plane(terrain)[0]

# Band straddling the terrain wavelength: 480..960 m.
band = FrequencyBand(f_lo=1.0 / LAM, f_hi=2.0 / LAM)

maps = {
    "cwt": cwt_band_power_map(terrain, band),
    "dft": dft_band_power_map(terrain, band, window_cells=64, overlap=0.5),
}
for name, pmap in maps.items():
    contrast = pmap.values[:, 128:].mean() / pmap.values[:, :128].mean()
    lo, hi = pmap.log10_range
    print(f"{name}: rugged/flat contrast {contrast:.0f}x, display range "
          f"{hi - lo:.1f} decades of power")
    rgb = render_power_map(pmap)
    Image.fromarray(rgb, mode="RGB").save(OUT / f"riskmap_{name}.png")
    print(f"wrote {OUT / f'riskmap_{name}.png'}")

# -- the scarp false positive ------------------------------------------------
# A single 20 m step has no periodic relief, yet its edge needs power at
# all wavelengths, including inside the band, so both maps flag it.
step = np.zeros((256, 256))
step[:, 128:] = 20.0
scarp = detrend_plane(DemGrid(step, CELL))[0]
scarp_map = cwt_band_power_map(scarp, band)
edge_power = scarp_map.values[:, 120:136].mean()
far_power = scarp_map.values[:, :64].mean()
print(f"scarp demo: in-band power at the edge is {edge_power / far_power:.0f}x "
      f"the background; sharp scarps masquerade as wavy slopes")
rgb = render_power_map(scarp_map)
Image.fromarray(rgb, mode="RGB").save(OUT / "riskmap_scarp_false_positive.png")
print(f"wrote {OUT / 'riskmap_scarp_false_positive.png'}")
