"""Command-line surface: terrain-cwt <hillshade|spectrum|band|riskmap|synth>.

Every command is deterministic given its flags; reruns produce
byte-identical outputs. Exit codes: 0 success, 1 domain error (no peak,
empty band, ...), 2 I/O or parse error. Output files are written
atomically (write to a temporary sibling, then rename).
"""

from __future__ import annotations

import argparse
import io
import os
import sys

import numpy as np
from PIL import Image

from . import __version__
from .errors import CellSizeMismatch, DomainError, InputError
from .grid import DemGrid, SynthSpec, detrend_plane, fill_nodata, load_ascii_grid, synth_terrain, write_ascii_grid
from .hillshade import ShadeParams, hillshade
from .riskmap import FrequencyBand, PowerMap, cwt_band_power_map, dft_band_power_map, render_power_map
from .spectral import find_peak_fwhm, normalize_spectrum, spectra_for_methods, write_spectrum_csv
from .wavelet import ScaleSet, build_scale_set, default_scale_set

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2

MAX_VOID_FRACTION = 0.1


# ---------------------------------------------------------------------------
# Small helpers
# ---------------------------------------------------------------------------

def _atomic_write_bytes(path: str, data: bytes) -> None:
    tmp = f"{path}.tmp-{os.getpid()}"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _save_png(arr: np.ndarray, path: str, mode: str) -> None:
    buf = io.BytesIO()
    Image.fromarray(arr, mode=mode).save(buf, format="PNG")
    _atomic_write_bytes(path, buf.getvalue())


def _save_asc(grid: DemGrid, path: str) -> None:
    tmp = f"{path}.tmp-{os.getpid()}"
    write_ascii_grid(grid, tmp)
    os.replace(tmp, path)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


def _write_manifest(path: str, command: str, args: argparse.Namespace) -> None:
    entries = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
    lines = [f"command={command}"] + [f"{k}={_fmt(v)}" for k, v in sorted(entries.items())]
    _atomic_write_bytes(path, ("\n".join(lines) + "\n").encode())


def _load_dem(path: str) -> DemGrid:
    return load_ascii_grid(path)


def _prepare(grid: DemGrid, detrend: bool) -> DemGrid:
    if grid.has_nodata():
        grid = fill_nodata(grid, MAX_VOID_FRACTION)
    if detrend:
        grid = detrend_plane(grid)[0]
    return grid


def _ladder(args: argparse.Namespace, shape: tuple[int, int]) -> ScaleSet:
    if args.j_count is not None:
        return build_scale_set(s0=args.s0, delta_j=args.delta_j, J=args.j_count)
    return default_scale_set(shape, s0=args.s0, delta_j=args.delta_j)


def _image_array(shade: np.ndarray) -> np.ndarray:
    return shade[::-1]  # row 0 is south; image rows draw top-down


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_hillshade(args: argparse.Namespace) -> int:
    grid = _load_dem(args.dem)
    if grid.has_nodata():
        grid = fill_nodata(grid, MAX_VOID_FRACTION)
    shade = hillshade(grid, ShadeParams(args.azimuth, args.altitude))
    _save_png(_image_array(shade), args.out, mode="L")
    if args.asc:
        out = DemGrid(
            shade.astype(np.float64), grid.cell_size, grid.origin_x, grid.origin_y, grid.nodata
        )
        _save_asc(out, args.asc)
    if args.manifest:
        _write_manifest(args.manifest, "hillshade", args)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    grid = _prepare(_load_dem(args.dem), not args.no_detrend)
    scales = _ladder(args, grid.shape)
    spectra = spectra_for_methods(
        grid, args.method, scales=scales, window=args.window, detrend=False
    )
    write_spectrum_csv(spectra, args.out)
    if args.manifest:
        _write_manifest(args.manifest, "spectrum", args)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_band(args: argparse.Namespace) -> int:
    rugged = _load_dem(args.rugged)
    flat = _load_dem(args.flat)
    if rugged.cell_size != flat.cell_size:
        raise CellSizeMismatch(
            f"cell sizes differ: {rugged.cell_size} vs {flat.cell_size}"
        )
    rugged = _prepare(rugged, not args.no_detrend)
    flat = _prepare(flat, not args.no_detrend)

    scales = _ladder(args, rugged.shape)
    spec_r = spectra_for_methods(rugged, args.method, scales=scales, window=args.window, detrend=False)[0]
    spec_f = spectra_for_methods(flat, args.method, scales=scales, window=args.window, detrend=False)[0]
    ratio, dropped = normalize_spectrum(spec_r, spec_f)
    band = find_peak_fwhm(ratio, interp=args.interp)

    write_spectrum_csv(ratio, args.out)
    if args.manifest:
        _write_manifest(args.manifest, "band", args)
    print(f"method={band.method}")
    print(f"peak_wavelength_m={band.peak_wavelength!r}")
    print(f"peak_power={band.peak_power!r}")
    print(f"f_lo_per_m={band.f_lo!r}")
    print(f"f_hi_per_m={band.f_hi!r}")
    print(f"censored_lo={band.censored_lo}")
    print(f"censored_hi={band.censored_hi}")
    print(f"dropped_samples={dropped.size}")
    print(f"wrote {args.out}")
    return EXIT_OK


def _riskmap_one(grid: DemGrid, method: str, args: argparse.Namespace) -> PowerMap:
    band = FrequencyBand(args.f_lo, args.f_hi)
    if method == "cwt":
        ladder = _ladder(args, grid.shape)
        return cwt_band_power_map(grid, band, ladder=ladder)
    return dft_band_power_map(
        grid, band, window_cells=args.window_cells, overlap=args.overlap
    )


def _suffixed(path: str, tag: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}_{tag}{ext or '.png'}"


def cmd_riskmap(args: argparse.Namespace) -> int:
    grid = _prepare(_load_dem(args.dem), not args.no_detrend)
    methods = ["cwt", "dft"] if args.method == "both" else [args.method]
    for method in methods:
        pmap = _riskmap_one(grid, method, args)
        rgb = render_power_map(pmap, clip_percentiles=tuple(args.clip_percentiles))
        out = _suffixed(args.out, method) if len(methods) > 1 else args.out
        _save_png(rgb, out, mode="RGB")
        print(f"wrote {out}")
        if args.asc:
            asc = _suffixed(args.asc, method) if len(methods) > 1 else args.asc
            raw = DemGrid(
                pmap.values, grid.cell_size, grid.origin_x, grid.origin_y, grid.nodata
            )
            _save_asc(raw, asc)
            print(f"wrote {asc}")
    _write_manifest(args.out + ".manifest.txt", "riskmap", args)
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        kind=args.kind,
        amplitude=args.amplitude,
        wavelength=args.wavelength,
        orientation=args.orientation,
        noise_sigma=args.noise_sigma,
        seed=args.seed,
    )
    grid = synth_terrain(spec, args.rows, args.cols, args.cell_size)
    _save_asc(grid, args.out)
    if args.manifest:
        _write_manifest(args.manifest, "synth", args)
    print(f"wrote {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_ladder_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--s0", type=float, default=2.0, help="smallest wavelet scale, cells")
    p.add_argument("--delta-j", type=float, default=0.25, help="dyadic ladder spacing exponent")
    p.add_argument(
        "--j-count",
        type=int,
        default=None,
        metavar="J",
        help="ladder steps above s0 (default: largest the grid supports)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="terrain-cwt",
        description=(
            "Spectral terrain analysis: hillshade relief, wavelet and Fourier "
            "power spectra, characteristic-band extraction, and band-power "
            "maps flagging steep, slide-prone relief."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hillshade", help="shaded relief of a DEM")
    p.add_argument("dem", help="input ESRI ASCII grid")
    p.add_argument("--azimuth", type=float, default=235.0, help="sun azimuth, deg CW from north")
    p.add_argument("--altitude", type=float, default=45.0, help="sun altitude, deg above horizon")
    p.add_argument("--out", required=True, help="output grayscale PNG")
    p.add_argument("--asc", default=None, help="also write shade values as ASCII grid")
    p.add_argument("--manifest", default=None, help="dump resolved parameters to this file")
    p.set_defaults(func=cmd_hillshade)

    p = sub.add_parser("spectrum", help="power spectrum of a DEM by either method")
    p.add_argument("dem")
    p.add_argument("--method", choices=("cwt", "dft", "both"), default="both")
    _add_ladder_flags(p)
    p.add_argument("--window", choices=("hann", "none"), default="hann", help="DFT taper")
    p.add_argument("--no-detrend", action="store_true", help="skip plane removal")
    p.add_argument("--out", required=True, help="output CSV")
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("band", help="normalize rugged by flat and report the FWHM band")
    p.add_argument("rugged", help="DEM of the rugged area")
    p.add_argument("flat", help="DEM of the flat reference area")
    p.add_argument("--method", choices=("cwt", "dft"), default="cwt")
    _add_ladder_flags(p)
    p.add_argument("--window", choices=("hann", "none"), default="hann")
    p.add_argument("--interp", choices=("log", "linear"), default="log", help="FWHM interpolation axis")
    p.add_argument("--no-detrend", action="store_true")
    p.add_argument("--out", required=True, help="normalized spectrum CSV")
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_band)

    p = sub.add_parser("riskmap", help="per-cell band power map, rendered to PNG")
    p.add_argument("dem")
    p.add_argument("--f-lo", type=float, required=True, help="band low edge, cycles/m")
    p.add_argument("--f-hi", type=float, required=True, help="band high edge, cycles/m")
    p.add_argument("--method", choices=("cwt", "dft", "both"), default="cwt")
    _add_ladder_flags(p)
    p.add_argument("--window-cells", type=int, default=None, help="DFT tile size (default: auto)")
    p.add_argument("--overlap", type=float, default=0.5, help="DFT tile overlap fraction")
    p.add_argument(
        "--clip-percentiles", type=float, nargs=2, default=(2.0, 98.0), metavar=("LO", "HI")
    )
    p.add_argument("--no-detrend", action="store_true")
    p.add_argument("--out", required=True, help="output RGB PNG")
    p.add_argument("--asc", default=None, help="also write raw power as ASCII grid")
    p.set_defaults(func=cmd_riskmap)

    p = sub.add_parser("synth", help="write a synthetic test DEM")
    p.add_argument("--kind", required=True, choices=("flat", "plane", "sinusoid", "flat-plus-noise", "composite-half"))
    p.add_argument("--rows", type=int, default=256)
    p.add_argument("--cols", type=int, default=256)
    p.add_argument("--cell-size", type=float, default=30.0)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--wavelength", type=float, default=960.0, help="meters")
    p.add_argument("--orientation", type=float, default=0.0, help="degrees CCW from east")
    p.add_argument("--noise-sigma", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output ASCII grid")
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except InputError as e:
        print(f"terrain-cwt: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as e:
        print(f"terrain-cwt: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as e:
        print(f"terrain-cwt: error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
