"""kpb: band tables, sweep rasters, dispersion curves, transmission tables.

Subcommands: bands, sweep, dispersion, transmission, verify.  Options beat
config-file fields, which beat built-in defaults.  Exit codes: 0 success,
2 configuration error, 3 escalated missed-band warning, 4 residual failure.
"""

from __future__ import annotations

import argparse
import sys
import warnings

import numpy as np

from . import __version__, bands as bands_mod, plotting
from .bands import MissedBandWarning, dispersion_curve, find_band_edges
from .config import ConfigError, RunConfig, load_config_file
from .core import ContactInteraction, FamilySpec, LatticeParams, make_connection, trace_function
from .output import (
    k0_grid,
    write_bands_csv,
    write_dispersion_csv,
    write_manifest,
    write_sweep_csv,
    write_sweep_svg,
    write_transmission_csv,
)
from .scattering import limit_profile
from .sweep import (
    DEFAULT_AXIS_SAMPLES,
    build_sweep_grid,
    default_axis_values,
    default_param_axis,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_WARNING = 3
EXIT_RESIDUAL = 4

DISPERSION_CHECK_TOL = 1e-9

DEFAULT_K0_WINDOW = (0.1, 100.0)
DEFAULT_K0_SAMPLES = 400


def _parse_window(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(":"))
    except ValueError:
        raise ConfigError(f"expected --window lo:hi, got {text!r}") from None
    return lo, hi


def _parse_param_range(text: str) -> tuple[float, float, int]:
    try:
        lo_s, hi_s, n_s = text.split(":")
        return float(lo_s), float(hi_s), int(n_s)
    except ValueError:
        raise ConfigError(f"expected --param-range lo:hi:n, got {text!r}") from None


def _parse_matrix(text: str) -> tuple[float, float, float, float]:
    try:
        g, d, b, al = (float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"expected --matrix gamma,delta,beta,alpha, got {text!r}") from None
    return g, d, b, al


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpb",
        description="Band structure and scattering for a 1-D lattice of contact interactions.",
    )
    parser.add_argument("--version", action="version", version=f"kpb {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file; flags override its fields")
        p.add_argument("--family", choices=["delta", "epsilon", "rotation", "hyperbolic", "raw"])
        p.add_argument("--param", type=float, help="family strength (v, u, or p)")
        p.add_argument("--matrix", help="raw connection matrix gamma,delta,beta,alpha")
        p.add_argument("--mass", type=float, help="particle mass (default 0.5)")
        p.add_argument("--lattice", type=float, help="lattice spacing (default 1.0)")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--fig", help="render a matplotlib figure to this path")
        p.add_argument("--seed", type=int, help="RNG seed (only the verify battery draws samples)")

    p_bands = sub.add_parser("bands", help="band-edge table over an energy window")
    add_common(p_bands)
    p_bands.add_argument("--window", help="energy window lo:hi (use --window=-25:120 for negatives)")
    p_bands.add_argument("--grid", type=int, help="scan grid points (default 20000)")
    p_bands.add_argument("--strict-missed-bands", action="store_const", const=True, default=None,
                         help="exit 3 when the scan suspects unresolved bands")

    p_sweep = sub.add_parser("sweep", help="allowed/forbidden raster over a parameter range")
    add_common(p_sweep)
    p_sweep.add_argument("--param-range", help="parameter sweep lo:hi:n (default per family)")
    p_sweep.add_argument("--window", help="vertical-axis window lo:hi")
    p_sweep.add_argument("--grid", type=int, help="vertical-axis samples (default 1201)")
    p_sweep.add_argument("--mode", choices=["E", "k0"], help="vertical axis (default E)")
    p_sweep.add_argument("--svg", help="write a standalone SVG raster to this path")

    p_disp = sub.add_parser("dispersion", help="reduced-zone Bloch curves per band")
    add_common(p_disp)
    p_disp.add_argument("--window", help="energy window lo:hi")
    p_disp.add_argument("--grid", type=int, help="band-scan grid points (default 20000)")
    p_disp.add_argument("--points", type=int, help="samples per band (default 101)")
    p_disp.add_argument("--strict-missed-bands", action="store_const", const=True, default=None)

    p_trans = sub.add_parser("transmission", help="single-obstacle |T|^2, |R|^2 table")
    add_common(p_trans)
    p_trans.add_argument("--window", help="k0 window lo:hi, lo > 0 (default 0.1:100)")
    p_trans.add_argument("--grid", type=int, help="k0 samples (default 400)")
    p_trans.add_argument("--kscale", choices=["linear", "log"], help="k0 grid spacing")

    p_verify = sub.add_parser("verify", help="run the oracle battery")
    p_verify.add_argument("--config", help="JSON config file; flags override its fields")
    p_verify.add_argument("--seed", type=int, help="RNG seed (default 1729)")
    p_verify.add_argument("--samples", type=int, help="battery sample count (default 1000)")

    return parser


_FLAG_FIELDS = (
    "family", "param", "mass", "out", "fig", "grid", "mode", "points",
    "kscale", "svg", "seed", "samples", "strict_missed_bands",
)


def _merge_config(args: argparse.Namespace) -> RunConfig:
    base = load_config_file(args.config) if getattr(args, "config", None) else RunConfig()
    data = base.to_dict()
    for name in _FLAG_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    if getattr(args, "lattice", None) is not None:
        data["spacing"] = args.lattice
    if getattr(args, "window", None) is not None:
        data["window"] = _parse_window(args.window)
    if getattr(args, "param_range", None) is not None:
        data["param_range"] = _parse_param_range(args.param_range)
    if getattr(args, "matrix", None) is not None:
        data["matrix"] = _parse_matrix(args.matrix)
    return RunConfig.from_dict(data)


def _interaction(cfg: RunConfig) -> ContactInteraction:
    try:
        if cfg.family == "raw":
            if cfg.matrix is None:
                raise ConfigError("raw family requires --matrix gamma,delta,beta,alpha")
            return make_connection(FamilySpec("raw", raw_matrix=ContactInteraction(*cfg.matrix)))
        if cfg.param is None:
            raise ConfigError(f"{cfg.family} family requires --param")
        return make_connection(FamilySpec(cfg.family, cfg.param))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _emit(cfg: RunConfig, command: str, writer) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            writer(fh)
        write_manifest(
            cfg.out + ".manifest.json",
            {"tool": "kpb", "version": __version__, "command": command, "config": cfg.to_dict()},
        )
    else:
        writer(sys.stdout)


def _find_bands(cfg: RunConfig, v: ContactInteraction, lat: LatticeParams):
    lo, hi = cfg.window if cfg.window is not None else bands_mod.DEFAULT_WINDOW
    grid_n = cfg.grid if cfg.grid is not None else bands_mod.DEFAULT_GRID_N
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", MissedBandWarning)
        try:
            found = find_band_edges(v, lat, lo, hi, grid_n)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    missed = [w for w in caught if issubclass(w.category, MissedBandWarning)]
    for w in missed:
        print(f"kpb: warning: {w.message}", file=sys.stderr)
    return found, missed


def cmd_bands(cfg: RunConfig) -> int:
    lat = LatticeParams(cfg.mass, cfg.spacing)
    v = _interaction(cfg)
    found, missed = _find_bands(cfg, v, lat)
    _emit(cfg, "bands", lambda fh: write_bands_csv(fh, found, lat))
    if cfg.fig:
        plotting.render_bands_figure(found, lat, cfg.fig)
    return EXIT_WARNING if missed and cfg.strict_missed_bands else EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    lat = LatticeParams(cfg.mass, cfg.spacing)
    if cfg.family == "raw":
        raise ConfigError("sweep needs a one-parameter family, not raw")
    if cfg.param_range is not None:
        lo, hi, n = cfg.param_range
        params = np.linspace(lo, hi, n)
    else:
        params = default_param_axis(cfg.family)
    n_axis = cfg.grid if cfg.grid is not None else DEFAULT_AXIS_SAMPLES
    if cfg.window is not None:
        axis = np.linspace(cfg.window[0], cfg.window[1], n_axis)
    else:
        axis = default_axis_values(cfg.mode, n_axis)
    try:
        grid = build_sweep_grid(cfg.family, params, axis, cfg.mode, lat)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(cfg, "sweep", lambda fh: write_sweep_csv(fh, grid))
    if cfg.svg:
        write_sweep_svg(cfg.svg, grid)
    if cfg.fig:
        plotting.render_sweep_figure(grid, cfg.fig)
    return EXIT_OK


def cmd_dispersion(cfg: RunConfig) -> int:
    lat = LatticeParams(cfg.mass, cfg.spacing)
    v = _interaction(cfg)
    found, missed = _find_bands(cfg, v, lat)
    curves = [(band.index, dispersion_curve(band, v, lat, cfg.points)) for band in found]

    worst = 0.0
    for _, points in curves:
        for pt in points:
            residual = abs(
                2.0 * np.cos(pt.k * lat.spacing) - trace_function(pt.energy, v, lat)
            )
            worst = max(worst, residual)
    if worst > DISPERSION_CHECK_TOL:
        print(
            f"kpb: dispersion self-check failed: residual {worst:.3e} > {DISPERSION_CHECK_TOL}",
            file=sys.stderr,
        )
        return EXIT_RESIDUAL

    _emit(cfg, "dispersion", lambda fh: write_dispersion_csv(fh, curves))
    if cfg.fig:
        plotting.render_dispersion_figure(curves, lat, cfg.fig)
    return EXIT_WARNING if missed and cfg.strict_missed_bands else EXIT_OK


def cmd_transmission(cfg: RunConfig) -> int:
    lat = LatticeParams(cfg.mass, cfg.spacing)
    v = _interaction(cfg)
    lo, hi = cfg.window if cfg.window is not None else DEFAULT_K0_WINDOW
    n = cfg.grid if cfg.grid is not None else DEFAULT_K0_SAMPLES
    try:
        results = limit_profile(v, lat, k0_grid(lo, hi, n, cfg.kscale))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(cfg, "transmission", lambda fh: write_transmission_csv(fh, results))
    if cfg.fig:
        plotting.render_transmission_figure(results, cfg.fig, logx=cfg.kscale == "log")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    try:
        report = run_verification(cfg.seed, cfg.samples, cfg.tolerances)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for row in report.rows:
        relation = "<=" if row.kind == "max" else ">="
        status = "ok" if row.ok else "FAIL"
        print(f"{row.name}: {row.value:.3e} (required {relation} {row.bound:.1e}) {status}")
    print(f"seed={report.seed} samples={report.samples} -> {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_RESIDUAL


_COMMANDS = {
    "bands": cmd_bands,
    "sweep": cmd_sweep,
    "dispersion": cmd_dispersion,
    "transmission": cmd_transmission,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"kpb: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
