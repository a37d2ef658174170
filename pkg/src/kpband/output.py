"""File emission: CSV tables, sidecar manifests, and the standalone SVG raster.

All artifacts are byte-deterministic for a fixed configuration and package
version: floats are printed with 17 significant digits (round-trip exact for
doubles), newlines are LF, and nothing carries a timestamp.  Version and
configuration live in a sidecar JSON manifest next to each data file.
"""

from __future__ import annotations

import json
import math
from typing import IO, Iterable

from .bands import Band
from .core import LatticeParams
from .scattering import ScatteringResult
from .sweep import PARAM_SYMBOLS, SweepGrid


def fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_lines(stream: IO[str], lines: Iterable[str]) -> None:
    stream.write("\n".join(lines))
    stream.write("\n")


def write_bands_csv(stream: IO[str], bands: list[Band], lat: LatticeParams) -> None:
    lines = ["band_index,E_lo,E_hi,edge_lo,edge_hi,width_E,width_k0"]
    for b in bands:
        lines.append(
            f"{b.index},{fmt(b.e_lo)},{fmt(b.e_hi)},{b.edge_kind_lo},{b.edge_kind_hi},"
            f"{fmt(b.width_e)},{fmt(b.width_k0(lat))}"
        )
    _write_lines(stream, lines)


def write_dispersion_csv(stream: IO[str], curves: list[tuple[int, list]]) -> None:
    lines = ["band_index,k,E"]
    for index, points in curves:
        for pt in points:
            lines.append(f"{index},{fmt(pt.k)},{fmt(pt.energy)}")
    _write_lines(stream, lines)


def write_transmission_csv(stream: IO[str], results: list[ScatteringResult]) -> None:
    lines = ["k0,T2,R2"]
    for r in results:
        lines.append(f"{fmt(r.k0)},{fmt(r.t2)},{fmt(r.r2)}")
    _write_lines(stream, lines)


def write_sweep_csv(stream: IO[str], grid: SweepGrid) -> None:
    lines = ["param,axis_value,f_half,allowed"]
    axis_strs = [fmt(x) for x in grid.axis_values]
    for i, p in enumerate(grid.param_axis):
        p_str = fmt(p)
        row_f = grid.f_half[i]
        row_a = grid.allowed[i]
        for j, a_str in enumerate(axis_strs):
            lines.append(f"{p_str},{a_str},{fmt(row_f[j])},{1 if row_a[j] else 0}")
    _write_lines(stream, lines)


def write_manifest(path: str, payload: dict) -> None:
    """Sidecar JSON describing how a data file was produced."""
    with open(path, "w", newline="") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


# --- standalone SVG raster -------------------------------------------------
#
# The sweep SVG is written by hand rather than through a plotting library so
# that its bytes depend only on the grid contents: allowed cells become black
# rectangles (vertical runs merged per column), axes are drawn and labeled
# inline, and no external asset is referenced.

_SVG_CANVAS_W = 760.0
_SVG_CANVAS_H = 580.0
_SVG_PLOT = (70.0, 20.0, 730.0, 540.0)  # x0, y0, x1, y1
_SVG_TICKS = 5


def _svg_ticks(values) -> list[tuple[float, str]]:
    n = len(values)
    idx = [round(t * (n - 1) / (_SVG_TICKS - 1)) for t in range(_SVG_TICKS)]
    return [(i / (n - 1), f"{values[i]:.6g}") for i in idx]


def write_sweep_svg(path: str, grid: SweepGrid) -> None:
    x0, y0, x1, y1 = _SVG_PLOT
    plot_w = x1 - x0
    plot_h = y1 - y0
    n_param = grid.param_axis.size
    n_axis = grid.axis_values.size
    cell_w = plot_w / n_param
    cell_h = plot_h / n_axis

    parts: list[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_CANVAS_W:g}" '
        f'height="{_SVG_CANVAS_H:g}" viewBox="0 0 {_SVG_CANVAS_W:g} {_SVG_CANVAS_H:g}">',
        f'<rect x="0" y="0" width="{_SVG_CANVAS_W:g}" height="{_SVG_CANVAS_H:g}" fill="#ffffff"/>',
        f'<g data-param-cells="{n_param}" data-axis-cells="{n_axis}" fill="#000000">',
    ]

    for i in range(n_param):
        column = grid.allowed[i]
        x = x0 + i * cell_w
        j = 0
        while j < n_axis:
            if not column[j]:
                j += 1
                continue
            run_start = j
            while j < n_axis and column[j]:
                j += 1
            top = y1 - j * cell_h
            height = (j - run_start) * cell_h
            parts.append(
                f'<rect x="{x:.3f}" y="{top:.3f}" width="{cell_w:.3f}" height="{height:.3f}"/>'
            )
    parts.append("</g>")

    parts.append(
        f'<rect x="{x0:g}" y="{y0:g}" width="{plot_w:g}" height="{plot_h:g}" '
        'fill="none" stroke="#000000" stroke-width="1"/>'
    )
    parts.append('<g font-family="sans-serif" font-size="11" fill="#000000">')
    for frac, label in _svg_ticks(grid.param_axis):
        x = x0 + frac * plot_w
        parts.append(
            f'<line x1="{x:.3f}" y1="{y1:g}" x2="{x:.3f}" y2="{y1 + 5:g}" stroke="#000000"/>'
        )
        parts.append(f'<text x="{x:.3f}" y="{y1 + 18:g}" text-anchor="middle">{label}</text>')
    for frac, label in _svg_ticks(grid.axis_values):
        y = y1 - frac * plot_h
        parts.append(
            f'<line x1="{x0 - 5:g}" y1="{y:.3f}" x2="{x0:g}" y2="{y:.3f}" stroke="#000000"/>'
        )
        parts.append(f'<text x="{x0 - 8:g}" y="{y + 4:.3f}" text-anchor="end">{label}</text>')
    x_label = PARAM_SYMBOLS.get(grid.family, "param")
    y_label = "E" if grid.mode == "E" else "k0"
    mid_x = 0.5 * (x0 + x1)
    parts.append(
        f'<text x="{mid_x:g}" y="{y1 + 34:g}" text-anchor="middle">'
        f"{x_label} ({grid.family})</text>"
    )
    parts.append(f'<text x="{14:g}" y="{y0 + 12:g}" text-anchor="start">{y_label}</text>')
    parts.append("</g>")
    parts.append("</svg>")

    with open(path, "w", newline="") as fh:
        _write_lines(fh, parts)


def k0_grid(lo: float, hi: float, n: int, scale: str) -> list[float]:
    """Incident-wavenumber grid for transmission tables; k0 = 0 is rejected."""
    if lo <= 0 or not math.isfinite(lo) or not math.isfinite(hi):
        raise ValueError(f"k0 window must be positive and finite, got [{lo}, {hi}]")
    if lo >= hi:
        raise ValueError(f"empty k0 window: [{lo}, {hi}]")
    if n < 2:
        raise ValueError(f"k0 grid needs at least 2 points, got {n}")
    if scale == "log":
        lg_lo, lg_hi = math.log10(lo), math.log10(hi)
        return [10.0 ** (lg_lo + (lg_hi - lg_lo) * i / (n - 1)) for i in range(n)]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]
