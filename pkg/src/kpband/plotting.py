"""Matplotlib report figures for the CLI (written alongside the CSV output).

matplotlib is imported lazily so table-only runs never pay for it.
"""

from __future__ import annotations

from .bands import Band, DispersionPoint
from .core import LatticeParams
from .scattering import ScatteringResult
from .sweep import PARAM_SYMBOLS, SweepGrid


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_sweep_figure(grid: SweepGrid, path: str) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.2, 4.8))
    extent = (
        float(grid.param_axis[0]),
        float(grid.param_axis[-1]),
        float(grid.axis_values[0]),
        float(grid.axis_values[-1]),
    )
    ax.imshow(
        grid.allowed.T,
        origin="lower",
        extent=extent,
        aspect="auto",
        cmap="gray_r",
        interpolation="nearest",
        vmin=0,
        vmax=1,
    )
    ax.set_xlabel(f"{PARAM_SYMBOLS.get(grid.family, 'param')} ({grid.family})")
    ax.set_ylabel("E" if grid.mode == "E" else "k0")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_bands_figure(bands: list[Band], lat: LatticeParams, path: str) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.2, 4.8))
    for band in bands:
        ax.vlines(band.index, band.e_lo, band.e_hi, colors="black", lw=8)
    ax.set_xlabel("band index")
    ax.set_ylabel("E")
    if bands:
        ax.set_xlim(-0.8, bands[-1].index + 0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_dispersion_figure(
    curves: list[tuple[int, list[DispersionPoint]]], lat: LatticeParams, path: str
) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    for index, points in curves:
        ax.plot([p.k for p in points], [p.energy for p in points], color="black", lw=1.2)
    ax.set_xlabel("k")
    ax.set_ylabel("E")
    ax.set_xlim(0.0, 3.15 / lat.spacing)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_transmission_figure(results: list[ScatteringResult], path: str, logx: bool) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.6, 4.2))
    k0 = [r.k0 for r in results]
    ax.plot(k0, [r.t2 for r in results], color="black", lw=1.4, label="|T|^2")
    ax.plot(k0, [r.r2 for r in results], color="gray", lw=1.0, ls="--", label="|R|^2")
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel("k0")
    ax.set_ylabel("probability")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
