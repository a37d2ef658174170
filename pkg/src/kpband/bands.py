"""Band-edge location, band assembly, and Bloch dispersion curves.

Band edges are the energies where |f(E)| crosses 2.  They are located by a
uniform scan of the requested window followed by bisection on |f| - 2, which
is unconditionally safe where Newton steps would stall at band extrema.  The
scan also probes the midpoint of every grid cell: a cell whose endpoints agree
but whose midpoint disagrees hides a pair of crossings narrower than the grid,
which is refined like any other crossing and reported as an under-resolution
warning (the reliable remedy is a larger grid_n).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import ContactInteraction, LatticeParams, trace_function, trace_function_many

DEFAULT_WINDOW = (-25.0, 120.0)
DEFAULT_GRID_N = 20000

# Bisection stops once the bracket is below this relative width; edges land on
# the allowed side of the final bracket so |f(edge)| <= 2 holds by construction.
EDGE_BISECT_RTOL = 1e-13
EDGE_MERGE_RTOL = 4e-13

# A band sample may overshoot |f/2| = 1 by at most this much before the band
# is considered stale for dispersion evaluation.
CLAMP_TOLERANCE = 1e-12

_SCAN_CHUNK = 1 << 20

EDGE_PLUS = "+2"
EDGE_MINUS = "-2"
EDGE_WINDOW = "window"


class MissedBandWarning(UserWarning):
    """A grid cell hid structure narrower than its own width."""


@dataclass(frozen=True)
class Band:
    """One allowed-energy interval [e_lo, e_hi].

    edge_kind_lo / edge_kind_hi record which condition binds at each edge:
    "+2" or "-2" for a genuine crossing of f = +2 / f = -2, or "window" when
    the band is truncated by the search window.  open_below marks a band that
    continues below the window's lower edge.
    """

    index: int
    e_lo: float
    e_hi: float
    edge_kind_lo: str
    edge_kind_hi: str
    open_below: bool = False

    @property
    def width_e(self) -> float:
        return self.e_hi - self.e_lo

    def width_k0(self, lat: LatticeParams) -> float:
        """Band width along the k0 = sqrt(2 m E) axis, clipped at E = 0."""
        two_m = 2.0 * lat.mass
        k_lo = math.sqrt(two_m * max(self.e_lo, 0.0))
        k_hi = math.sqrt(two_m * max(self.e_hi, 0.0))
        return k_hi - k_lo


@dataclass(frozen=True)
class DispersionPoint:
    """A (k, E) point on a band's Bloch curve, k reduced into [0, pi/a]."""

    k: float
    energy: float


@dataclass(frozen=True)
class BandProfileRow:
    """Widths of one band and the gap separating it from the next.

    The gap fields are None on the last profiled band and for bands that touch
    (zero gap would have merged them).
    """

    index: int
    width_e: float
    width_k0: float
    gap_e: float | None
    gap_k0: float | None


def _forbidden_lattice(
    v: ContactInteraction,
    lat: LatticeParams,
    e_min: float,
    e_max: float,
    n_lattice: int,
) -> np.ndarray:
    """Boolean |f(E_i)| > 2 on the half-step scan lattice, evaluated in chunks."""
    step = (e_max - e_min) / (n_lattice - 1)
    out = np.empty(n_lattice, dtype=bool)
    for start in range(0, n_lattice, _SCAN_CHUNK):
        stop = min(start + _SCAN_CHUNK, n_lattice)
        e = e_min + step * np.arange(start, stop, dtype=float)
        if stop == n_lattice:
            e[-1] = e_max
        f = trace_function_many(e, v, lat)
        np.abs(f, out=f)
        out[start:stop] = f > 2.0
    return out


def _refine_edge(
    v: ContactInteraction,
    lat: LatticeParams,
    lo: float,
    hi: float,
) -> tuple[float, str] | None:
    """Bisect one |f| = 2 crossing inside (lo, hi).

    Returns the allowed-side estimate of the edge and its binding condition,
    or None if the scalar evaluation does not confirm the bracket.
    """
    g_lo = abs(trace_function(lo, v, lat)) - 2.0
    g_hi = abs(trace_function(hi, v, lat)) - 2.0
    if (g_lo > 0.0) == (g_hi > 0.0):
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        g_mid = abs(trace_function(mid, v, lat)) - 2.0
        if (g_mid > 0.0) == (g_lo > 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
        if hi - lo <= EDGE_BISECT_RTOL * max(1.0, abs(mid)):
            break
    edge = lo if g_lo <= 0.0 else hi
    kind = EDGE_PLUS if trace_function(edge, v, lat) > 0.0 else EDGE_MINUS
    return edge, kind


def find_band_edges(
    v: ContactInteraction,
    lat: LatticeParams,
    e_min: float = DEFAULT_WINDOW[0],
    e_max: float = DEFAULT_WINDOW[1],
    grid_n: int = DEFAULT_GRID_N,
) -> list[Band]:
    """Locate every band inside [e_min, e_max], sorted by energy.

    Touching bands (a point where |f| = 2 with allowed energies on both
    sides, as in the free lattice) are merged, so the free spectrum comes
    back as a single band.  Structure narrower than the scan resolution
    triggers a MissedBandWarning; rerun with a larger grid_n to resolve it.
    """
    if not (math.isfinite(e_min) and math.isfinite(e_max)):
        raise ValueError("window bounds must be finite")
    if e_min >= e_max:
        raise ValueError(f"empty window: [{e_min}, {e_max}]")
    if grid_n < 2:
        raise ValueError(f"grid_n must be at least 2, got {grid_n}")

    n_lattice = 2 * grid_n - 1
    step = (e_max - e_min) / (n_lattice - 1)
    forbidden = _forbidden_lattice(v, lat, e_min, e_max, n_lattice)
    flips = np.nonzero(forbidden[:-1] != forbidden[1:])[0]

    cramped = np.nonzero(np.diff(flips) == 1)[0] if flips.size > 1 else np.array([], dtype=int)
    for j in cramped:
        lo = e_min + step * flips[j]
        warnings.warn(
            f"band structure narrower than the grid near E = {lo:.6g} "
            f"(grid spacing {2 * step:.3g}); increase grid_n to resolve it",
            MissedBandWarning,
            stacklevel=2,
        )

    edges: list[tuple[float, str]] = []
    for i in flips:
        refined = _refine_edge(v, lat, e_min + step * i, min(e_min + step * (i + 1), e_max))
        if refined is not None:
            edges.append(refined)
    edges.sort(key=lambda ek: ek[0])

    deduped: list[tuple[float, str]] = []
    for e, kind in edges:
        if deduped and e - deduped[-1][0] <= EDGE_MERGE_RTOL * max(1.0, abs(e)):
            continue
        deduped.append((e, kind))

    points = [(e_min, EDGE_WINDOW)] + deduped + [(e_max, EDGE_WINDOW)]
    segments = []
    for (lo, lo_kind), (hi, hi_kind) in zip(points[:-1], points[1:]):
        mid = 0.5 * (lo + hi)
        allowed = abs(trace_function(mid, v, lat)) <= 2.0
        segments.append([lo, hi, lo_kind, hi_kind, allowed])

    merged = [segments[0]]
    for seg in segments[1:]:
        if seg[4] == merged[-1][4]:
            merged[-1][1] = seg[1]
            merged[-1][3] = seg[3]
        else:
            merged.append(seg)

    bands: list[Band] = []
    for lo, hi, lo_kind, hi_kind, allowed in merged:
        if not allowed:
            continue
        if hi - lo <= EDGE_MERGE_RTOL * max(1.0, abs(lo), abs(hi)):
            continue  # an edge landed on the window boundary; no interior
        bands.append(
            Band(
                index=len(bands),
                e_lo=lo,
                e_hi=hi,
                edge_kind_lo=lo_kind,
                edge_kind_hi=hi_kind,
                open_below=lo_kind == EDGE_WINDOW,
            )
        )
    return bands


def dispersion_curve(
    band: Band,
    v: ContactInteraction,
    lat: LatticeParams,
    n_points: int = 101,
) -> list[DispersionPoint]:
    """Sample the Bloch curve k(E) = arccos(f(E)/2)/a across one band.

    Energies are Chebyshev-clustered toward the band edges, where k(E) has
    square-root behavior.  Raises if an interior sample violates the band
    condition beyond clamp tolerance, which means the band does not belong
    to these parameters.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be at least 2, got {n_points}")
    a = lat.spacing
    mid = 0.5 * (band.e_lo + band.e_hi)
    half = 0.5 * (band.e_hi - band.e_lo)
    j = np.arange(n_points, dtype=float)
    energies = mid - half * np.cos(math.pi * j / (n_points - 1))
    energies[0] = band.e_lo
    energies[-1] = band.e_hi

    f_half = trace_function_many(energies, v, lat) / 2.0
    overshoot = np.max(np.abs(f_half)) - 1.0
    if overshoot > CLAMP_TOLERANCE:
        bad = energies[int(np.argmax(np.abs(f_half)))]
        raise ValueError(
            f"band [{band.e_lo:.6g}, {band.e_hi:.6g}] violates the band condition "
            f"at E = {bad:.6g} (|f/2| - 1 = {overshoot:.3g}); recompute bands for these parameters"
        )
    np.clip(f_half, -1.0, 1.0, out=f_half)
    ks = np.arccos(f_half) / a
    # At a refined edge the binding condition is known exactly; snapping the
    # endpoint sample removes the sqrt-amplified arccos noise there.
    for pos, kind in ((0, band.edge_kind_lo), (-1, band.edge_kind_hi)):
        if kind == EDGE_PLUS and f_half[pos] >= 1.0 - 1e-9:
            ks[pos] = 0.0
        elif kind == EDGE_MINUS and f_half[pos] <= -1.0 + 1e-9:
            ks[pos] = math.pi / a
    return [DispersionPoint(k=float(k), energy=float(e)) for k, e in zip(ks, energies)]


def band_width_and_gap_profile(
    v: ContactInteraction,
    lat: LatticeParams,
    n_bands: int,
    grid_n: int | None = None,
) -> list[BandProfileRow]:
    """Per-band widths and inter-band gaps on the E and k0 axes.

    Profiles the first n_bands positive-energy bands, growing the search
    window until one band beyond the request is available (so every returned
    gap is genuine, not a window artifact).  A gapless spectrum yields a
    single row with no gap.
    """
    if n_bands < 2:
        raise ValueError(f"n_bands must be at least 2, got {n_bands}")
    a = lat.spacing
    two_m = 2.0 * lat.mass
    e_hi = ((n_bands + 2) * math.pi / a) ** 2 / two_m
    scan_n = grid_n if grid_n is not None else max(DEFAULT_GRID_N, 6000 * (n_bands + 2))

    bands: list[Band] = []
    for _ in range(8):
        bands = find_band_edges(v, lat, 0.0, e_hi, scan_n)
        if len(bands) >= n_bands + 1:
            break
        if len(bands) == 1 and bands[0].edge_kind_hi == EDGE_WINDOW and bands[0].open_below:
            break  # gapless spectrum: one band fills any window
        e_hi *= 2.0
        if grid_n is None:
            scan_n *= 2

    rows: list[BandProfileRow] = []
    for i, band in enumerate(bands[:n_bands]):
        gap_e: float | None = None
        gap_k0: float | None = None
        if i + 1 < len(bands):
            nxt = bands[i + 1]
            gap_e = nxt.e_lo - band.e_hi
            gap_k0 = math.sqrt(two_m * max(nxt.e_lo, 0.0)) - math.sqrt(two_m * max(band.e_hi, 0.0))
        rows.append(
            BandProfileRow(
                index=band.index,
                width_e=band.width_e,
                width_k0=band.width_k0(lat),
                gap_e=gap_e,
                gap_k0=gap_k0,
            )
        )
    return rows
