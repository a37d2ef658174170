"""Parameter-by-energy rasters of the allowed/forbidden band structure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FamilySpec, LatticeParams, make_connection, trace_function_many

# One column per family parameter, one row cell per energy-axis sample.
DEFAULT_PARAM_SAMPLES = 601
DEFAULT_AXIS_SAMPLES = 1201
DEFAULT_E_WINDOW = (-25.0, 120.0)
DEFAULT_K0_WINDOW = (0.0, 20.0)

DEFAULT_PARAM_RANGES = {
    "delta": (-15.0, 15.0),
    "epsilon": (-5.0, 5.0),
    "rotation": (-math.pi, math.pi),
    "hyperbolic": (-3.0, 3.0),
}

PARAM_SYMBOLS = {"delta": "v", "epsilon": "u", "rotation": "p", "hyperbolic": "p", "raw": "param"}


@dataclass(frozen=True, eq=False)
class SweepGrid:
    """Raster of f(E)/2 over (family parameter) x (energy axis).

    mode "E" puts energy on the vertical axis; mode "k0" puts the wavenumber
    k0 there, with cell energies E = k0^2 / (2m).  A cell is allowed exactly
    when |f_half| <= 1.  Rows follow param_axis, columns follow axis_values.
    """

    family: str
    mode: str
    param_axis: np.ndarray
    axis_values: np.ndarray
    f_half: np.ndarray
    allowed: np.ndarray

    def __post_init__(self) -> None:
        if self.mode not in ("E", "k0"):
            raise ValueError(f"mode must be 'E' or 'k0', got {self.mode!r}")
        for name, axis in (("param_axis", self.param_axis), ("axis_values", self.axis_values)):
            if axis.ndim != 1 or axis.size < 2:
                raise ValueError(f"{name} must be a 1-D axis with at least 2 samples")
            if not np.all(np.diff(axis) > 0):
                raise ValueError(f"{name} must be strictly increasing")
        shape = (self.param_axis.size, self.axis_values.size)
        if self.f_half.shape != shape or self.allowed.shape != shape:
            raise ValueError("cell arrays must be shaped (n_param, n_axis)")


def default_param_axis(kind: str, n: int = DEFAULT_PARAM_SAMPLES) -> np.ndarray:
    """Default sweep axis for a family.

    The rotation family lives on the half-open interval (-pi, pi], so its
    default axis excludes -pi and ends exactly at pi.
    """
    if kind not in DEFAULT_PARAM_RANGES:
        raise ValueError(f"no default parameter range for family {kind!r}")
    lo, hi = DEFAULT_PARAM_RANGES[kind]
    if kind == "rotation":
        return lo + (hi - lo) * np.arange(1, n + 1, dtype=float) / n
    return np.linspace(lo, hi, n)


def default_axis_values(mode: str, n: int = DEFAULT_AXIS_SAMPLES) -> np.ndarray:
    window = DEFAULT_E_WINDOW if mode == "E" else DEFAULT_K0_WINDOW
    return np.linspace(window[0], window[1], n)


def build_sweep_grid(
    kind: str,
    param_values: np.ndarray,
    axis_values: np.ndarray,
    mode: str,
    lat: LatticeParams,
) -> SweepGrid:
    """Evaluate f/2 for every (parameter, axis) cell of one family."""
    params = np.asarray(param_values, dtype=float)
    axis = np.asarray(axis_values, dtype=float)
    if mode == "k0":
        if axis.size and axis[0] < 0:
            raise ValueError("k0-mode axis values must be non-negative")
        energies = axis * axis / (2.0 * lat.mass)
    else:
        energies = axis

    f_half = np.empty((params.size, axis.size), dtype=float)
    for i, p in enumerate(params):
        v = make_connection(FamilySpec(kind, float(p)))
        f_half[i] = trace_function_many(energies, v, lat)
    f_half /= 2.0
    allowed = np.abs(f_half) <= 1.0
    return SweepGrid(
        family=kind,
        mode=mode,
        param_axis=params,
        axis_values=axis,
        f_half=f_half,
        allowed=allowed,
    )
