"""Band structure and scattering for 1-D lattices of generalized contact interactions."""

from .bands import (
    Band,
    BandProfileRow,
    DispersionPoint,
    MissedBandWarning,
    band_width_and_gap_profile,
    dispersion_curve,
    find_band_edges,
)
from .core import (
    ContactInteraction,
    Energy,
    FamilySpec,
    IDENTITY_INTERACTION,
    LatticeParams,
    band_condition,
    make_connection,
    propagator,
    trace_function,
    trace_function_many,
)
from .scattering import ScatteringResult, limit_profile, transmission_probability
from .sweep import SweepGrid, build_sweep_grid
from .verify import run_verification

__version__ = "0.1.0"

__all__ = [
    "Band",
    "BandProfileRow",
    "ContactInteraction",
    "DispersionPoint",
    "Energy",
    "FamilySpec",
    "IDENTITY_INTERACTION",
    "LatticeParams",
    "MissedBandWarning",
    "ScatteringResult",
    "SweepGrid",
    "band_condition",
    "band_width_and_gap_profile",
    "build_sweep_grid",
    "dispersion_curve",
    "find_band_edges",
    "limit_profile",
    "make_connection",
    "propagator",
    "trace_function",
    "trace_function_many",
    "transmission_probability",
    "run_verification",
    "__version__",
]
