"""Transmission and reflection probabilities for a single obstacle.

For a plane wave of wavenumber k0 > 0 hitting one connection matrix V, the
transmission probability has the closed form

    |T|^2 = 4 / [alpha^2 + gamma^2 + 2
                 + delta^2 k0^2 / (4 m^2) + beta^2 4 m^2 / k0^2],

and |R|^2 = 1 - |T|^2.  The delta family (delta-entry 0) transmits perfectly
as k0 -> infinity, the epsilon family (beta-entry 0) as k0 -> 0; any other
obstacle reflects perfectly in both limits.  k0 = 0 itself is outside the
formula's domain (the beta term diverges), so limits are exhibited by
sampling, never by evaluating at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ContactInteraction, LatticeParams


@dataclass(frozen=True)
class ScatteringResult:
    """Probabilities for one incident wavenumber; t2 + r2 = 1 as computed."""

    k0: float
    t2: float
    r2: float


def transmission_probability(
    v: ContactInteraction, k0: float, lat: LatticeParams
) -> ScatteringResult:
    """Transmission/reflection probabilities at incident wavenumber k0 > 0."""
    if not math.isfinite(k0):
        raise ValueError(f"k0 must be finite, got {k0!r}")
    if k0 <= 0:
        raise ValueError(f"k0 must be positive, got {k0}")
    two_m = 2.0 * lat.mass
    denom = (
        v.alpha * v.alpha
        + v.gamma * v.gamma
        + 2.0
        + (v.delta * k0 / two_m) ** 2
        + (v.beta * two_m / k0) ** 2
    )
    t2 = 4.0 / denom
    return ScatteringResult(k0=k0, t2=t2, r2=1.0 - t2)


def limit_profile(
    v: ContactInteraction, lat: LatticeParams, k0_list: list[float]
) -> list[ScatteringResult]:
    """Evaluate the probabilities along an ascending list of wavenumbers.

    Sampling toward k0 -> 0 or k0 -> infinity exhibits the limiting behavior
    of each obstacle class without ever touching the k0 = 0 endpoint.
    """
    if any(k <= 0 or not math.isfinite(k) for k in k0_list):
        raise ValueError("all wavenumbers must be positive and finite")
    if any(b >= c for b, c in zip(k0_list[:-1], k0_list[1:])):
        raise ValueError("wavenumbers must be strictly ascending")
    return [transmission_probability(v, k, lat) for k in k0_list]
