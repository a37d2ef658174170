"""Domain types and closed forms for a 1-D lattice of contact interactions.

A single obstacle is a 2x2 real connection matrix

    V = [[gamma, delta],
         [beta,  alpha]]   with  alpha*gamma - beta*delta = 1,

acting on the state vector (phi, phi'/(2m)).  Between obstacles the state
evolves with the field-free transfer matrix

    G(x) = exp(H x),   H = [[0, 2m], [-E, 0]],

which has the closed form G(x) = cos(k0 x) I + (sin(k0 x)/k0) H with
k0 = sqrt(2 m E).  For E < 0 the same expression continues analytically to
cosh/sinh in kappa = sqrt(-2 m E); H stays real, so G does too.  The spectrum
of an infinite array with lattice spacing a is controlled by the trace

    f(E) = Tr(G(a) V) = (alpha + gamma) cos(k0 a)
           + sin(k0 a) (2 m beta / k0 - k0 delta / (2 m)),

an energy E being allowed exactly when |f(E)| <= 2, with Bloch wavenumber
k given by f(E) = 2 cos(k a).  Units: hbar = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Floating-point budgets.  The closed forms are exact in real arithmetic;
# these constants are the artifact's error allowances.
DET_TOLERANCE = 1e-12       # |det V - 1| allowed at construction (unit-scale entries)
ORACLE_TOLERANCE = 1e-10    # agreement demanded between closed forms and expm
SERIES_Z_CUTOFF = 1e-8      # switch to Taylor series when |k0*x|^2 < this, i.e. |k0*x| < 1e-4

DEFAULT_MASS = 0.5
DEFAULT_SPACING = 1.0

FAMILY_KINDS = ("delta", "epsilon", "rotation", "hyperbolic", "raw")


def _require_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class LatticeParams:
    """Particle mass and lattice spacing (hbar = 1)."""

    mass: float = DEFAULT_MASS
    spacing: float = DEFAULT_SPACING

    def __post_init__(self) -> None:
        _require_finite(mass=self.mass, spacing=self.spacing)
        if self.mass <= 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if self.spacing <= 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")


@dataclass(frozen=True)
class Energy:
    """An energy with its derived wavenumbers.

    For value > 0 the propagating wavenumber k0 = sqrt(2 m value) is defined;
    for value < 0 only the decay constant kappa = sqrt(-2 m value) is.
    """

    value: float
    mass: float = DEFAULT_MASS

    def __post_init__(self) -> None:
        _require_finite(value=self.value, mass=self.mass)
        if self.mass <= 0:
            raise ValueError(f"mass must be positive, got {self.mass}")

    @property
    def k0(self) -> float:
        if self.value < 0:
            raise ValueError(f"k0 is undefined for negative energy {self.value}")
        return math.sqrt(2.0 * self.mass * self.value)

    @property
    def kappa(self) -> float:
        if self.value > 0:
            raise ValueError(f"kappa is undefined for positive energy {self.value}")
        return math.sqrt(-2.0 * self.mass * self.value)


@dataclass(frozen=True)
class ContactInteraction:
    """One obstacle: the real connection matrix [[gamma, delta], [beta, alpha]].

    Current conservation plus time-reversal symmetry force the matrix into
    SL(2, R); construction rejects entries whose determinant strays from 1
    beyond DET_TOLERANCE (scaled by entry magnitude, so that large hyperbolic
    parameters remain constructible at their best representable accuracy).
    """

    gamma: float
    delta: float
    beta: float
    alpha: float

    def __post_init__(self) -> None:
        _require_finite(gamma=self.gamma, delta=self.delta, beta=self.beta, alpha=self.alpha)
        scale = max(1.0, abs(self.alpha * self.gamma) + abs(self.beta * self.delta))
        if abs(self.det - 1.0) > DET_TOLERANCE * scale:
            raise ValueError(
                f"connection matrix must be unimodular: det = {self.det!r} "
                f"(|det - 1| > {DET_TOLERANCE} at entry scale {scale:g})"
            )

    @property
    def det(self) -> float:
        return self.alpha * self.gamma - self.beta * self.delta

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.gamma, self.delta], [self.beta, self.alpha]], dtype=float)


IDENTITY_INTERACTION = ContactInteraction(1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class FamilySpec:
    """A one-parameter family of connection matrices, or a raw matrix.

    kind      one of "delta", "epsilon", "rotation", "hyperbolic", "raw"
    param     family strength (v, u, p, p); must be None for kind "raw"
    raw_matrix  the explicit matrix; only with kind "raw"

    The rotation parameter is restricted to (-pi, pi]; the other families
    accept any finite real strength.
    """

    kind: str
    param: float | None = None
    raw_matrix: ContactInteraction | None = field(default=None)

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {FAMILY_KINDS}")
        if self.kind == "raw":
            if self.raw_matrix is None:
                raise ValueError("raw family requires raw_matrix")
            if self.param is not None:
                raise ValueError("raw family takes no param")
            return
        if self.raw_matrix is not None:
            raise ValueError(f"{self.kind} family does not take raw_matrix")
        if self.param is None:
            raise ValueError(f"{self.kind} family requires a param")
        _require_finite(param=self.param)
        if self.kind == "rotation" and not (-math.pi < self.param <= math.pi):
            raise ValueError(f"rotation param must lie in (-pi, pi], got {self.param}")


def make_connection(spec: FamilySpec) -> ContactInteraction:
    """Build the connection matrix of a family member.

    delta(v)      [[1, 0], [v, 1]]        continuous phi, kink in phi'
    epsilon(u)    [[1, u], [0, 1]]        continuous phi', jump in phi
    rotation(p)   [[cos p, -sin p], [sin p, cos p]]
    hyperbolic(p) [[cosh p, sinh p], [sinh p, cosh p]]
    raw           the given matrix, re-validated
    """
    if spec.kind == "delta":
        return ContactInteraction(1.0, 0.0, spec.param, 1.0)
    if spec.kind == "epsilon":
        return ContactInteraction(1.0, spec.param, 0.0, 1.0)
    if spec.kind == "rotation":
        c, s = math.cos(spec.param), math.sin(spec.param)
        return ContactInteraction(c, -s, s, c)
    if spec.kind == "hyperbolic":
        ch, sh = math.cosh(spec.param), math.sinh(spec.param)
        return ContactInteraction(ch, sh, sh, ch)
    return ContactInteraction(
        spec.raw_matrix.gamma, spec.raw_matrix.delta, spec.raw_matrix.beta, spec.raw_matrix.alpha
    )


def _phase_factors(z: float) -> tuple[float, float]:
    """C(z) and S(z) with z = (k0 x)^2 signed by the energy.

    C = cos(sqrt(z)), S = sin(sqrt(z))/sqrt(z) for z > 0; the hyperbolic
    continuation for z < 0.  One signed Taylor series covers both branches
    near z = 0, where the ratio S would otherwise lose digits to 0/0.
    """
    if abs(z) < SERIES_Z_CUTOFF:
        c = 1.0 + z * (-0.5 + z * (1.0 / 24.0 - z / 720.0))
        s = 1.0 + z * (-1.0 / 6.0 + z * (1.0 / 120.0 - z / 5040.0))
        return c, s
    if z > 0:
        w = math.sqrt(z)
        return math.cos(w), math.sin(w) / w
    w = math.sqrt(-z)
    return math.cosh(w), math.sinh(w) / w


def _phase_factors_array(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized _phase_factors.  Fast path for all-propagating input."""
    if z.size and z.min() >= SERIES_Z_CUTOFF:
        w = np.sqrt(z)
        c = np.cos(w)
        s = np.sin(w)
        s /= w
        return c, s
    c = np.empty_like(z)
    s = np.empty_like(z)
    small = np.abs(z) < SERIES_Z_CUTOFF
    pos = (z > 0) & ~small
    neg = ~pos & ~small
    wp = np.sqrt(z[pos])
    c[pos] = np.cos(wp)
    s[pos] = np.sin(wp) / wp
    wn = np.sqrt(-z[neg])
    c[neg] = np.cosh(wn)
    s[neg] = np.sinh(wn) / wn
    zs = z[small]
    c[small] = 1.0 + zs * (-0.5 + zs * (1.0 / 24.0 - zs / 720.0))
    s[small] = 1.0 + zs * (-1.0 / 6.0 + zs * (1.0 / 120.0 - zs / 5040.0))
    return c, s


def propagator(x: float, energy: float, lat: LatticeParams) -> np.ndarray:
    """Field-free transfer matrix G(x) = exp(H x) over a displacement x.

    Real for every real energy; det G(x) = 1 since H is traceless.
    """
    _require_finite(x=x, energy=energy)
    m = lat.mass
    z = 2.0 * m * energy * x * x
    c, s = _phase_factors(z)
    xs = x * s
    return np.array([[c, 2.0 * m * xs], [-energy * xs, c]], dtype=float)


def trace_function(energy: float, v: ContactInteraction, lat: LatticeParams) -> float:
    """f(E) = Tr(G(a) V), real and continuous over all real energies.

    |f(E)| <= 2 is the existence condition for a Bloch solution, and
    f(E) = 2 cos(k a) fixes the dispersion inside a band.
    """
    _require_finite(energy=energy)
    m, a = lat.mass, lat.spacing
    c, s = _phase_factors(2.0 * m * energy * a * a)
    return (v.alpha + v.gamma) * c + a * s * (2.0 * m * v.beta - energy * v.delta)


def trace_function_many(energies: np.ndarray, v: ContactInteraction, lat: LatticeParams) -> np.ndarray:
    """Vectorized trace_function over an array of energies."""
    e = np.asarray(energies, dtype=float)
    if not np.all(np.isfinite(e)):
        raise ValueError("energies must be finite")
    m, a = lat.mass, lat.spacing
    c, s = _phase_factors_array((2.0 * m * a * a) * e)
    f = c
    f *= v.alpha + v.gamma
    if v.beta != 0.0:
        f += (2.0 * m * a * v.beta) * s
    if v.delta != 0.0:
        s *= e
        f -= (a * v.delta) * s
    return f


def band_condition(energy: float, v: ContactInteraction, lat: LatticeParams) -> bool:
    """True when a Bloch solution exists at this energy, i.e. |f(E)| <= 2."""
    return abs(trace_function(energy, v, lat)) <= 2.0
