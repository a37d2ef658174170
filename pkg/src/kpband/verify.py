"""Seeded oracle battery behind `kpb verify`.

Every closed form in the package is replayed against an independent route:
the trace function and propagator against the brute-force matrix exponential,
the eigensystem against direct complex arithmetic, the dispersion condition
against the Bloch-frame monodromy, and the scattering formula against the
amplitude-level bi-orthogonal projection.  A deliberate off-shell control
confirms the monodromy check has teeth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .core import ContactInteraction, LatticeParams, propagator, trace_function
from .scattering import transmission_probability

DEFAULT_SEED = 1729
DEFAULT_SAMPLES = 1000

DEFAULT_TOLERANCES = {
    "trace_vs_expm": 1e-10,
    "propagator_vs_expm": 1e-10,
    "biortho": 1e-12,
    "eigen": 1e-10,
    "bloch_trace_relation": 1e-9,
    "bloch_on_shell": 1e-9,
    "bloch_off_shell_margin": 1e-3,
    "scattering_amplitude": 1e-12,
}

_ENERGY_RANGE = (-10.0, 100.0)
_SMALL_ENERGY_SAMPLES = 50
_SMALL_ENERGY_BOUND = 1e-3


@dataclass(frozen=True)
class CheckRow:
    """One battery line: a residual (or margin) against its bound."""

    name: str
    value: float
    bound: float
    kind: str  # "max": value must stay below bound; "min": above

    @property
    def ok(self) -> bool:
        return self.value <= self.bound if self.kind == "max" else self.value >= self.bound


@dataclass(frozen=True)
class VerificationReport:
    rows: list[CheckRow]
    seed: int
    samples: int

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)


def random_sl2(rng: np.random.Generator) -> ContactInteraction:
    """A random unimodular connection matrix with O(1) entries."""
    gamma = rng.uniform(0.3, 2.0) * rng.choice([-1.0, 1.0])
    beta = rng.uniform(-2.0, 2.0)
    delta = rng.uniform(-2.0, 2.0)
    alpha = (1.0 + beta * delta) / gamma
    return ContactInteraction(gamma, delta, beta, alpha)


def _sample_energies(rng: np.random.Generator, n: int) -> np.ndarray:
    e = rng.uniform(*_ENERGY_RANGE, size=n)
    n_small = min(_SMALL_ENERGY_SAMPLES, n)
    e[:n_small] = rng.uniform(-_SMALL_ENERGY_BOUND, _SMALL_ENERGY_BOUND, size=n_small)
    return e


def run_verification(
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLES,
    tolerances: dict[str, float] | None = None,
) -> VerificationReport:
    """Run the full battery and report per-category extremal residuals."""
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update(tolerances)

    rng = np.random.default_rng(seed)
    lat = LatticeParams()
    rows: list[CheckRow] = []

    # Trace function against the matrix exponential, series branch included.
    energies = _sample_energies(rng, samples)
    worst = 0.0
    for e in energies:
        v = random_sl2(rng)
        g = oracle.expm2(oracle.hamiltonian(e, lat) * lat.spacing)
        f_oracle = float(np.trace(g @ v.matrix))
        worst = max(worst, abs(f_oracle - trace_function(e, v, lat)))
    rows.append(CheckRow("trace_vs_expm", worst, tol["trace_vs_expm"], "max"))

    # Closed-form propagator against the matrix exponential.
    worst = 0.0
    for _ in range(max(1, samples // 4)):
        e = rng.uniform(*_ENERGY_RANGE)
        x = rng.uniform(-2.0, 2.0)
        diff = oracle.expm2(oracle.hamiltonian(e, lat) * x) - propagator(x, e, lat)
        worst = max(worst, float(np.max(np.abs(diff))))
    rows.append(CheckRow("propagator_vs_expm", worst, tol["propagator_vs_expm"], "max"))

    # Eigensystem of the free propagator.
    worst_bi = 0.0
    worst_eig = 0.0
    for _ in range(max(1, samples // 4)):
        e = rng.uniform(0.01, 100.0)
        x = rng.uniform(-3.0, 3.0)
        rep = oracle.eigencheck_g(x, e, lat)
        worst_bi = max(worst_bi, max(v for k, v in rep.residuals.items() if k.startswith("biortho")))
        worst_eig = max(worst_eig, max(v for k, v in rep.residuals.items() if not k.startswith("biortho")))
    rows.append(CheckRow("biortho", worst_bi, tol["biortho"], "max"))
    rows.append(CheckRow("eigen", worst_eig, tol["eigen"], "max"))

    # Bloch-frame monodromy on the dispersion shell, plus the off-shell control.
    n_pairs = max(10, samples // 10)
    worst_rel = 0.0
    worst_shell = 0.0
    best_margin = math.inf
    found = 0
    for _ in range(200 * n_pairs):
        if found >= n_pairs:
            break
        e = rng.uniform(0.01, 100.0)
        v = random_sl2(rng)
        f = trace_function(e, v, lat)
        if abs(f) > 2.0:
            continue
        found += 1
        k = math.acos(f / 2.0) / lat.spacing
        rep = oracle.bloch_consistency(e, k, v, lat)
        worst_rel = max(worst_rel, rep.residuals["trace_relation"])
        worst_shell = max(worst_shell, rep.residuals["trace_on_shell"], rep.residuals["det_on_shell"])

        k_off = k + 0.4 / lat.spacing
        if abs(2.0 * math.cos(k_off * lat.spacing) - f) > 2e-3:
            rep_off = oracle.bloch_consistency(e, k_off, v, lat)
            worst_rel = max(worst_rel, rep_off.residuals["trace_relation"])
            best_margin = min(best_margin, rep_off.residuals["det_on_shell"])
    rows.append(CheckRow("bloch_trace_relation", worst_rel, tol["bloch_trace_relation"], "max"))
    rows.append(CheckRow("bloch_on_shell", worst_shell, tol["bloch_on_shell"], "max"))
    rows.append(
        CheckRow("bloch_off_shell_margin", best_margin, tol["bloch_off_shell_margin"], "min")
    )

    # Scattering probability against the amplitude-level derivation.
    worst = 0.0
    for _ in range(max(1, samples // 4)):
        v = random_sl2(rng)
        k0 = 10.0 ** rng.uniform(-2.0, 3.0)
        t2_amp, r2_amp = oracle.transmission_from_biortho(v, k0, lat)
        result = transmission_probability(v, k0, lat)
        worst = max(worst, abs(t2_amp - result.t2), abs(t2_amp + r2_amp - 1.0))
    rows.append(CheckRow("scattering_amplitude", worst, tol["scattering_amplitude"], "max"))

    return VerificationReport(rows=rows, seed=seed, samples=samples)
