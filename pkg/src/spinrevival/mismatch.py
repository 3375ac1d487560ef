"""Decoherence from a Gaussian spread of coupling mismatch.

Each ensemble member evolves with ``λ₁ = λ₂ + δ``; the reported two-qubit
state is the Gaussian-weighted mixture of the members' reduced states.
"""

from dataclasses import dataclass

import numpy as np

from .dynamics import Propagator
from .errors import DomainError, StructuralError
from .measures import reduced_qubit_density
from .parallel import ordered_map

DEFAULT_SAMPLES = 61
SPAN_SIGMAS = 3.0


@dataclass(frozen=True)
class MismatchEnsemble:
    """Uniform δ grid on ``[-3Δ, 3Δ]`` (in units of λ₂) with normalized
    Gaussian weights."""

    width: float
    deltas: np.ndarray
    weights: np.ndarray

    @property
    def sample_count(self):
        return self.deltas.shape[0]


def gaussian_weight_grid(width, sample_count=DEFAULT_SAMPLES):
    if width < 0:
        raise DomainError(f"width must be >= 0, got {width}")
    if int(sample_count) != sample_count or sample_count < 1 or sample_count % 2 == 0:
        raise DomainError(f"sample_count must be an odd positive integer, got {sample_count}")
    if width == 0:
        return MismatchEnsemble(0.0, np.zeros(1), np.ones(1))
    k = np.arange(sample_count) - (sample_count - 1) // 2
    half = (sample_count - 1) // 2
    deltas = SPAN_SIGMAS * width * k / half if half else np.zeros(1)
    # The 1/(Δ√2π) prefactor cancels in the normalization.
    f = np.exp(-0.5 * (deltas / width) ** 2)
    # Symmetrize explicitly so that w_i == w_{-i} bit for bit.
    f = 0.5 * (f + f[::-1])
    return MismatchEnsemble(float(width), deltas, f / f.sum())


def member_density_series(base, delta, psi0, grid, method="blocks"):
    """Reduced qubit states ``ρ_q(t, δ)`` of one member, shape ``(T, q, q)``."""
    p = base.with_delta(delta)
    states = Propagator(p, method=method).evolve(psi0, grid)
    return reduced_qubit_density(states, p.hilbert)


def ensemble_average_series(base, ensemble, psi0, grid, workers=None, method="blocks"):
    """Weighted average of the members' reduced states at every grid time.

    Members may be evaluated concurrently; the weighted sum always runs in
    ascending-δ order so the result does not depend on the worker count.
    """
    if base.m_q != 2:
        raise StructuralError("coupling mismatch needs exactly two qubits")
    if ensemble.sample_count == 1 and ensemble.deltas[0] == 0.0:
        return member_density_series(base, 0.0, psi0, grid, method)
    scale = base.couplings[1]
    shifts = [scale * d for d in ensemble.deltas]
    members = ordered_map(
        lambda d: member_density_series(base, d, psi0, grid, method), shifts, workers)
    total = np.zeros_like(members[0])
    for w, rho in zip(ensemble.weights, members):
        total += w * rho
    return total
