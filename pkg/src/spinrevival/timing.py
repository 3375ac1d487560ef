"""Closed-form collapse and revival time estimates."""

import math
from dataclasses import dataclass

from .errors import DomainError, EstimateInvalidError


@dataclass(frozen=True)
class RevivalEstimate:
    t_collapse: float
    t_revival: float
    approximate_collapse: bool = False

    @property
    def t_attractor(self):
        return self.t_revival / 4.0

    @property
    def t_second_attractor(self):
        return 3.0 * self.t_revival / 4.0

    @property
    def t_entanglement_revival(self):
        return self.t_revival / 2.0


def field_revival_estimate(n_bar, lam):
    """``t_c = 2/λ`` and ``t_r = 2π √n̄ / λ``."""
    if n_bar <= 0 or lam <= 0:
        raise DomainError(f"need n_bar > 0 and lambda > 0, got {n_bar}, {lam}")
    return RevivalEstimate(2.0 / lam, 2.0 * math.pi * math.sqrt(n_bar) / lam)


def spin_revival_denominator(zeta2, n_spins):
    """Dimensionless correction factor dividing ``2π √(N|ζ|²/(N+|ζ|²))/λ``."""
    z, N = float(zeta2), float(n_spins)
    s = N + z
    return (1.0
            - 3.0 * z / (2.0 * s)
            - s / (N * z)
            + (z / (4.0 * N * N)) * (N * (z - 1.0) + z * (N - 1.0)) / (s * s))


def spin_revival_estimate(zeta2, n_spins, lam):
    """Revival time of qubits coupled to an ``N``-spin coherent state.

    ``t_c`` is reported as the field-mode value ``2/λ`` and flagged
    approximate; no composite-spin collapse formula is used.

    Raises
    ------
    EstimateInvalidError
        If the correction factor is not positive (very small ``|ζ|²``).
    """
    if zeta2 <= 0 or n_spins < 1 or lam <= 0:
        raise DomainError(
            f"need zeta2 > 0, n_spins >= 1, lambda > 0, got {zeta2}, {n_spins}, {lam}")
    den = spin_revival_denominator(zeta2, n_spins)
    if den <= 0:
        raise EstimateInvalidError(
            f"revival estimate undefined for |zeta|^2={zeta2}, N={n_spins} "
            f"(correction factor {den:.4g} <= 0)")
    num = 2.0 * math.pi * math.sqrt(n_spins * zeta2 / (n_spins + zeta2))
    return RevivalEstimate(2.0 / lam, num / (lam * den), approximate_collapse=True)
