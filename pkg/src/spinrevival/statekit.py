"""Constructors for the initial, attractor and basin states.

Single-qubit amplitudes are ordered ``(e, g)``; two-qubit amplitudes are
ordered ``(ee, eg, ge, gg)``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import poisson

from .errors import DomainError, TruncationError

TRUNCATION_TOL = 1e-12
SQRT_HALF = math.sqrt(0.5)


def default_n_max(n_bar):
    """Fock cutoff ``ceil(n̄ + 10 sqrt(n̄))``, raised if needed.

    For small ``n̄`` the Poisson tail is heavier than the 10-sigma rule
    suggests, so the cutoff grows until the tail mass is below half the
    truncation tolerance.
    """
    n = max(1, math.ceil(n_bar + 10.0 * math.sqrt(n_bar)))
    while poisson.sf(n, n_bar) > 0.5 * TRUNCATION_TOL:
        n += 1
    return n


@dataclass(frozen=True)
class FockCoherent:
    alpha: complex
    n_max: int
    amplitudes: np.ndarray

    @property
    def n_bar(self):
        return abs(self.alpha) ** 2


@dataclass(frozen=True)
class SpinCoherent:
    zeta: complex
    n_spins: int
    amplitudes: np.ndarray


@dataclass(frozen=True)
class TwoQubitState:
    c_ee: complex
    c_eg: complex
    c_ge: complex
    c_gg: complex

    def __post_init__(self):
        norm = sum(abs(c) ** 2 for c in self.amplitudes)
        if abs(norm - 1.0) > 1e-9:
            raise DomainError(f"two-qubit amplitudes have norm² {norm:.12g}, expected 1")

    @property
    def amplitudes(self):
        return np.array([self.c_ee, self.c_eg, self.c_ge, self.c_gg], dtype=complex)

    @classmethod
    def from_vector(cls, vec):
        vec = np.asarray(vec, dtype=complex).reshape(-1)
        if vec.shape != (4,):
            raise DomainError(f"expected 4 amplitudes, got {vec.shape[0]}")
        return cls(*vec)


def coherent_fock_amplitudes(alpha, n_max):
    """Truncated oscillator coherent state ``e^{-|α|²/2} Σ αⁿ/√n! |n⟩``.

    Raises
    ------
    TruncationError
        If more than 1e-12 of the norm lies beyond ``n_max``. The error
        carries the smallest cutoff that would have passed.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    alpha = complex(alpha)
    amps = np.empty(n_max + 1, dtype=complex)
    amps[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(n_max):
        amps[n + 1] = amps[n] * alpha / math.sqrt(n + 1)

    deficit = 1.0 - math.fsum(np.abs(amps) ** 2)
    if deficit > TRUNCATION_TOL:
        required = n_max
        total = math.fsum(np.abs(amps) ** 2)
        a = amps[-1]
        while 1.0 - total > TRUNCATION_TOL and required < 100 * (n_max + 10):
            a = a * alpha / math.sqrt(required + 1)
            required += 1
            total += abs(a) ** 2
        raise TruncationError(
            f"coherent state |α|²={abs(alpha) ** 2:.6g} truncated at n_max={n_max} "
            f"loses {deficit:.3e} of its norm; use n_max >= {required}",
            required_n_max=required)
    return FockCoherent(alpha, n_max, amps)


def spin_coherent_amplitudes(zeta, n_spins):
    """Spin coherent state of ``n_spins`` spins over the Dicke ladder.

    Entry ``n`` is the amplitude of ``|N/2, n - N/2⟩``, i.e. of ``n``
    excitations. Binomials are accumulated in log space so that large ``N``
    never forms a factorial.
    """
    if n_spins < 1:
        raise DomainError(f"n_spins must be >= 1, got {n_spins}")
    zeta = complex(zeta)
    N = int(n_spins)
    amps = np.zeros(N + 1, dtype=complex)
    if zeta == 0:
        amps[0] = 1.0
        return SpinCoherent(zeta, N, amps)

    n = np.arange(N + 1)
    lg = np.array([math.lgamma(k + 1) for k in range(N + 1)])
    log_binom = lg[N] - lg[N - n] - lg[n]
    # log|ζ| rather than log|ζ|² so tiny |ζ| cannot underflow to log(0)
    log_mag = (-0.5 * N * math.log1p(abs(zeta) ** 2 / N) + 0.5 * log_binom
               + n * (math.log(abs(zeta)) - 0.5 * math.log(N)))
    phase = np.exp(1j * n * np.angle(zeta))
    amps[:] = np.exp(log_mag) * phase
    return SpinCoherent(zeta, N, amps)


def single_qubit_attractor(sign, theta):
    """``(e^{-iθ}|e⟩ ± i|g⟩)/√2`` as an ``(e, g)`` amplitude pair."""
    s = _sign(sign)
    return np.array([np.exp(-1j * theta), s * 1j], dtype=complex) * SQRT_HALF


def two_qubit_attractor(sign, phase):
    """Product attractor ``(e^{-2iφ}|ee⟩ ± i e^{-iφ}(|eg⟩+|ge⟩) - |gg⟩)/2``.

    ``phase`` is the field phase θ in the field model and the spin
    coherent-state phase φ in the composite-spin model.
    """
    s = _sign(sign)
    side = s * 1j * np.exp(-1j * phase)
    return TwoQubitState(0.5 * np.exp(-2j * phase), 0.5 * side, 0.5 * side, -0.5)


def basin_state(a, theta):
    """In-basin initial state ``a(e^{-iθ}|ee⟩ + e^{iθ}|gg⟩) + √(1/2-|a|²)(|eg⟩+|ge⟩)``."""
    a = complex(a)
    r2 = abs(a) ** 2
    if r2 > 0.5 + 2e-12 * SQRT_HALF:
        raise DomainError(f"|a| = {abs(a):.12g} exceeds 1/sqrt(2)")
    # factored so that |a| = 1/sqrt(2) gives b = 0 exactly
    b = math.sqrt(max(0.0, (SQRT_HALF - abs(a)) * (SQRT_HALF + abs(a))))
    return TwoQubitState(a * np.exp(-1j * theta), b, b, a * np.exp(1j * theta))


def _sign(sign):
    if sign in (+1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise DomainError(f"sign must be +1/-1 or '+'/'-', got {sign!r}")
