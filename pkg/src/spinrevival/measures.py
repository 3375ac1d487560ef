"""Diagnostics of the two-qubit reduced state.

Every function accepts a single density matrix of shape ``(4, 4)`` or a
stack of shape ``(..., 4, 4)`` and returns correspondingly shaped results.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidDensityError, StructuralError
from .statekit import SQRT_HALF, basin_state, two_qubit_attractor

NEGATIVE_EIG_TOL = 1e-8

_SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]])
SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class DiagnosticsRecord:
    t: float
    p_ee: float
    s_lin: float
    tangle: float
    concurrence: float
    p_att_plus: float
    p_att_minus: float


def reduced_qubit_density(psi, spec):
    """Trace the mode out of ``psi`` (shape ``(dim,)`` or ``(T, dim)``).

    The qubit factors are the slowest indices, so the reduction is
    ``M M†`` with ``M`` the state reshaped to ``(qubit_dim, mode_dim)``.
    """
    psi = np.asarray(psi)
    qd, md = spec.qubit_dim, spec.mode_dim
    if psi.shape[-1] != qd * md:
        raise StructuralError(
            f"state length {psi.shape[-1]} does not match dims {spec.dims}")
    m = psi.reshape(psi.shape[:-1] + (qd, md))
    return np.einsum("...in,...jn->...ij", m, m.conj())


def reduced_two_qubit_density(psi, spec):
    if spec.m_q != 2:
        raise StructuralError(f"expected two qubits, the space has {spec.m_q}")
    return reduced_qubit_density(psi, spec)


def reduced_mode_density(psi, spec):
    psi = np.asarray(psi)
    m = psi.reshape(psi.shape[:-1] + (spec.qubit_dim, spec.mode_dim))
    return np.einsum("...qi,...qj->...ij", m, m.conj())


def purity(rho):
    rho = np.asarray(rho)
    return np.sum(np.abs(rho) ** 2, axis=(-2, -1))


def linear_entropy(rho):
    """``1 - Tr ρ²``; uses Hermiticity, ``Tr ρ² = Σ |ρ_ij|²``."""
    return 1.0 - purity(rho)


def concurrence_and_tangle(rho):
    """Wootters concurrence ``C`` and tangle ``τ = C²``.

    The square roots ``λ_i`` of the eigenvalues of ``ρ ρ̃`` are obtained as
    the singular values of ``Wᵀ (σ_y⊗σ_y) W`` where ``ρ = W W†``. This is
    algebraically the same spectrum but does not square and re-root it, so
    vanishing ``λ_i`` come out at ~1e-16 rather than ~1e-8.

    Raises
    ------
    InvalidDensityError
        If ``ρ`` has an eigenvalue below ``-1e-8``. Eigenvalues in
        ``[-1e-8, 0)`` are treated as zero.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise StructuralError(f"expected 4x4 density matrices, got {rho.shape}")
    p, v = np.linalg.eigh(rho)
    if p.size and p.min() < -NEGATIVE_EIG_TOL:
        raise InvalidDensityError(
            f"density matrix has eigenvalue {p.min():.3e} below -{NEGATIVE_EIG_TOL}")
    w = v * np.sqrt(np.clip(p, 0.0, None))[..., None, :]
    t = np.swapaxes(w, -2, -1) @ SPIN_FLIP @ w
    s = np.linalg.svd(t, compute_uv=False)
    c = np.maximum(0.0, s[..., 0] - s[..., 1] - s[..., 2] - s[..., 3])
    return c, c * c


def p_ee(rho):
    """Population of ``|ee⟩``."""
    return np.real(np.asarray(rho)[..., 0, 0])


def attractor_probability(rho, sign, phase):
    """``⟨ψ^±_att(phase)| ρ |ψ^±_att(phase)⟩``; ``phase`` may be an array that
    broadcasts against the leading dimensions of ``rho``."""
    rho = np.asarray(rho)
    phase = np.asarray(phase, dtype=float)
    if phase.ndim == 0:
        vec = two_qubit_attractor(sign, float(phase)).amplitudes
        return np.real(np.einsum("i,...ij,j->...", vec.conj(), rho, vec))
    s = 1.0 if sign in (+1, "+") else -1.0
    two_qubit_attractor(sign, 0.0)  # validates sign
    side = 0.5j * s * np.exp(-1j * phase)
    vecs = np.stack([0.5 * np.exp(-2j * phase), side, side,
                     np.full(phase.shape, -0.5 + 0j)], axis=-1)
    return np.real(np.einsum("...i,...ij,...j->...", vecs.conj(), rho, vecs))


def pure_state_projector(amplitudes):
    v = np.asarray(amplitudes, dtype=complex)
    return np.einsum("...i,...j->...ij", v, v.conj())


def basin_tangle(a, theta=0.0):
    """Tangle of the in-basin pure state with parameter ``a`` (array allowed)."""
    a = np.asarray(a, dtype=complex)
    if np.any(np.abs(a) > SQRT_HALF + 1e-12):
        raise DomainError("basin parameter |a| must not exceed 1/sqrt(2)")
    flat = a.reshape(-1)
    vecs = np.stack([basin_state(x, theta).amplitudes for x in flat]) if flat.size else \
        np.zeros((0, 4), dtype=complex)
    _, tau = concurrence_and_tangle(pure_state_projector(vecs))
    return tau.reshape(a.shape)


def basin_grid(r_points=75, chi_points=144):
    """Polar grid over the basin disc.

    Radii are uniform in ``|a|²`` on ``[0, 1/2]`` (endpoints included), so
    an odd ``r_points`` always contains ``|a| = 1/2`` exactly; angles are
    ``2π k / chi_points`` for ``k < chi_points``.
    """
    if r_points < 2 or chi_points < 1:
        raise DomainError("basin grid needs r_points >= 2 and chi_points >= 1")
    r = np.sqrt(np.linspace(0.0, 0.5, r_points))
    r[-1] = SQRT_HALF
    chi = 2.0 * np.pi * np.arange(chi_points) / chi_points
    return r, chi


def basin_scan(r_points=75, chi_points=144, theta=0.0):
    """Tangle on the basin grid; returns ``(r, chi, tau)`` with
    ``tau.shape == (r_points, chi_points)``."""
    r, chi = basin_grid(r_points, chi_points)
    a = r[:, None] * np.exp(1j * chi[None, :])
    return r, chi, basin_tangle(a, theta)


def diagnostics(times, rho, phase, omega=0.0):
    """Column arrays of every plotted diagnostic.

    The attractor phase co-rotates with the mode: at time ``t`` the
    reference attractor uses ``phase + omega * t``, which is the lab-frame
    image of the fixed rotating-frame attractor.
    """
    times = np.asarray(times, dtype=float)
    c, tau = concurrence_and_tangle(rho)
    moving = phase + omega * times
    return {
        "t": times,
        "p_ee": p_ee(rho),
        "s_lin": linear_entropy(rho),
        "tangle": tau,
        "concurrence": c,
        "p_att_plus": attractor_probability(rho, +1, moving),
        "p_att_minus": attractor_probability(rho, -1, moving),
    }
