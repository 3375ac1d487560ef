"""Hamiltonians for qubits coupled to a field mode or to a composite spin,
and exact time evolution of the full system.

The Hilbert space is ``(qubit 1) ⊗ ... ⊗ (qubit M) ⊗ (mode)``, each qubit
ordered ``(e, g)`` and the mode indexed by its excitation number: photon
number for the field, ``n = m + N/2`` on the ``j = N/2`` Dicke ladder for the
composite spin. Energies are in units of the coupling with ``ħ = 1``.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from .errors import DomainError, StructuralError
from .qalg import BlockEigenSystem, eigh_system

FIELD = "field"
SPIN = "spin"

SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]])   # |e><g|
SIGMA_MINUS = SIGMA_PLUS.T                          # |g><e|
EXCITED = np.array([[1.0, 0.0], [0.0, 0.0]])        # |e><e|


@dataclass(frozen=True)
class HilbertSpec:
    """Factor dimensions, qubits first (slowest), mode last (fastest)."""

    m_q: int
    mode_dim: int

    @property
    def dims(self):
        return (2,) * self.m_q + (self.mode_dim,)

    @property
    def qubit_dim(self):
        return 2 ** self.m_q

    @property
    def dim(self):
        return self.qubit_dim * self.mode_dim

    def excitation_labels(self):
        """Total excitation number of every basis state."""
        # Qubit configuration index q has bit i (from the left) = 1 for g.
        q = np.arange(self.qubit_dim)
        excited = np.zeros(self.qubit_dim, dtype=np.int64)
        for i in range(self.m_q):
            bit = (q >> (self.m_q - 1 - i)) & 1
            excited += 1 - bit
        return (excited[:, None] + np.arange(self.mode_dim)[None, :]).reshape(-1)


@dataclass(frozen=True)
class ModelParams:
    """Parameters of either Hamiltonian.

    ``couplings`` are the nominal λ_i; the first qubit's coupling is shifted
    by ``delta`` (λ₁ = λ₂ + δ when the nominal values agree).
    """

    model_kind: str
    omega: float = 1.0
    qubit_freqs: tuple = (1.0, 1.0)
    couplings: tuple = (1.0, 1.0)
    n_max: int = None
    n_spins: int = None
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "qubit_freqs", tuple(float(x) for x in self.qubit_freqs))
        object.__setattr__(self, "couplings", tuple(float(x) for x in self.couplings))
        if self.model_kind not in (FIELD, SPIN):
            raise DomainError(f"model_kind must be 'field' or 'spin', got {self.model_kind!r}")
        if len(self.qubit_freqs) != len(self.couplings) or not self.couplings:
            raise DomainError("qubit_freqs and couplings must be non-empty and of equal length")
        if self.omega <= 0 or any(w <= 0 for w in self.qubit_freqs):
            raise DomainError("omega and qubit frequencies must be positive")
        if self.model_kind == FIELD:
            if self.n_max is None or self.n_max < 1:
                raise DomainError("field model needs n_max >= 1")
        elif self.n_spins is None or self.n_spins < 1:
            raise DomainError("spin model needs n_spins >= 1")

    @property
    def m_q(self):
        return len(self.couplings)

    @property
    def mode_dim(self):
        return self.n_max + 1 if self.model_kind == FIELD else self.n_spins + 1

    @property
    def hilbert(self):
        return HilbertSpec(self.m_q, self.mode_dim)

    @property
    def effective_couplings(self):
        lam = list(self.couplings)
        lam[0] += self.delta
        return tuple(lam)

    def with_delta(self, delta):
        return replace(self, delta=float(delta))

    @classmethod
    def resonant(cls, model_kind, lam=1.0, omega=1.0, m_q=2, **kw):
        """Identical qubits at resonance with the mode, uniform coupling."""
        return cls(model_kind, omega=omega, qubit_freqs=(omega,) * m_q,
                   couplings=(lam,) * m_q, **kw)


def _embed(ops):
    out = ops[0]
    for op in ops[1:]:
        out = sp.kron(out, op, format="csr")
    return sp.csr_matrix(out)


def _qubit_op(op, i, m_q, mode_dim, mode_op=None):
    ops = [sp.identity(2, format="csr")] * m_q
    ops = list(ops)
    ops[i] = sp.csr_matrix(op)
    ops.append(sp.identity(mode_dim, format="csr") if mode_op is None else sp.csr_matrix(mode_op))
    return _embed(ops)


def _mode_op(op, m_q):
    return _embed([sp.identity(2 ** m_q, format="csr"), sp.csr_matrix(op)])


def annihilation(n_max):
    """Truncated ``a`` on ``|0⟩..|n_max⟩``."""
    return sp.diags(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1, format="csr")


def dicke_raising(n_spins):
    """``J⁺`` on the ``j = N/2`` ladder indexed by ``n = m + N/2``."""
    N = n_spins
    n = np.arange(N, dtype=float)
    # <n+1|J+|n> = sqrt(j(j+1) - m(m+1)) = sqrt((N - n)(n + 1))
    return sp.diags(np.sqrt((N - n) * (n + 1.0)), -1, format="csr")


def dicke_jz(n_spins):
    N = n_spins
    return sp.diags(np.arange(N + 1, dtype=float) - N / 2.0, 0, format="csr")


def _assemble(p, mode_number, lower, raise_, scale):
    m_q, d = p.m_q, p.mode_dim
    h = p.omega * _mode_op(mode_number, m_q)
    for i, (w, lam) in enumerate(zip(p.qubit_freqs, p.effective_couplings)):
        h = h + 0.5 * w * _qubit_op(SIGMA_Z, i, m_q, d)
        h = h + scale * lam * (_qubit_op(SIGMA_MINUS, i, m_q, d, raise_)
                               + _qubit_op(SIGMA_PLUS, i, m_q, d, lower))
    return sp.csr_matrix(h, dtype=complex)


def build_field_hamiltonian(p, sparse=False):
    """``ω a†a + ½ Σ Ω_i σᶻ_i + Σ λ_i (a† σ⁻_i + a σ⁺_i)`` on the truncated space."""
    if p.model_kind != FIELD:
        raise DomainError("build_field_hamiltonian needs a field-model ModelParams")
    a = annihilation(p.n_max)
    h = _assemble(p, a.T @ a, a, a.T, 1.0)
    return h if sparse else h.toarray()


def build_spin_hamiltonian(p, sparse=False):
    """``ω (Jᶻ + N/2) + ½ Σ Ω_i σᶻ_i + N^{-1/2} Σ λ_i (J⁺σ⁻_i + J⁻σ⁺_i)`` on the
    symmetric ``j = N/2`` sector."""
    if p.model_kind != SPIN:
        raise DomainError("build_spin_hamiltonian needs a spin-model ModelParams")
    N = p.n_spins
    jp = dicke_raising(N)
    number = dicke_jz(N) + (N / 2.0) * sp.identity(N + 1, format="csr")
    h = _assemble(p, number, jp.T.tocsr(), jp, 1.0 / math.sqrt(N))
    return h if sparse else h.toarray()


def build_hamiltonian(p, sparse=False):
    if p.model_kind == FIELD:
        return build_field_hamiltonian(p, sparse=sparse)
    return build_spin_hamiltonian(p, sparse=sparse)


def excitation_operator(p):
    """Conserved excitation number: mode number plus excited qubits."""
    return sp.diags(p.hilbert.excitation_labels().astype(float), 0, format="csr")


def initial_state(qubits, mode):
    """Product state ``|qubits⟩ ⊗ |mode⟩`` as a flat amplitude vector."""
    q = np.asarray(getattr(qubits, "amplitudes", qubits), dtype=complex).reshape(-1)
    m = np.asarray(getattr(mode, "amplitudes", mode), dtype=complex).reshape(-1)
    return np.kron(q, m)


def _check_grid(grid):
    grid = np.asarray(grid, dtype=float).reshape(-1)
    if grid.size == 0:
        raise StructuralError("time grid is empty")
    if grid[0] != 0.0 or np.any(np.diff(grid) <= 0):
        raise StructuralError("time grid must start at 0 and increase strictly")
    return grid


def evolve_series(h, psi0, grid):
    """Dense exact evolution; row ``k`` of the result is ``ψ(grid[k])``."""
    grid = _check_grid(grid)
    h = h.toarray() if sp.issparse(h) else np.asarray(h)
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (h.shape[0],):
        raise StructuralError(f"state dimension {psi0.shape} does not match H {h.shape}")
    out = eigh_system(h).propagate(psi0, grid)
    out[0] = psi0
    return out


@dataclass
class Propagator:
    """Reusable propagator for one parameter set.

    ``method="blocks"`` diagonalizes each excitation-number block separately;
    ``method="dense"`` diagonalizes the whole matrix. Both give the same
    ``ψ(t)``; the block path scales to large ``N``.
    """

    params: ModelParams
    method: str = "blocks"
    _system: object = field(default=None, repr=False)

    def __post_init__(self):
        h = build_hamiltonian(self.params, sparse=True)
        if self.method == "blocks":
            self._system = BlockEigenSystem(h, self.params.hilbert.excitation_labels())
        elif self.method == "dense":
            self._system = eigh_system(h.toarray())
        else:
            raise DomainError(f"unknown propagation method {self.method!r}")

    def evolve(self, psi0, grid):
        grid = _check_grid(grid)
        out = self._system.propagate(psi0, grid)
        out[0] = psi0
        return out

    def iter_chunks(self, psi0, grid, chunk=256):
        """Yield ``(slice, states)`` pairs covering ``grid`` in order."""
        grid = _check_grid(grid)
        psi0 = np.asarray(psi0, dtype=complex)
        for start in range(0, grid.shape[0], chunk):
            sl = slice(start, min(start + chunk, grid.shape[0]))
            states = self._system.propagate(psi0, grid[sl])
            if start == 0:
                states[0] = psi0
            yield sl, states
