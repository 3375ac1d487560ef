"""Dense complex linear algebra: Kronecker products, partial traces and
exact propagation of time-independent Hamiltonians.

States are 1-D complex arrays, operators are 2-D complex arrays. Composite
spaces are ordered with the leftmost factor varying slowest, which is the
``np.kron`` convention.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.sparse as sp

from .errors import NumericalError, StructuralError

HERMITIAN_TOL = 1e-12
EIG_RECONSTRUCT_TOL = 1e-10


def tensor_product(a, b):
    """Kronecker product ``a ⊗ b`` (left factor slowest)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.size == 0 or b.size == 0:
        raise StructuralError("tensor_product operands must be non-empty")
    return np.kron(a, b)


def tensor(*ops):
    """Kronecker product of several operators or vectors, left to right."""
    if not ops:
        raise StructuralError("tensor needs at least one operand")
    return reduce(tensor_product, ops)


def _dims_of(spec):
    dims = getattr(spec, "dims", spec)
    return tuple(int(d) for d in dims)


def partial_trace(rho, spec, keep):
    """Reduce ``rho`` to the subsystems listed in ``keep``.

    Parameters
    ----------
    rho : (D, D) array
        Density matrix over the composite space.
    spec : sequence of int, or object with a ``dims`` attribute
        Factor dimensions, slowest first. ``prod(dims)`` must equal ``D``.
    keep : int or sequence of int
        Factor indices to keep. The kept factors appear in ascending order.
    """
    dims = _dims_of(spec)
    rho = np.asarray(rho)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise StructuralError(
            f"rho has shape {rho.shape} but the space {dims} has dimension {total}")
    keep = sorted({keep} if np.isscalar(keep) else set(keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise StructuralError(f"keep={keep} is out of range for {len(dims)} factors")

    n = len(dims)
    traced = [i for i in range(n) if i not in keep]
    tensor_form = rho.reshape(dims + dims)
    # Contract each traced factor's row index with its column index.
    letters = "abcdefghijklmnopqrstuvwxyz"
    if 2 * n > len(letters):
        raise StructuralError("too many factors for partial_trace")
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for i in traced:
        col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, tensor_form)
    kd = int(np.prod([dims[i] for i in keep])) if keep else 1
    return reduced.reshape(kd, kd)


def hermitian_defect(m):
    """Largest entry of ``|M - M†|``."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass(frozen=True)
class EigenSystem:
    """Spectral decomposition ``H = V diag(E) V†`` with ascending ``E``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def propagate(self, psi0, times):
        """Return an array of shape ``(len(times), dim)`` with ``ψ(t)`` rows."""
        psi0 = np.asarray(psi0, dtype=complex)
        if psi0.shape != (self.dim,):
            raise StructuralError(
                f"state has shape {psi0.shape}, expected ({self.dim},)")
        times = np.asarray(times, dtype=float).reshape(-1)
        coeffs = self.eigenvectors.conj().T @ psi0
        phases = np.exp(-1j * np.outer(times, self.eigenvalues))
        return (phases * coeffs) @ self.eigenvectors.T


def eigh_system(h, check=True):
    """Diagonalize a Hermitian matrix.

    Raises
    ------
    NumericalError
        If ``h`` is not Hermitian to 1e-12, or the decomposition fails to
        reproduce ``h`` to 1e-10 per entry. The message reports the residual.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise StructuralError(f"expected a square matrix, got shape {h.shape}")
    defect = hermitian_defect(h)
    if defect > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(h), initial=0.0))):
        raise NumericalError(f"matrix is not Hermitian: max|H - H†| = {defect:.3e}")
    try:
        evals, evecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    system = EigenSystem(evals, evecs)
    if check:
        residual = float(np.max(np.abs(system.reconstruct() - h), initial=0.0))
        scale = max(1.0, float(np.max(np.abs(evals), initial=0.0)))
        if residual > EIG_RECONSTRUCT_TOL * scale:
            raise NumericalError(
                f"eigendecomposition residual {residual:.3e} exceeds tolerance")
    return system


def eigh_propagate(h, psi0, times):
    """Evolve ``psi0`` under ``exp(-i h t)`` for every ``t`` in ``times``.

    One eigendecomposition is shared by all times. Returns a
    ``(len(times), dim)`` array.
    """
    return eigh_system(h).propagate(psi0, times)


class BlockEigenSystem:
    """Eigendecomposition of a Hamiltonian that is block diagonal with respect
    to an integer label (typically a conserved excitation number).

    Blocks are padded to a common size and diagonalized in one batched
    ``eigh`` call. Padding rows carry zero amplitude for every state that
    lives on the real basis, so they never contribute to ``ψ(t)``.
    """

    def __init__(self, h, labels):
        labels = np.asarray(labels).reshape(-1)
        dim = labels.shape[0]
        if h.shape != (dim, dim):
            raise StructuralError(
                f"Hamiltonian shape {h.shape} does not match {dim} labels")
        order = np.argsort(labels, kind="stable")
        uniq, starts, counts = np.unique(
            labels[order], return_index=True, return_counts=True)
        width = int(counts.max())
        nblocks = uniq.shape[0]

        # index[b, k] = basis index of the k-th member of block b, or -1.
        index = np.full((nblocks, width), -1, dtype=np.int64)
        for b, (s, c) in enumerate(zip(starts, counts)):
            index[b, :c] = order[s:s + c]
        valid = index >= 0

        hs = sp.csr_matrix(h)
        blocks = np.zeros((nblocks, width, width), dtype=complex)
        for b, c in enumerate(counts):
            idx = index[b, :c]
            blocks[b, :c, :c] = hs[idx][:, idx].toarray()

        off_block = hs.copy().tocoo()
        same = labels[off_block.row] == labels[off_block.col]
        leak = np.abs(off_block.data[~same])
        if leak.size and leak.max() > HERMITIAN_TOL:
            raise NumericalError(
                f"Hamiltonian couples different labels (max element {leak.max():.3e})")
        defect = np.max(np.abs(blocks - blocks.conj().transpose(0, 2, 1)), initial=0.0)
        if defect > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(blocks), initial=0.0))):
            raise NumericalError(f"matrix is not Hermitian: max|H - H†| = {defect:.3e}")

        evals, evecs = np.linalg.eigh(blocks)
        self.dim = dim
        self.labels = uniq
        self.index = index
        self.valid = valid
        self.eigenvalues = evals
        self.eigenvectors = evecs

    def spectrum(self):
        """All eigenvalues belonging to real (non-padding) states, ascending."""
        # Padding slots are decoupled zero rows; each contributes one 0
        # eigenvalue which is dropped here by counting, not by value.
        out = []
        for b in range(self.index.shape[0]):
            c = int(self.valid[b].sum())
            e = self.eigenvalues[b]
            if c == e.shape[0]:
                out.append(e)
                continue
            # The eigenvectors with support on the real slots are the ones to keep.
            weight = np.sum(np.abs(self.eigenvectors[b][:c, :]) ** 2, axis=0)
            out.append(e[np.argsort(-weight, kind="stable")[:c]])
        return np.sort(np.concatenate(out))

    def propagate(self, psi0, times):
        """Same contract as :meth:`EigenSystem.propagate`."""
        psi0 = np.asarray(psi0, dtype=complex)
        if psi0.shape != (self.dim,):
            raise StructuralError(f"state has shape {psi0.shape}, expected ({self.dim},)")
        times = np.asarray(times, dtype=float).reshape(-1)
        padded = np.where(self.valid, psi0[np.where(self.valid, self.index, 0)], 0.0)
        coeffs = np.einsum("bji,bj->bi", self.eigenvectors.conj(), padded)
        phases = np.exp(-1j * times[:, None, None] * self.eigenvalues[None])
        blocks_t = np.einsum("bij,tbj->tbi", self.eigenvectors, phases * coeffs[None])
        out = np.zeros((times.shape[0], self.dim), dtype=complex)
        out[:, self.index[self.valid]] = blocks_t[:, self.valid]
        return out
