"""Density matrices on composite systems.

States are immutable: the stored matrix is a read-only copy. Subsystems are
addressed by their position in ``dims`` (0 is the leftmost tensor factor).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubsystemIndex,
    DimensionMismatch,
    EigenDecompositionFailure,
    NotHermitian,
    NotPositive,
    TraceNotOne,
)

HERMITICITY_TOL = 1e-9
PSD_TOL = 1e-9
TRACE_TOL = 1e-9
EIGEN_CLIP = 1e-12
NORM_TOL = 1e-10


def _frozen(array):
    out = np.array(array, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


def _eigvalsh(matrix):
    try:
        return np.linalg.eigvalsh(matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenDecompositionFailure(str(exc)) from exc


def _eigh(matrix):
    try:
        return np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenDecompositionFailure(str(exc)) from exc


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state.

    Build instances with :func:`validate_density` (or :func:`density`); the
    constructor itself performs no checks.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]
    hermiticity_tol: float = HERMITICITY_TOL
    psd_tol: float = PSD_TOL
    trace_tol: float = TRACE_TOL

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return _eigvalsh(self.matrix)

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector with a subsystem layout."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> DensityMatrix:
        psi = self.amplitudes
        return DensityMatrix(_frozen(np.outer(psi, psi.conj())), self.dims)


def _check_layout(dims, total):
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionMismatch(f"layout must be a non-empty list of positive ints, got {dims}")
    if int(np.prod(dims)) != total:
        raise DimensionMismatch(f"layout {dims} has total {int(np.prod(dims))}, matrix is {total}x{total}")
    return dims


def validate_density(
    candidate,
    dims: Sequence[int] | None = None,
    hermiticity_tol: float = HERMITICITY_TOL,
    psd_tol: float = PSD_TOL,
    trace_tol: float = TRACE_TOL,
) -> DensityMatrix:
    """Check that ``candidate`` is a density matrix and wrap it.

    Raises :class:`NotHermitian`, :class:`NotPositive` (carrying the most
    negative eigenvalue), :class:`TraceNotOne` or :class:`DimensionMismatch`.
    """
    m = np.asarray(candidate, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionMismatch("matrix has non-finite entries")
    dims = _check_layout(dims if dims is not None else (m.shape[0],), m.shape[0])

    asym = np.max(np.abs(m - m.conj().T))
    if asym > hermiticity_tol:
        raise NotHermitian(f"max |M - M^dagger| = {asym:.3g} exceeds {hermiticity_tol:g}")
    m = 0.5 * (m + m.conj().T)
    evals = _eigvalsh(m)
    if evals[0] < -psd_tol:
        raise NotPositive(f"most negative eigenvalue {evals[0]:.6g} below -{psd_tol:g}", evals[0])
    tr = np.trace(m).real
    if abs(tr - 1.0) > trace_tol:
        raise TraceNotOne(f"trace {tr:.12g} differs from 1 by more than {trace_tol:g}")

    rho = DensityMatrix(_frozen(m), dims, hermiticity_tol, psd_tol, trace_tol)
    rho.__dict__["eigenvalues"] = evals
    return rho


def density(matrix, dims=None, **tolerances) -> DensityMatrix:
    """Shorthand for :func:`validate_density`."""
    return validate_density(matrix, dims, **tolerances)


def pure_state(vector, dims=None) -> PureState:
    """Wrap a state vector, checking its norm is 1 within 1e-10."""
    psi = np.asarray(vector, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise TraceNotOne(f"state vector norm {norm:.12g} is not 1")
    dims = _check_layout(dims if dims is not None else (psi.shape[0],), psi.shape[0])
    out = psi.copy()
    out.setflags(write=False)
    return PureState(out, dims)


def ket_density(vector, dims=None) -> DensityMatrix:
    """Projector onto a normalized ket, as a validated state."""
    psi = pure_state(vector, dims)
    return validate_density(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.dims)


def entropy_of_spectrum(eigenvalues, eigen_clip: float = EIGEN_CLIP) -> float:
    """Shannon entropy in bits of a spectrum, ignoring entries <= ``eigen_clip``."""
    lam = np.asarray(eigenvalues, dtype=float)
    lam = lam[lam > eigen_clip]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho: DensityMatrix, eigen_clip: float = EIGEN_CLIP) -> float:
    """S(rho) = -tr(rho log2 rho), in bits."""
    s = entropy_of_spectrum(rho.eigenvalues, eigen_clip)
    return s if s > 0.0 else 0.0


def tensor_product(*states: DensityMatrix) -> DensityMatrix:
    """Kronecker product of states; layouts are concatenated."""
    if not states:
        raise DimensionMismatch("tensor_product needs at least one state")
    matrix = states[0].matrix
    dims = tuple(states[0].dims)
    for s in states[1:]:
        matrix = np.kron(matrix, s.matrix)
        dims = dims + tuple(s.dims)
    return DensityMatrix(_frozen(matrix), dims)


def _normalize_indices(indices, n_parties) -> tuple[int, ...]:
    if isinstance(indices, (int, np.integer)):
        indices = (indices,)
    idx = tuple(int(i) for i in indices)
    for i in idx:
        if not 0 <= i < n_parties:
            raise BadSubsystemIndex(f"subsystem {i} out of range for {n_parties} parties")
    if len(set(idx)) != len(idx):
        raise BadSubsystemIndex(f"repeated subsystem index in {idx}")
    return tuple(sorted(idx))


def reduce_matrix(matrix: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Partial trace of a raw matrix, keeping ``keep`` (sorted) in layout order."""
    dims = tuple(dims)
    n = len(dims)
    keep = tuple(keep)
    t = matrix.reshape(dims + dims)
    # bra axes of traced parties are paired with their ket axes
    ket = list(range(n))
    bra = [n + i if i in keep else i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(t, ket + bra, out)
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    return reduced.reshape(d_keep, d_keep)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the subsystems listed in ``keep``.

    The kept subsystems appear in layout order regardless of the order given.
    """
    keep = _normalize_indices(keep, rho.n_parties)
    if not keep:
        raise BadSubsystemIndex("keep must name at least one subsystem")
    if len(keep) == rho.n_parties:
        return rho
    reduced = reduce_matrix(rho.matrix, rho.dims, keep)
    reduced = 0.5 * (reduced + reduced.conj().T)
    return DensityMatrix(_frozen(reduced), tuple(rho.dims[i] for i in keep),
                         rho.hermiticity_tol, rho.psd_tol, rho.trace_tol)


def complement(indices, n_parties) -> tuple[int, ...]:
    idx = set(_normalize_indices(indices, n_parties))
    return tuple(i for i in range(n_parties) if i not in idx)


def purify(rho: DensityMatrix) -> PureState:
    """Purification on ``rho`` (x) ancilla, the ancilla having the full dimension of rho.

    Built as sum_i sqrt(lambda_i) |e_i>|i> with eigenvalues in descending
    order; each eigenvector is rephased so its first nonzero amplitude is
    real and non-negative. The ancilla is appended as the last subsystem.
    """
    evals, evecs = _eigh(rho.matrix)
    order = np.argsort(-evals, kind="stable")
    evals = np.clip(evals[order], 0.0, None)
    evecs = evecs[:, order]
    for j in range(evecs.shape[1]):
        col = evecs[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            phase = col[nz[0]] / abs(col[nz[0]])
            evecs[:, j] = col / phase
    d = rho.dim
    psi = np.zeros(d * d, dtype=complex)
    for j in range(d):
        if evals[j] > 0.0:
            psi += np.sqrt(evals[j]) * np.kron(evecs[:, j], np.eye(d)[j])
    psi /= np.linalg.norm(psi)
    psi.setflags(write=False)
    return PureState(psi, tuple(rho.dims) + (d,))


def is_pure(rho: DensityMatrix, tol: float = 1e-9) -> bool:
    return bool(abs(np.trace(rho.matrix @ rho.matrix).real - 1.0) <= tol)


def maximally_mixed(d: int) -> DensityMatrix:
    return validate_density(np.eye(d) / d, (d,))


def basis_ket(index: int, d: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[index] = 1.0
    return v


def bell_state() -> DensityMatrix:
    """|Phi+> = (|00> + |11>)/sqrt(2) on two qubits."""
    psi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return ket_density(psi, (2, 2))


def ghz_state(n: int = 3) -> DensityMatrix:
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return ket_density(psi, (2,) * n)


def product_ket(*indices_and_dims) -> DensityMatrix:
    """Computational-basis product state, e.g. ``product_ket((0, 2), (1, 2))`` is |01>."""
    psi = np.ones(1, dtype=complex)
    dims = []
    for i, d in indices_and_dims:
        psi = np.kron(psi, basis_ket(i, d))
        dims.append(d)
    return ket_density(psi, dims)
