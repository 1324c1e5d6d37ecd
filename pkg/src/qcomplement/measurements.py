"""Rank-1 projective measurements and their action on states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotOrthonormal, NotPrime, NotUnitary
from .state import DensityMatrix, _frozen, _normalize_indices, reduce_matrix

ORTHONORMAL_TOL = 1e-10
UNITARY_TOL = 1e-9
ZERO_PROBABILITY = 1e-12


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Orthonormal basis {|v_i>}; row ``i`` of ``vectors`` holds |v_i>."""

    vectors: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def projectors(self) -> np.ndarray:
        """Stack of Pi_i = |v_i><v_i| with shape (d, d, d)."""
        v = self.vectors
        return np.einsum("ia,ib->iab", v, v.conj())

    def __repr__(self):
        return f"ProjectiveMeasurement(dim={self.dim}, label={self.label!r})"


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """Result of measuring one subsystem without reading the outcome.

    ``conditional_states[i]`` is ``None`` when ``probabilities[i]`` is below
    1e-12; such outcomes contribute nothing to averaged entropies.
    """

    probabilities: np.ndarray
    conditional_states: tuple
    post_joint: DensityMatrix


def measurement(vectors, label: str = "", tol: float = ORTHONORMAL_TOL) -> ProjectiveMeasurement:
    """Build a measurement from basis vectors (one per row), checking orthonormality."""
    v = np.asarray(vectors, dtype=complex)
    if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
        raise DimensionMismatch(f"need d vectors of length d, got shape {v.shape}")
    gram = v.conj() @ v.T
    err = np.max(np.abs(gram - np.eye(v.shape[0])))
    if err > tol:
        raise NotOrthonormal(f"max |<v_i|v_j> - delta_ij| = {err:.3g} exceeds {tol:g}")
    return ProjectiveMeasurement(_frozen(v), label)


def standard_basis(d: int) -> ProjectiveMeasurement:
    if d < 1:
        raise DimensionMismatch(f"dimension must be positive, got {d}")
    return ProjectiveMeasurement(_frozen(np.eye(d)), "Z" if d == 2 else f"std{d}")


def basis_from_unitary(u, label: str = "U") -> ProjectiveMeasurement:
    """Measurement whose basis vectors are the columns of the unitary ``u``."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got shape {u.shape}")
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if err > UNITARY_TOL:
        raise NotUnitary(f"max |U^dagger U - I| = {err:.3g} exceeds {UNITARY_TOL:g}")
    return ProjectiveMeasurement(_frozen(u.T), label)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def pauli_bases() -> list[ProjectiveMeasurement]:
    """Eigenbases of Z, X and Y for a qubit."""
    s = 1 / np.sqrt(2)
    z = np.eye(2)
    x = np.array([[s, s], [s, -s]])
    y = np.array([[s, 1j * s], [s, -1j * s]])
    return [ProjectiveMeasurement(_frozen(b), lab) for b, lab in ((z, "Z"), (x, "X"), (y, "Y"))]


def mub_family(d: int) -> list[ProjectiveMeasurement]:
    """Complete set of d + 1 mutually unbiased bases for prime ``d``.

    For d = 2 this is [Z, X, Y]. For odd primes it is the standard basis
    followed by the d quadratic-phase bases with components
    ``w**(k*j**2 + i*j) / sqrt(d)``, ``w = exp(2 pi i / d)``, k = 0..d-1.
    """
    if not is_prime(d):
        raise NotPrime(f"mub_family only supports prime dimensions, got {d}")
    if d == 2:
        return pauli_bases()
    j = np.arange(d)
    family = [standard_basis(d)]
    for k in range(d):
        phases = (k * j[None, :] ** 2 + j[:, None] * j[None, :]) % d
        vecs = np.exp(2j * np.pi * phases / d) / np.sqrt(d)
        family.append(ProjectiveMeasurement(_frozen(vecs), f"F{k}"))
    return family


def overlap_matrix(m1: ProjectiveMeasurement, m2: ProjectiveMeasurement) -> np.ndarray:
    """c[i, j] = |<v_i^(1)|v_j^(2)>|^2, i.e. tr(Pi_i Pi'_j)."""
    if m1.dim != m2.dim:
        raise DimensionMismatch(f"measurement dims differ: {m1.dim} vs {m2.dim}")
    return np.abs(m1.vectors.conj() @ m2.vectors.T) ** 2


def _embed(op: np.ndarray, dims, target: int) -> np.ndarray:
    left = int(np.prod(dims[:target]))
    right = int(np.prod(dims[target + 1 :]))
    return np.kron(np.kron(np.eye(left), op), np.eye(right))


def _target(rho: DensityMatrix, m: ProjectiveMeasurement, target: int) -> int:
    (t,) = _normalize_indices(target, rho.n_parties)
    if rho.dims[t] != m.dim:
        raise DimensionMismatch(
            f"measurement of dim {m.dim} cannot act on subsystem {t} of dim {rho.dims[t]}")
    return t


def dephase(rho: DensityMatrix, m: ProjectiveMeasurement, target: int | None = None) -> DensityMatrix:
    """Outcome-averaged post-measurement state sum_i Pi_i rho Pi_i.

    With ``target=None`` the measurement must act on the whole space;
    otherwise it acts on subsystem ``target`` only.
    """
    if target is None:
        if m.dim != rho.dim:
            raise DimensionMismatch(f"measurement dim {m.dim} != state dim {rho.dim}")
        projs = m.projectors()
    else:
        t = _target(rho, m, target)
        projs = [_embed(p, rho.dims, t) for p in m.projectors()]
    out = sum(p @ rho.matrix @ p for p in projs)
    out = 0.5 * (out + out.conj().T)
    return DensityMatrix(_frozen(out), rho.dims, rho.hermiticity_tol, rho.psd_tol, rho.trace_tol)


def measure_subsystem(rho: DensityMatrix, m: ProjectiveMeasurement, target: int) -> MeasurementOutcome:
    """Measure subsystem ``target`` in basis ``m``.

    Conditional states live on the remaining subsystems in layout order.
    For a single-party state they are 1x1 matrices [[1]].
    """
    t = _target(rho, m, target)
    rest = tuple(i for i in range(rho.n_parties) if i != t)
    probs = np.zeros(m.dim)
    conditional = []
    post = np.zeros_like(rho.matrix)
    for i, proj in enumerate(m.projectors()):
        p_full = _embed(proj, rho.dims, t)
        branch = p_full @ rho.matrix @ p_full
        post = post + branch
        probs[i] = max(np.trace(branch).real, 0.0)
        if probs[i] > ZERO_PROBABILITY:
            if rest:
                cond = reduce_matrix(branch, rho.dims, rest) / probs[i]
                rest_dims = tuple(rho.dims[j] for j in rest)
            else:
                cond = np.array([[1.0 + 0j]])
                rest_dims = (1,)
            cond = 0.5 * (cond + cond.conj().T)
            conditional.append(DensityMatrix(_frozen(cond), rest_dims))
        else:
            conditional.append(None)
    probs = probs / probs.sum()
    post = 0.5 * (post + post.conj().T)
    post_joint = DensityMatrix(_frozen(post), rho.dims, rho.hermiticity_tol, rho.psd_tol, rho.trace_tol)
    return MeasurementOutcome(probs, tuple(conditional), post_joint)

