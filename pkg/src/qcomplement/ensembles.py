"""Seeded random states, unitaries and bases for Monte Carlo sweeps.

Every sampler is a pure function of its seed. Sweeps derive one seed per
instance with :func:`child_seed`, which is the first 8 bytes (little
endian) of ``blake2b(master_seed.to_bytes(8, 'little') +
index.to_bytes(8, 'little'), digest_size=8)``. Instances therefore do not
share an RNG stream and can be generated in any order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch
from .measurements import ProjectiveMeasurement, basis_from_unitary, standard_basis
from .quantities import thermal_discord
from .state import DensityMatrix, validate_density

SAMPLERS = ("haar_pure", "hilbert_schmidt_mixed", "rank_limited_mixed")
_U64 = 2**64


def child_seed(master_seed: int, index: int) -> int:
    data = (int(master_seed) % _U64).to_bytes(8, "little") + (int(index) % _U64).to_bytes(8, "little")
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


@dataclass(frozen=True)
class EnsembleConfig:
    dims: tuple[int, ...]
    sampler: str = "hilbert_schmidt_mixed"
    count: int = 1
    seed: int = 0
    rank: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims or any(d < 1 for d in self.dims):
            raise DimensionMismatch(f"bad layout {self.dims}")
        if self.sampler not in SAMPLERS:
            raise ValueError(f"unknown sampler {self.sampler!r}; expected one of {SAMPLERS}")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.sampler == "rank_limited_mixed":
            if self.rank is None or not 1 <= self.rank <= self.total_dim:
                raise ValueError(f"rank must be in [1, {self.total_dim}], got {self.rank}")

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))


def _ginibre(rng, rows, cols):
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def sample_haar_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-random d x d unitary: QR of a Ginibre matrix with R's diagonal made positive."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, d, d))
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def sample_pure_vector(d: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = _ginibre(rng, d, 1)[:, 0]
    return v / np.linalg.norm(v)


def sample_mixed_state(dims: Sequence[int], seed: int, rank: int | None = None) -> DensityMatrix:
    """G G^dagger / tr(G G^dagger) for a d x rank Ginibre matrix G (rank defaults to d)."""
    d = int(np.prod(dims))
    rng = np.random.default_rng(seed)
    g = _ginibre(rng, d, rank or d)
    rho = g @ g.conj().T
    return validate_density(rho / np.trace(rho).real, dims)


def sample_state(config: EnsembleConfig, index: int = 0) -> DensityMatrix:
    """Instance ``index`` of the ensemble described by ``config``."""
    seed = child_seed(config.seed, index)
    if config.sampler == "haar_pure":
        return sample_mixed_state(config.dims, seed, rank=1)
    if config.sampler == "rank_limited_mixed":
        return sample_mixed_state(config.dims, seed, rank=config.rank)
    return sample_mixed_state(config.dims, seed)


def iter_states(config: EnsembleConfig) -> Iterator[tuple[int, int, DensityMatrix]]:
    """Yield ``(index, instance_seed, state)`` for every instance."""
    for i in range(config.count):
        yield i, child_seed(config.seed, i), sample_state(config, i)


def sample_measurement(d: int, seed: int) -> ProjectiveMeasurement:
    return basis_from_unitary(sample_haar_unitary(d, seed), label=f"haar:{seed}")


def min_discord_sampled(rho: DensityMatrix, measured: int = 0, trials: int = 100,
                        seed: int = 0) -> tuple[ProjectiveMeasurement, float]:
    """Smallest thermal discord over the standard basis and ``trials`` Haar bases.

    This is an upper bound on the measurement-minimized discord, not the
    optimum. Trial ``t`` uses seed ``child_seed(seed, t)``, so runs with more
    trials search a superset of the bases of runs with fewer.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    d = rho.dims[measured]
    best_m = standard_basis(d)
    best = thermal_discord(rho, best_m, measured).discord
    for t in range(trials):
        m = sample_measurement(d, child_seed(seed, t))
        value = thermal_discord(rho, m, measured).discord
        if value < best:
            best, best_m = value, m
    return best_m, best
