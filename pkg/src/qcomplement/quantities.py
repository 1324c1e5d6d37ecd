"""Coherence, conditional entropy and thermal discord, all in bits."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .errors import BadSubsystemIndex
from .measurements import ProjectiveMeasurement, dephase, measure_subsystem
from .state import DensityMatrix, _normalize_indices, partial_trace, von_neumann_entropy

log = logging.getLogger(__name__)

CLAMP_TOL = 1e-9


def _clamp(value: float, name: str) -> float:
    if -CLAMP_TOL <= value < 0.0:
        log.debug("clamping %s = %.3e to 0", name, value)
        return 0.0
    return value


@dataclass(frozen=True)
class DiscordBreakdown:
    """The three entropy terms of the thermal discord and their combination."""

    avg_conditional_entropy: float
    post_meas_marginal_entropy: float
    joint_entropy: float
    discord: float


def rel_entropy_coherence(rho: DensityMatrix, m: ProjectiveMeasurement, clamp: bool = True) -> float:
    """Relative entropy of coherence S(dephased rho) - S(rho) in the basis of ``m``."""
    value = von_neumann_entropy(dephase(rho, m)) - von_neumann_entropy(rho)
    return _clamp(value, "coherence") if clamp else value


def conditional_entropy(rho: DensityMatrix, conditioning) -> float:
    """S(rho) - S(rho restricted to ``conditioning``).

    ``conditioning`` must be a proper subset of the subsystems. Negative
    values certify entanglement between the two sides.
    """
    cond = _normalize_indices(conditioning, rho.n_parties)
    if not cond or len(cond) == rho.n_parties:
        raise BadSubsystemIndex(f"conditioning set {cond} must be a non-empty proper subset")
    return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, cond))


def signals_entanglement(rho: DensityMatrix, conditioning, tol: float = CLAMP_TOL) -> bool:
    """True when S(rest|conditioning) < -tol. A False result proves nothing."""
    return conditional_entropy(rho, conditioning) < -tol


def _memory_view(rho: DensityMatrix, measured, memory):
    (a,) = _normalize_indices(measured, rho.n_parties)
    mem = _normalize_indices(memory, rho.n_parties)
    if a in mem:
        raise BadSubsystemIndex(f"measured subsystem {a} is also in memory {mem}")
    keep = tuple(sorted((a,) + mem))
    return partial_trace(rho, keep), keep.index(a), tuple(keep.index(i) for i in mem)


def post_measurement_conditional_entropy(
    rho: DensityMatrix, m: ProjectiveMeasurement, measured: int, memory, clamp: bool = True
) -> float:
    """S(M_A|B): conditional entropy of A given ``memory`` after measuring A with ``m``.

    Subsystems outside ``{measured} | memory`` are traced out first. An empty
    memory gives the entropy of the dephased marginal.
    """
    if memory is None or (not isinstance(memory, int) and len(memory) == 0):
        sub = partial_trace(rho, (measured,))
        value = von_neumann_entropy(dephase(sub, m))
        return value
    sub, a, mem = _memory_view(rho, measured, memory)
    post = measure_subsystem(sub, m, a).post_joint
    value = von_neumann_entropy(post) - von_neumann_entropy(partial_trace(post, mem))
    return _clamp(value, "post-measurement conditional entropy") if clamp else value


def thermal_discord(rho: DensityMatrix, m: ProjectiveMeasurement, measured: int = 0,
                    clamp: bool = True) -> DiscordBreakdown:
    """Thermal discord (one-way deficit) for measuring subsystem ``measured``.

    The memory is every other subsystem, taken together in layout order.
    """
    (a,) = _normalize_indices(measured, rho.n_parties)
    outcome = measure_subsystem(rho, m, a)
    avg = math.fsum(p * von_neumann_entropy(s)
                    for p, s in zip(outcome.probabilities, outcome.conditional_states)
                    if s is not None)
    marginal = von_neumann_entropy(partial_trace(outcome.post_joint, (a,)))
    joint = von_neumann_entropy(rho)
    value = avg + marginal - joint
    if clamp:
        value = _clamp(value, "thermal discord")
    return DiscordBreakdown(avg, marginal, joint, value)


def thermal_discord_identity(rho: DensityMatrix, m: ProjectiveMeasurement, measured: int = 0,
                             clamp: bool = True) -> float:
    """Thermal discord computed as S(M_A|B) - S(A|B)."""
    (a,) = _normalize_indices(measured, rho.n_parties)
    rest = tuple(i for i in range(rho.n_parties) if i != a)
    if not rest:
        # no memory: S(M_A|B) and S(A|B) reduce to unconditioned entropies
        value = von_neumann_entropy(dephase(rho, m, a)) - von_neumann_entropy(rho)
    else:
        value = (post_measurement_conditional_entropy(rho, m, a, rest, clamp=False)
                 - conditional_entropy(rho, rest))
    return _clamp(value, "thermal discord") if clamp else value
