"""Verifiers for the complementary relations.

Each ``check_*`` function evaluates one inequality instance ``lhs >= rhs``
and returns a :class:`RelationReport`. Relation ids:

========== ==========================================================
EQ3        sum_k S(dephased_k) >= -log2 b + (N-1) S(rho)
EQ5        sum_k C_RE^(k)(rho) >= -log2 b - S(rho)
EQ7        sum_k S(M_k|B) >= -log2 b + (N-1) S(A|B)
EQ9        sum_k D_th^(k)(B|A) >= -log2 b - S(A|B)
EQ10       S(M|B_k) >= S(M|B_0) - S(A|B_0)
EQ11       sum_{k=0}^{N} S(M_k|B_k) >= -log2 b
EQ11_PAIR  S(M_1|B_1) + S(M_2|B_2) >= -log2 b(M_1, M_2)
========== ==========================================================
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bounds import BoundResult, bound_b
from .errors import DimensionMismatch, TooFewMeasurements
from .measurements import ProjectiveMeasurement, dephase, measure_subsystem
from .quantities import (
    conditional_entropy,
    post_measurement_conditional_entropy,
    rel_entropy_coherence,
    thermal_discord,
)
from .state import DensityMatrix, _normalize_indices, is_pure, partial_trace, purify, von_neumann_entropy

DEFAULT_TOL = 1e-9
RELATION_IDS = ("EQ3", "EQ5", "EQ7", "EQ9", "EQ10", "EQ11", "EQ11_PAIR")


@dataclass(frozen=True)
class RelationReport:
    relation_id: str
    lhs: float
    rhs: float
    residual: float
    bound: BoundResult | None
    tolerance: float
    holds: bool
    saturated: bool
    inputs_digest: str
    terms: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "relation_id": self.relation_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "bound": self.bound.as_dict() if self.bound else None,
            "tolerance": self.tolerance,
            "holds": self.holds,
            "saturated": self.saturated,
            "inputs_digest": self.inputs_digest,
            "terms": self.terms,
        }


def inputs_digest(rho: DensityMatrix, ms: Sequence[ProjectiveMeasurement], **params) -> str:
    """SHA-256 over the state, the measurement vectors and any scalar parameters."""
    h = hashlib.sha256()
    h.update(repr(tuple(rho.dims)).encode())
    h.update(np.ascontiguousarray(rho.matrix).tobytes())
    for m in ms:
        h.update(np.ascontiguousarray(m.vectors).tobytes())
    h.update(repr(sorted(params.items())).encode())
    return h.hexdigest()


def _report(rid, lhs, rhs, bound, tol, digest, terms=None):
    residual = lhs - rhs
    return RelationReport(
        relation_id=rid,
        lhs=float(lhs),
        rhs=float(rhs),
        residual=float(residual),
        bound=bound,
        tolerance=tol,
        holds=bool(residual >= -tol),
        saturated=bool(abs(residual) <= tol),
        inputs_digest=digest,
        terms=terms or {},
    )


def _require_n(ms, minimum=2):
    if len(ms) < minimum:
        raise TooFewMeasurements(f"need at least {minimum} measurements, got {len(ms)}")


def check_uncertainty(rho: DensityMatrix, ms: Sequence[ProjectiveMeasurement],
                      tol: float = DEFAULT_TOL, b_policy: str = "auto") -> RelationReport:
    _require_n(ms)
    entropies = [von_neumann_entropy(dephase(rho, m)) for m in ms]
    s = von_neumann_entropy(rho)
    bound = bound_b(ms, b_policy)
    lhs = math.fsum(entropies)
    rhs = bound.neg_log2_b + (len(ms) - 1) * s
    return _report("EQ3", lhs, rhs, bound, tol, inputs_digest(rho, ms),
                   {"dephased_entropies": entropies, "state_entropy": s})


def check_coherence_relation(rho: DensityMatrix, ms: Sequence[ProjectiveMeasurement],
                             tol: float = DEFAULT_TOL, b_policy: str = "auto") -> RelationReport:
    """Total coherence over the bases of ``ms`` against -log2 b - S(rho)."""
    _require_n(ms)
    # unclamped so the residual equals the EQ3 residual to rounding
    coherences = [rel_entropy_coherence(rho, m, clamp=False) for m in ms]
    s = von_neumann_entropy(rho)
    bound = bound_b(ms, b_policy)
    lhs = math.fsum(coherences)
    rhs = bound.neg_log2_b - s
    return _report("EQ5", lhs, rhs, bound, tol, inputs_digest(rho, ms),
                   {"coherences": [max(c, 0.0) for c in coherences], "state_entropy": s})


def _memory(rho, measured, memory):
    (a,) = _normalize_indices(measured, rho.n_parties)
    if memory is None:
        memory = tuple(i for i in range(rho.n_parties) if i != a)
    return a, _normalize_indices(memory, rho.n_parties)


def check_memory_uncertainty(rho: DensityMatrix, ms: Sequence[ProjectiveMeasurement],
                             measured: int = 0, memory=None, tol: float = DEFAULT_TOL,
                             b_policy: str = "auto") -> RelationReport:
    _require_n(ms)
    a, mem = _memory(rho, measured, memory)
    sub = partial_trace(rho, tuple(sorted((a,) + mem)))
    keep = tuple(sorted((a,) + mem))
    a_sub, mem_sub = keep.index(a), tuple(keep.index(i) for i in mem)
    cond = [post_measurement_conditional_entropy(sub, m, a_sub, mem_sub, clamp=False) for m in ms]
    s_ab = conditional_entropy(sub, mem_sub)
    bound = bound_b(ms, b_policy)
    lhs = math.fsum(cond)
    rhs = bound.neg_log2_b + (len(ms) - 1) * s_ab
    return _report("EQ7", lhs, rhs, bound, tol,
                   inputs_digest(rho, ms, measured=a, memory=mem),
                   {"post_measurement_conditional_entropies": cond,
                    "conditional_entropy": s_ab, "entangled": s_ab < -tol})


def check_discord_relation(rho: DensityMatrix, ms: Sequence[ProjectiveMeasurement],
                           measured: int = 0, memory=None, tol: float = DEFAULT_TOL,
                           b_policy: str = "auto") -> RelationReport:
    """Total thermal discord over ``ms`` against -log2 b - S(A|B).

    Parties outside ``{measured} | memory`` are traced out first.
    """
    _require_n(ms)
    a, mem = _memory(rho, measured, memory)
    keep = tuple(sorted((a,) + mem))
    sub = partial_trace(rho, keep)
    a_sub, mem_sub = keep.index(a), tuple(keep.index(i) for i in mem)
    breakdowns = [thermal_discord(sub, m, a_sub, clamp=False) for m in ms]
    s_ab = conditional_entropy(sub, mem_sub)
    bound = bound_b(ms, b_policy)
    lhs = math.fsum(x.discord for x in breakdowns)
    rhs = bound.neg_log2_b - s_ab
    return _report("EQ9", lhs, rhs, bound, tol,
                   inputs_digest(rho, ms, measured=a, memory=mem),
                   {"discords": [max(x.discord, 0.0) for x in breakdowns],
                    "conditional_entropy": s_ab, "entangled": s_ab < -tol})


def check_data_processing_step(rho: DensityMatrix, m: ProjectiveMeasurement, memory: int = 2,
                               measured: int = 0, reference: int = 1,
                               tol: float = DEFAULT_TOL) -> RelationReport:
    """S(M_A|B_k) against S(M_A|B_0) - S(A|B_0) on a state of A, B_0, B_k.

    The right side is also evaluated along the purification route: with
    rho purified by an ancilla C, it equals S(post-measurement A B_k C) -
    S(B_k C). That value and its gap are returned in ``terms``.
    """
    if rho.n_parties != 3:
        raise DimensionMismatch(f"expected a tripartite state, got layout {rho.dims}")
    a, b0, bk = (_normalize_indices(i, 3)[0] for i in (measured, reference, memory))
    if len({a, b0, bk}) != 3:
        raise DimensionMismatch("measured, reference and memory must be distinct parties")

    lhs = post_measurement_conditional_entropy(rho, m, a, (bk,), clamp=False)
    rhs = (post_measurement_conditional_entropy(rho, m, a, (b0,), clamp=False)
           - conditional_entropy(partial_trace(rho, (a, b0)), (1 if b0 > a else 0,)))

    psi = purify(rho)
    full = psi.density()
    pure_ok = is_pure(full)
    if not pure_ok:
        raise ArithmeticError("purification is not pure")
    c = 3
    post = measure_subsystem(full, m, a).post_joint
    post_abkc = partial_trace(post, (a, bk, c))
    bkc = partial_trace(full, (bk, c))
    purified_rhs = von_neumann_entropy(post_abkc) - von_neumann_entropy(bkc)

    return _report("EQ10", lhs, rhs, None, tol,
                   inputs_digest(rho, [m], measured=a, reference=b0, memory=bk),
                   {"purified_rhs": purified_rhs, "purification_gap": abs(purified_rhs - rhs),
                    "extended_state_pure": pure_ok})


def check_multipartite_conditional(rho: DensityMatrix, ms: Sequence[ProjectiveMeasurement],
                                   measured: int = 0, tol: float = DEFAULT_TOL,
                                   b_policy: str = "auto", b_set: str = "memory") -> RelationReport:
    """sum_k S(M_k|B_k) >= -log2 b on a state of A, B_0, ..., B_N.

    ``ms[k]`` is paired with memory party B_k. With ``b_set="memory"`` b is
    computed from ``ms[1:]``; ``b_set="all"`` uses every measurement.
    """
    if b_set not in ("memory", "all"):
        raise ValueError(f"b_set must be 'memory' or 'all', got {b_set!r}")
    (a,) = _normalize_indices(measured, rho.n_parties)
    memories = [i for i in range(rho.n_parties) if i != a]
    if len(ms) != len(memories):
        raise DimensionMismatch(
            f"{rho.n_parties} parties need {len(memories)} measurements, got {len(ms)}")
    if len(ms) < 3:
        raise TooFewMeasurements("need N + 1 >= 3 measurements so that b uses at least 2")
    cond = [post_measurement_conditional_entropy(rho, m, a, (bk,), clamp=False)
            for m, bk in zip(ms, memories)]
    subset = list(ms[1:]) if b_set == "memory" else list(ms)
    bound = bound_b(subset, b_policy)
    lhs = math.fsum(cond)
    return _report("EQ11", lhs, bound.neg_log2_b, bound, tol,
                   inputs_digest(rho, ms, measured=a, b_set=b_set),
                   {"post_measurement_conditional_entropies": cond, "b_set": b_set,
                    "b_measurements": list(range(1, len(ms))) if b_set == "memory" else list(range(len(ms)))})


def check_tripartite_pair(rho: DensityMatrix, m1: ProjectiveMeasurement, m2: ProjectiveMeasurement,
                          measured: int = 0, tol: float = DEFAULT_TOL,
                          b_policy: str = "auto") -> RelationReport:
    """S(M_1|B_1) + S(M_2|B_2) >= -log2 b(M_1, M_2) on a state of A, B_1, B_2."""
    if rho.n_parties != 3:
        raise DimensionMismatch(f"expected a tripartite state, got layout {rho.dims}")
    (a,) = _normalize_indices(measured, 3)
    b1, b2 = (i for i in range(3) if i != a)
    cond = [post_measurement_conditional_entropy(rho, m1, a, (b1,), clamp=False),
            post_measurement_conditional_entropy(rho, m2, a, (b2,), clamp=False)]
    bound = bound_b([m1, m2], b_policy)
    return _report("EQ11_PAIR", math.fsum(cond), bound.neg_log2_b, bound, tol,
                   inputs_digest(rho, [m1, m2], measured=a),
                   {"post_measurement_conditional_entropies": cond})
