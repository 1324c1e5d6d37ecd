"""The state-independent overlap quantity ``b`` of a measurement sequence.

For measurements M1, ..., MN with pairwise overlaps
``c_k[i, j] = tr(Pi^(k)_i Pi^(k+1)_j)``::

    b = max_{iN} sum_{i2..i(N-1)} max_{i1} c_1[i1, i2] * prod_{k=2}^{N-1} c_k[ik, i(k+1)]

:func:`bound_b_ordered` evaluates this as a chain contraction,
:func:`bound_b_oracle` by enumerating index tuples, and
:func:`bound_b_best_order` minimizes over orderings of the set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InstanceTooLarge, TooFewMeasurements, TooManyMeasurements
from .measurements import ProjectiveMeasurement, overlap_matrix

ORACLE_LIMIT = 10**6
MAX_ORDERING_SEARCH = 8
AUTO_BEST_ORDER_LIMIT = 5

B_POLICIES = ("auto", "given-order", "best-order")


@dataclass(frozen=True)
class BoundResult:
    b: float
    neg_log2_b: float
    ordering: tuple[int, ...]
    method: str

    def as_dict(self):
        return {"b": self.b, "neg_log2_b": self.neg_log2_b,
                "ordering": list(self.ordering), "method": self.method}


def _check(ms: Sequence[ProjectiveMeasurement]):
    if len(ms) < 2:
        raise TooFewMeasurements(f"b needs at least 2 measurements, got {len(ms)}")
    d = ms[0].dim
    for m in ms[1:]:
        if m.dim != d:
            raise DimensionMismatch(f"all measurements must share one dimension, got {[x.dim for x in ms]}")


def _result(b, ordering, method):
    b = min(float(b), 1.0)
    return BoundResult(b, -math.log2(b), tuple(ordering), method)


def _chain(overlaps: list[np.ndarray]) -> float:
    u = overlaps[0].max(axis=0)
    for c in overlaps[1:]:
        u = np.array([math.fsum(u * c[:, j]) for j in range(c.shape[1])])
    return float(u.max())


def bound_b_ordered(ms: Sequence[ProjectiveMeasurement]) -> BoundResult:
    """b for the measurements in the order given (chain contraction)."""
    _check(ms)
    overlaps = [overlap_matrix(ms[k], ms[k + 1]) for k in range(len(ms) - 1)]
    return _result(_chain(overlaps), range(len(ms)), "chain")


def bound_b_oracle(ms: Sequence[ProjectiveMeasurement]) -> BoundResult:
    """b by explicit enumeration of every index tuple (i1, ..., iN).

    Only meant for cross-checking; refuses instances with d**N > 10**6.
    """
    _check(ms)
    n, d = len(ms), ms[0].dim
    if d**n > ORACLE_LIMIT:
        raise InstanceTooLarge(f"d**N = {d**n} exceeds oracle limit {ORACLE_LIMIT}")
    c = [overlap_matrix(ms[k], ms[k + 1]).tolist() for k in range(n - 1)]

    # inner[(i2, ..., iN)] = max over i1 of the full product
    inner = {}
    for idx in itertools.product(range(d), repeat=n):
        term = c[0][idx[0]][idx[1]]
        for k in range(1, n - 1):
            term *= c[k][idx[k]][idx[k + 1]]
        key = idx[1:]
        if key not in inner or term > inner[key]:
            inner[key] = term
    per_last = {}
    for key, value in inner.items():
        per_last.setdefault(key[-1], []).append(value)
    b = max(math.fsum(vals) for vals in per_last.values())
    return _result(b, range(n), "brute_force")


def bound_b_best_order(ms: Sequence[ProjectiveMeasurement]) -> BoundResult:
    """Smallest b over all orderings of ``ms``.

    Orderings are visited lexicographically and only a strictly smaller b
    replaces the incumbent, so ties resolve to the lexicographically
    smallest permutation.
    """
    _check(ms)
    if len(ms) > MAX_ORDERING_SEARCH:
        raise TooManyMeasurements(f"ordering search limited to {MAX_ORDERING_SEARCH} measurements")
    best = None
    for perm in itertools.permutations(range(len(ms))):
        r = bound_b_ordered([ms[i] for i in perm])
        if best is None or r.b < best.b:
            best = BoundResult(r.b, r.neg_log2_b, perm, "chain")
    return best


def all_orderings(ms: Sequence[ProjectiveMeasurement]) -> list[tuple[tuple[int, ...], float]]:
    """(ordering, b) for every permutation, in lexicographic order."""
    _check(ms)
    if len(ms) > MAX_ORDERING_SEARCH:
        raise TooManyMeasurements(f"ordering search limited to {MAX_ORDERING_SEARCH} measurements")
    return [(perm, bound_b_ordered([ms[i] for i in perm]).b)
            for perm in itertools.permutations(range(len(ms)))]


def bound_b(ms: Sequence[ProjectiveMeasurement], policy: str = "auto") -> BoundResult:
    """b under an ordering policy.

    ``"auto"`` searches all orderings for up to 5 measurements and keeps the
    given order beyond that.
    """
    if policy not in B_POLICIES:
        raise ValueError(f"unknown b policy {policy!r}; expected one of {B_POLICIES}")
    if policy == "best-order" or (policy == "auto" and len(ms) <= AUTO_BEST_ORDER_LIMIT):
        return bound_b_best_order(ms)
    return bound_b_ordered(ms)
