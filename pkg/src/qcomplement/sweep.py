"""Monte Carlo sweeps of one relation over a seeded state ensemble.

A sweep config is a JSON object::

    {
      "relation_id": "EQ9",
      "ensemble": {"dims": [2, 2], "sampler": "hilbert_schmidt_mixed",
                   "count": 200, "seed": 7},
      "measurements": {"policy": "mub", "count": 2},
      "tolerance": 1e-9,
      "b_policy": "auto",
      "measured": 0,
      "b_set": "memory"
    }

Measurement policies: ``mub`` (the first ``count`` bases of the MUB family
of the measured dimension), ``random`` (fresh Haar bases per instance,
basis ``j`` seeded with ``child_seed(instance_seed, j + 1)``) and ``files``
(``"files": [paths]``, same bases for every instance).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .bounds import B_POLICIES
from .ensembles import EnsembleConfig, child_seed, iter_states, sample_measurement
from .errors import MalformedFile
from .io import load_measurement
from .measurements import mub_family
from .relations import (
    DEFAULT_TOL,
    RELATION_IDS,
    check_coherence_relation,
    check_data_processing_step,
    check_discord_relation,
    check_memory_uncertainty,
    check_multipartite_conditional,
    check_tripartite_pair,
    check_uncertainty,
)

CSV_COLUMNS = ("instance_index", "seed", "relation_id", "n_measurements", "lhs_bits",
               "rhs_bits", "residual_bits", "b", "saturated", "holds")


@dataclass(frozen=True)
class SweepConfig:
    relation_id: str
    ensemble: EnsembleConfig
    policy: str = "mub"
    n_measurements: int | None = None
    files: tuple[str, ...] = ()
    tolerance: float = DEFAULT_TOL
    b_policy: str = "auto"
    measured: int = 0
    b_set: str = "memory"


def config_from_dict(obj, base_dir=".") -> SweepConfig:
    """Parse and check a sweep config; raises :class:`MalformedFile` on any problem."""
    try:
        rid = obj["relation_id"]
        ens = obj["ensemble"]
        ensemble = EnsembleConfig(
            dims=tuple(ens["dims"]),
            sampler=ens.get("sampler", "hilbert_schmidt_mixed"),
            count=int(ens.get("count", 1)),
            seed=int(ens.get("seed", 0)),
            rank=ens.get("rank"),
        )
        meas = obj.get("measurements", {"policy": "mub"})
        policy = meas.get("policy", "mub")
        files = tuple(str(Path(base_dir) / f) for f in meas.get("files", ()))
        cfg = SweepConfig(
            relation_id=rid,
            ensemble=ensemble,
            policy=policy,
            n_measurements=meas.get("count"),
            files=files,
            tolerance=float(obj.get("tolerance", DEFAULT_TOL)),
            b_policy=obj.get("b_policy", "auto"),
            measured=int(obj.get("measured", 0)),
            b_set=obj.get("b_set", "memory"),
        )
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedFile(f"bad sweep config: {exc!r}") from exc
    if cfg.relation_id not in RELATION_IDS:
        raise MalformedFile(f"unknown relation_id {cfg.relation_id!r}; expected one of {RELATION_IDS}")
    if cfg.policy not in ("mub", "random", "files"):
        raise MalformedFile(f"unknown measurement policy {cfg.policy!r}")
    if cfg.b_policy not in B_POLICIES:
        raise MalformedFile(f"unknown b_policy {cfg.b_policy!r}")
    if cfg.policy == "files" and not cfg.files:
        raise MalformedFile("measurement policy 'files' needs a 'files' list")
    if not 0 <= cfg.measured < len(cfg.ensemble.dims):
        raise MalformedFile(f"measured index {cfg.measured} outside layout {cfg.ensemble.dims}")
    return cfg


def _measurement_count(cfg: SweepConfig) -> int:
    n_parties = len(cfg.ensemble.dims)
    fixed = {"EQ10": 1, "EQ11_PAIR": 2, "EQ11": n_parties - 1}
    if cfg.relation_id in fixed:
        return fixed[cfg.relation_id]
    if cfg.policy == "files":
        return len(cfg.files)
    return cfg.n_measurements or 2


def _measured_dim(cfg: SweepConfig) -> int:
    if cfg.relation_id in ("EQ3", "EQ5"):
        return cfg.ensemble.total_dim
    return cfg.ensemble.dims[cfg.measured]


class Sweep:
    """Runs a :class:`SweepConfig` instance by instance."""

    def __init__(self, cfg: SweepConfig):
        self.cfg = cfg
        self.n = _measurement_count(cfg)
        self.d = _measured_dim(cfg)
        self._fixed = None
        if cfg.policy == "files":
            self._fixed = [load_measurement(f) for f in cfg.files]
            if len(self._fixed) != self.n:
                raise MalformedFile(f"{cfg.relation_id} needs {self.n} measurement files, got {len(self._fixed)}")
        elif cfg.policy == "mub":
            family = mub_family(self.d)
            if self.n > len(family):
                raise MalformedFile(f"only {len(family)} MUBs exist in dimension {self.d}")
            self._fixed = family[: self.n]
        if self._fixed and any(m.dim != self.d for m in self._fixed):
            raise MalformedFile(f"measurements must have dimension {self.d}")

    def measurements(self, instance_seed: int):
        if self._fixed is not None:
            return list(self._fixed)
        return [sample_measurement(self.d, child_seed(instance_seed, j + 1)) for j in range(self.n)]

    def params(self) -> dict:
        c = self.cfg
        return {"tolerance": c.tolerance, "b_policy": c.b_policy, "measured": c.measured, "b_set": c.b_set}

    def run_one(self, rho, ms):
        return evaluate(self.cfg.relation_id, rho, ms, **self.params())

    def __iter__(self):
        for index, seed, rho in iter_states(self.cfg.ensemble):
            ms = self.measurements(seed)
            yield index, seed, rho, ms, self.run_one(rho, ms)


def evaluate(relation_id, rho, ms, tolerance=DEFAULT_TOL, b_policy="auto", measured=0, b_set="memory"):
    """Dispatch one relation instance by id (also used to replay bundles)."""
    tol = tolerance
    if relation_id == "EQ3":
        return check_uncertainty(rho, ms, tol=tol, b_policy=b_policy)
    if relation_id == "EQ5":
        return check_coherence_relation(rho, ms, tol=tol, b_policy=b_policy)
    if relation_id == "EQ7":
        return check_memory_uncertainty(rho, ms, measured=measured, tol=tol, b_policy=b_policy)
    if relation_id == "EQ9":
        return check_discord_relation(rho, ms, measured=measured, tol=tol, b_policy=b_policy)
    if relation_id == "EQ10":
        (m,) = ms
        others = [i for i in range(rho.n_parties) if i != measured]
        return check_data_processing_step(rho, m, memory=others[1], measured=measured,
                                          reference=others[0], tol=tol)
    if relation_id == "EQ11":
        return check_multipartite_conditional(rho, ms, measured=measured, tol=tol,
                                              b_policy=b_policy, b_set=b_set)
    if relation_id == "EQ11_PAIR":
        m1, m2 = ms
        return check_tripartite_pair(rho, m1, m2, measured=measured, tol=tol, b_policy=b_policy)
    raise MalformedFile(f"unknown relation_id {relation_id!r}")


@dataclass
class SweepSummary:
    count: int = 0
    violations: int = 0
    saturated: int = 0
    min_residual: float = math.inf
    first_violation: tuple | None = None


def csv_row(index, seed, report, n_measurements):
    b = "" if report.bound is None else repr(report.bound.b)
    return [index, seed, report.relation_id, n_measurements, repr(report.lhs), repr(report.rhs),
            repr(report.residual), b, str(report.saturated).lower(), str(report.holds).lower()]


def run_sweep(cfg: SweepConfig, out) -> SweepSummary:
    """Write one CSV row per instance to the text stream ``out``.

    Rows appear in instance-index order; floats use repr so that two runs
    with the same config are byte-identical.
    """
    sweep = Sweep(cfg)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    summary = SweepSummary()
    for index, seed, rho, ms, report in sweep:
        writer.writerow(csv_row(index, seed, report, len(ms)))
        summary.count += 1
        summary.saturated += report.saturated
        summary.min_residual = min(summary.min_residual, report.residual)
        if not report.holds:
            summary.violations += 1
            if summary.first_violation is None:
                summary.first_violation = (index, seed, rho, ms, report, sweep.params())
    return summary


def run_sweep_to_string(cfg: SweepConfig) -> tuple[str, SweepSummary]:
    buf = io.StringIO()
    summary = run_sweep(cfg, buf)
    return buf.getvalue(), summary
