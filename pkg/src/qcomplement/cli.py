"""Command-line front end.

Exit codes: 0 success (every checked inequality holds), 1 an inequality was
violated beyond tolerance (a counterexample bundle is written), 2 bad input
or usage.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .bounds import B_POLICIES, all_orderings, bound_b
from .errors import MalformedFile, QuantumInputError
from .io import load_measurement, load_state, read_bundle, write_bundle
from .quantities import rel_entropy_coherence, thermal_discord, thermal_discord_identity
from .relations import (
    DEFAULT_TOL,
    check_coherence_relation,
    check_discord_relation,
    check_multipartite_conditional,
)
from .state import von_neumann_entropy
from .sweep import config_from_dict, evaluate, run_sweep

LN2 = math.log(2)


class _Printer:
    def __init__(self, nats: bool, stream=None):
        self.scale = LN2 if nats else 1.0
        self.unit = "nats" if nats else "bits"
        self.stream = stream or sys.stdout

    def value(self, x):
        return f"{x * self.scale:#.12g}"

    def line(self, key, val=""):
        print(f"{key}: {val}" if val != "" else key, file=self.stream)

    def quantity(self, key, x):
        self.line(f"{key} [{self.unit}]", self.value(x))

    def report(self, report):
        self.line("relation", report.relation_id)
        if report.bound is not None:
            self.line("b", repr(report.bound.b))
            self.quantity("-log2 b", report.bound.neg_log2_b)
            self.line("ordering", " ".join(map(str, report.bound.ordering)))
        self.quantity("lhs", report.lhs)
        self.quantity("rhs", report.rhs)
        self.quantity("residual", report.residual)
        self.line("tolerance", f"{report.tolerance:g}")
        self.line("holds", str(report.holds).lower())
        self.line("saturated", str(report.saturated).lower())
        self.line("inputs_digest", report.inputs_digest)


def _parser():
    p = argparse.ArgumentParser(prog="qcomplement", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nats", action="store_true", help="display entropies in nats")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOL,
                        help="holds when residual >= -tolerance (default %(default)g)")
    common.add_argument("--b-policy", choices=B_POLICIES, default="auto",
                        help="measurement ordering used for b (default %(default)s)")
    common.add_argument("--out", type=Path, help="write a JSON report (sweep: the CSV) here")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("entropy", parents=[common], help="von Neumann entropy of a state file")
    s.add_argument("state", help="state JSON file")

    s = sub.add_parser("coherence", parents=[common], help="coherence per basis and the coherence relation")
    s.add_argument("state", help="state JSON file")
    s.add_argument("measurements", nargs="+", help="measurement JSON files")

    s = sub.add_parser("discord", parents=[common], help="thermal discord per basis and the discord relation")
    s.add_argument("state", help="state JSON file")
    s.add_argument("measurements", nargs="+", help="measurement JSON files")
    s.add_argument("--measured", type=int, default=0, help="index of the measured subsystem")

    s = sub.add_parser("multi", parents=[common], help="multipartite post-measurement conditional entropies")
    s.add_argument("state", help="state JSON file")
    s.add_argument("measurements", nargs="+", help="measurement JSON files")
    s.add_argument("--measured", type=int, default=0, help="index of the measured subsystem")
    s.add_argument("--b-set", choices=("memory", "all"), default="memory",
                   help="measurements entering b: M1..MN (memory) or every one (all)")

    s = sub.add_parser("bound", parents=[common], help="the overlap quantity b of a measurement set")
    s.add_argument("measurements", nargs="+", help="measurement JSON files")

    s = sub.add_parser("sweep", parents=[common], help="Monte Carlo sweep from a JSON config")
    s.add_argument("config", help="sweep config JSON file")
    s.add_argument("--seed", type=int, help="override the config's master seed")

    s = sub.add_parser("replay", parents=[common], help="re-run a counterexample bundle")
    s.add_argument("bundle", help="counterexample bundle JSON file")
    return p


def _bundle_path(args, digest):
    base = args.out.parent if args.out else Path(".")
    return base / f"counterexample_{digest[:16]}.json"


def _finish(args, printer, report, rho, ms, params):
    printer.report(report)
    if args.out:
        args.out.write_text(json.dumps(report.as_dict(), indent=1, default=_plain) + "\n")
    if not report.holds:
        path = write_bundle(_bundle_path(args, report.inputs_digest), report.relation_id, rho, ms, params, report)
        printer.line("counterexample", str(path))
        return 1
    return 0


def _plain(x):
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(type(x).__name__)


def _load_ms(paths, minimum, parser, command):
    if len(paths) < minimum:
        parser.error(f"{command} needs at least {minimum} measurement files")
    return [load_measurement(p) for p in paths]


def cmd_entropy(args, printer):
    rho = load_state(args.state)
    print(printer.value(von_neumann_entropy(rho)))
    return 0


def cmd_coherence(args, printer, parser):
    ms = _load_ms(args.measurements, 2, parser, "coherence")
    rho = load_state(args.state)
    printer.quantity("S(rho)", von_neumann_entropy(rho))
    for m in ms:
        printer.quantity(f"C_RE[{m.label}]", rel_entropy_coherence(rho, m))
    report = check_coherence_relation(rho, ms, tol=args.tolerance, b_policy=args.b_policy)
    params = {"tolerance": args.tolerance, "b_policy": args.b_policy}
    return _finish(args, printer, report, rho, ms, params)


def cmd_discord(args, printer, parser):
    ms = _load_ms(args.measurements, 2, parser, "discord")
    rho = load_state(args.state)
    for m in ms:
        br = thermal_discord(rho, m, args.measured)
        ident = thermal_discord_identity(rho, m, args.measured)
        printer.line(f"basis {m.label}")
        printer.quantity("  avg_conditional_entropy", br.avg_conditional_entropy)
        printer.quantity("  post_meas_marginal_entropy", br.post_meas_marginal_entropy)
        printer.quantity("  joint_entropy", br.joint_entropy)
        printer.quantity("  discord", br.discord)
        printer.line("  identity_residual", f"{abs(br.discord - ident):.3e}")
    report = check_discord_relation(rho, ms, measured=args.measured, tol=args.tolerance,
                                    b_policy=args.b_policy)
    printer.quantity("S(A|B)", report.terms["conditional_entropy"])
    printer.line("entangled", str(report.terms["entangled"]).lower())
    params = {"tolerance": args.tolerance, "b_policy": args.b_policy, "measured": args.measured}
    return _finish(args, printer, report, rho, ms, params)


def cmd_multi(args, printer, parser):
    ms = _load_ms(args.measurements, 3, parser, "multi")
    rho = load_state(args.state)
    report = check_multipartite_conditional(rho, ms, measured=args.measured, tol=args.tolerance,
                                            b_policy=args.b_policy, b_set=args.b_set)
    for k, value in enumerate(report.terms["post_measurement_conditional_entropies"]):
        printer.quantity(f"S(M{k}|B{k})", value)
    printer.line("b_measurements", " ".join(map(str, report.terms["b_measurements"])))
    params = {"tolerance": args.tolerance, "b_policy": args.b_policy, "measured": args.measured,
              "b_set": args.b_set}
    return _finish(args, printer, report, rho, ms, params)


def cmd_bound(args, printer, parser):
    ms = _load_ms(args.measurements, 2, parser, "bound")
    result = bound_b(ms, args.b_policy)
    printer.line("b", repr(result.b))
    printer.quantity("-log2 b", result.neg_log2_b)
    printer.line("ordering", " ".join(map(str, result.ordering)))
    if math.factorial(len(ms)) <= 24:
        for perm, b in all_orderings(ms):
            printer.line(f"b[{' '.join(map(str, perm))}]", repr(b))
    return 0


def cmd_sweep(args, printer):
    path = Path(args.config)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"{path}: not valid JSON ({exc})") from exc
    if args.seed is not None:
        obj.setdefault("ensemble", {})["seed"] = args.seed
    cfg = config_from_dict(obj, base_dir=path.parent)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            summary = run_sweep(cfg, fh)
        stream = sys.stdout
    else:
        summary = run_sweep(cfg, sys.stdout)
        stream = sys.stderr
    out = _Printer(args.nats, stream)
    out.line("instances", summary.count)
    out.quantity("min_residual", summary.min_residual)
    out.line("violations", summary.violations)
    out.line("saturated", summary.saturated)
    if summary.first_violation:
        index, seed, rho, ms, report, params = summary.first_violation
        params = dict(params, instance_index=index, seed=seed)
        bundle = write_bundle(_bundle_path(args, report.inputs_digest), cfg.relation_id, rho, ms, params, report)
        out.line("counterexample", str(bundle))
        return 1
    return 0


def cmd_replay(args, printer):
    relation_id, rho, ms, params = read_bundle(args.bundle)
    keys = ("tolerance", "b_policy", "measured", "b_set")
    report = evaluate(relation_id, rho, ms, **{k: params[k] for k in keys if k in params})
    printer.report(report)
    return 0 if report.holds else 1


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    printer = _Printer(args.nats)
    handlers = {
        "entropy": lambda: cmd_entropy(args, printer),
        "coherence": lambda: cmd_coherence(args, printer, parser),
        "discord": lambda: cmd_discord(args, printer, parser),
        "multi": lambda: cmd_multi(args, printer, parser),
        "bound": lambda: cmd_bound(args, printer, parser),
        "sweep": lambda: cmd_sweep(args, printer),
        "replay": lambda: cmd_replay(args, printer),
    }
    try:
        return handlers[args.command]()
    except (QuantumInputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
