"""Run every sweep config in configs/ and print the summaries.

Each config fixes its master seed, so rerunning this script reproduces the
CSV output byte for byte.
"""

import json
from pathlib import Path

from qcomplement.sweep import config_from_dict, run_sweep_to_string

here = Path(__file__).parent
for path in sorted((here / "configs").glob("*.json")):
    cfg = config_from_dict(json.loads(path.read_text()), base_dir=path.parent)
    _, summary = run_sweep_to_string(cfg)
    print(f"{path.name:24s} {cfg.relation_id:9s} n={summary.count:4d} "
          f"violations={summary.violations} min residual={summary.min_residual:.4f}")
