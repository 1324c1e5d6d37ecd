"""Four qubits: A is measured in turn by Z, X and Y while B1..B3 hold memory.

Compares the summed post-measurement conditional entropies against the two
choices of which measurements enter b, over a small random ensemble.
"""

import numpy as np

from qcomplement import EnsembleConfig, check_multipartite_conditional, ghz_state, pauli_bases
from qcomplement.ensembles import iter_states

zxy = list(pauli_bases())

cfg = EnsembleConfig((2, 2, 2, 2), "haar_pure", count=100, seed=2024)
res = {"memory": [], "all": []}
for _, _, rho in iter_states(cfg):
    for b_set in res:
        res[b_set].append(check_multipartite_conditional(rho, zxy, b_set=b_set).residual)

for b_set, vals in res.items():
    vals = np.array(vals)
    print(f"b from {b_set:6s}: min residual {vals.min():.4f}, mean {vals.mean():.4f}")

# A GHZ state on four qubits: Z on A leaves B1 certain, X and Y do not.
r = check_multipartite_conditional(ghz_state(4), zxy)
print("\nGHZ4 terms:", np.round(r.terms["post_measurement_conditional_entropies"], 6))
print("lhs", round(r.lhs, 6), "rhs", round(r.rhs, 6))
