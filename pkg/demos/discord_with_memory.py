"""Thermal discord of a Werner family under two complementary measurements.

Mixing a Bell state with white noise lowers the discord in each basis. The
bound on their sum moves with -S(A|B), so it rises past -log2 b only once
the state is entangled enough for S(A|B) to go negative.
"""

import numpy as np

from qcomplement import (
    bell_state,
    check_discord_relation,
    conditional_entropy,
    pauli_bases,
    validate_density,
)

z, x, _ = pauli_bases()
bell = bell_state().matrix

print("   p    D_Z+D_X     bound   S(A|B)  saturated")
for p in np.linspace(0, 1, 11):
    rho = validate_density(p * bell + (1 - p) * np.eye(4) / 4, (2, 2))
    r = check_discord_relation(rho, [z, x], measured=0, memory=[1])
    print(f"{p:5.2f} {r.lhs:9.5f} {r.rhs:9.5f} {conditional_entropy(rho, [1]):8.4f}  {r.saturated}")
