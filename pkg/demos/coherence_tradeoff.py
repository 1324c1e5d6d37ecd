"""How much coherence can a qubit hold in two bases at once?

Sweeps pure qubit states around the Bloch sphere and compares the summed
relative-entropy coherence in the Z and X bases with its lower bound.
"""

import numpy as np

from qcomplement import check_coherence_relation, ket_density, maximally_mixed, pauli_bases

z, x, y = pauli_bases()

print("theta/pi   C_Z + C_X    bound     residual")
for theta in np.linspace(0, np.pi, 9):
    rho = ket_density([np.cos(theta / 2), np.sin(theta / 2)])
    r = check_coherence_relation(rho, [z, x])
    print(f"{theta / np.pi:8.3f} {r.lhs:11.6f} {r.rhs:9.6f} {r.residual:11.2e}")

# Basis states of either measurement sit exactly on the bound.
# The maximally mixed state has no coherence and a bound of zero.
r = check_coherence_relation(maximally_mixed(2), [z, x, y])
print("\nI/2 with Z, X, Y:", f"lhs={r.lhs:.3g}", f"rhs={r.rhs:.3g}", "holds" if r.holds else "VIOLATED")
