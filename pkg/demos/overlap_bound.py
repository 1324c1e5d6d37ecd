"""The overlap quantity b for chains of qubit and qutrit measurements.

b is a maximum over chained overlaps, so it depends on the order of the
measurements. The brute-force oracle and the chain evaluation agree.
"""

import itertools

from qcomplement import bound_b, bound_b_oracle, bound_b_ordered, mub_family, sample_measurement

zxy = mub_family(2)
print("qubit MUB Z,X,Y: b =", bound_b_ordered(zxy).b)

f3 = mub_family(3)
print("qutrit MUB pair: b =", bound_b_ordered(f3[:2]).b)
print("qutrit 4 MUBs:   b =", bound_b_ordered(f3).b)

ms = [sample_measurement(3, seed) for seed in (11, 12, 13)]
print("\nrandom qutrit triple, every ordering:")
for perm in itertools.permutations(range(3)):
    print(" ", perm, f"{bound_b_ordered([ms[i] for i in perm]).b:.6f}")

best = bound_b(ms, "best-order")
print("best order", best.ordering, f"b={best.b:.6f}", f"-log2 b={best.neg_log2_b:.6f}")
print("oracle vs chain:", abs(bound_b_oracle(ms).b - bound_b_ordered(ms).b))
