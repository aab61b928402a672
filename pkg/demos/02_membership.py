"""Which tensors are sub-Pfaffian tensors?

The image of a skew matrix under "all sub-Pfaffians" satisfies a family of
quadratic relations.  We test membership, look at the first broken relation
for the SWAP tensor, and confirm the four SWAP invariants.
"""

from __future__ import annotations

from pfcirc import enumerate_relations, invariants, membership, sub_pfaffian_gate, swap_gate
from pfcirc.pfaffian import LabeledSkewMatrix

for n in range(4, 9):
    print(f"n={n}: {len(enumerate_relations(n))} quadratic relations")

M = LabeledSkewMatrix.from_upper(4, [1, 2, 3, 4, 5, 6])
t = sub_pfaffian_gate(M)
print("\nsub-Pfaffian tensor of M:", membership(t, "gate").member)
print("scaled by 3 (cone only):", membership(t.scale(3), "gate").member, membership(t.scale(3), "gate", cone=True).member)

swap = swap_gate("ket")
rep = membership(swap, "gate")
print("\nSWAP member?", rep.member)
print("broken relation:", rep.relation)
print("its value      :", rep.value)

inv = invariants(swap)
print("\ninvariants of SWAP:", {k: str(v) for k, v in zip(("H", "detL", "detM", "detB"), inv.as_tuple())})
