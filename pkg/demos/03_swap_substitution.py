"""Replace one cogate by a SWAP without changing the circuit value.

SWAP itself is not a sub-Pfaffian tensor, but after a change of basis on
two of its legs its even part is.  The odd part cancels whenever the host
circuit has an even number of edges.
"""

from __future__ import annotations

from pfcirc import cogate_matrix, demo_substitution, multi_swap_obstruction, reference_solution, pfaffian
from pfcirc.sampling import rng_from
from pfcirc.swapsub import random_solution
from pfcirc.topologies import swap_hosts, with_random_matrices

sol = reference_solution()
print("M =", sol.M)
print("N =", sol.N)
S = cogate_matrix(sol)
print("cogate matrix upper entries:", [str(v) for v in S.upper().values()])
print("Pf =", pfaffian(S))

rng = rng_from(7)
for host in swap_hosts():
    c = with_random_matrices(host, rng)
    r = demo_substitution(c, "v", sol)
    print(f"{len(c.edges):2d} edges: before={r.value_before}  after={r.value_after}  equal={r.equal}")

# Any point of the chart works too.
other = random_solution(rng)
print("\nrandom chart point still substitutes:", demo_substitution(with_random_matrices(swap_hosts()[0], rng), "v", other).equal)

# Two SWAPs at once do not: the product leaves the cone.
rep = multi_swap_obstruction(2, [sol, other])
print("\ntwo SWAPs in the cone?", rep.cone_member)
print("witness:", rep.relation)
