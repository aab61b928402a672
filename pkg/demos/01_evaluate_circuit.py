"""Evaluate a small planar circuit two ways and watch them agree.

A circuit is a bipartite planar graph: gates on one side, cogates on the
other, each carrying a skew-symmetric matrix.  Its value can be computed by
summing over every 0/1 edge labelling (exponential) or by a single Pfaffian
of a direct sum once the edges are put in a planar-compatible order.
"""

from __future__ import annotations

import itertools

from pfcirc import EdgeOrder, edge_order_from_embedding, evaluate, evaluate_bruteforce
from pfcirc.sampling import rng_from
from pfcirc.topologies import cycle, grid, with_random_matrices

rng = rng_from(3)

# A hexagon: three gates and three cogates around a single face pair.
hexagon = with_random_matrices(cycle(6), rng, bound=5)
for v in hexagon.vertices:
    print(f"{v.name:>4} {v.side:<6} legs={list(v.rotation)}")

fast = evaluate(hexagon)
slow = evaluate_bruteforce(hexagon)
print("Pfaffian value    :", fast)
print("brute-force value :", slow)
assert fast == slow

# The order is what makes it work.  Scramble it and count how often the
# Pfaffian of the compiled matrices drifts away from the true value.
order = edge_order_from_embedding(hexagon)
print("embedding order   :", list(order.sequence))
wrong = sum(evaluate(hexagon, EdgeOrder(p)) != slow for p in itertools.permutations(hexagon.edge_ids))
print(f"{wrong} of 720 arbitrary orders give a different number")

# A larger example where brute force is still affordable.
g = with_random_matrices(grid(3, 3), rng)
print(f"3x3 grid with {len(g.edges)} edges:", evaluate(g), "==", evaluate_bruteforce(g))
