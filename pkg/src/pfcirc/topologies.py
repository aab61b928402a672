"""A small library of plane bipartite circuit topologies.

Most topologies come from straight-line drawings: each vertex's rotation is
its incident edges sorted by angle, counterclockwise.  Parallel edges
cannot be drawn straight, so the digon family is written down directly.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping, Sequence

from .circuit import COGATE, GATE, Circuit, Vertex, make_vertex
from .pfaffian import LabeledSkewMatrix
from .sampling import random_skew, rng_from


def from_drawing(
    points: Mapping[str, tuple[float, float]],
    sides: Mapping[str, str],
    edges: Sequence[tuple[str, str]],
) -> Circuit:
    """Circuit from a crossing-free straight-line drawing (edge ids 1..E)."""
    incident: dict[str, list[tuple[float, int]]] = {name: [] for name in points}
    for eid, (a, b) in enumerate(edges, start=1):
        for x, y in ((a, b), (b, a)):
            (x0, y0), (x1, y1) = points[x], points[y]
            incident[x].append((math.atan2(y1 - y0, x1 - x0), eid))
    vs = []
    for name in points:
        rotation = [e for _, e in sorted(incident[name])]
        vs.append(make_vertex(name, sides[name], rotation))
    return Circuit(tuple(vs))


def single_edge() -> Circuit:
    return Circuit((make_vertex("g", GATE, [1]), make_vertex("c", COGATE, [1])))


def digon(k: int = 2) -> Circuit:
    """One gate and one cogate joined by ``k`` parallel edges."""
    return Circuit((make_vertex("g", GATE, range(1, k + 1)), make_vertex("c", COGATE, range(k, 0, -1))))


def cycle(n_edges: int) -> Circuit:
    if n_edges < 2 or n_edges % 2:
        raise ValueError("a bipartite cycle needs an even number of edges")
    if n_edges == 2:
        return digon(2)
    pts, sides = {}, {}
    for k in range(n_edges):
        name = f"v{k}"
        pts[name] = (math.cos(2 * math.pi * k / n_edges), math.sin(2 * math.pi * k / n_edges))
        sides[name] = GATE if k % 2 == 0 else COGATE
    edges = [(f"v{k}", f"v{(k + 1) % n_edges}") for k in range(n_edges)]
    return from_drawing(pts, sides, edges)


def complete_bipartite_2k(k: int) -> Circuit:
    """``K_{2,k}``: two gates above and below a row of ``k`` cogates (``k = 3`` is the theta graph)."""
    pts = {"g0": (0.0, 1.0), "g1": (0.0, -1.0)}
    sides = {"g0": GATE, "g1": GATE}
    edges = []
    for i in range(k):
        name = f"c{i}"
        pts[name] = (i - (k - 1) / 2, 0.0)
        sides[name] = COGATE
        edges += [("g0", name), ("g1", name)]
    return from_drawing(pts, sides, edges)


def star(k: int, center: str = GATE) -> Circuit:
    leaf = COGATE if center == GATE else GATE
    pts = {"hub": (0.0, 0.0)}
    sides = {"hub": center}
    edges = []
    for i in range(k):
        pts[f"l{i}"] = (math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k))
        sides[f"l{i}"] = leaf
        edges.append(("hub", f"l{i}"))
    return from_drawing(pts, sides, edges)


def grid(width: int, height: int, keep: Callable[[tuple, tuple], bool] | None = None) -> Circuit:
    """Grid graph, gates on even ``x+y``; ``keep`` filters the edges."""
    pts, sides = {}, {}
    for x in range(width):
        for y in range(height):
            pts[f"p{x}_{y}"] = (float(x), float(y))
            sides[f"p{x}_{y}"] = GATE if (x + y) % 2 == 0 else COGATE
    edges = []
    for x in range(width):
        for y in range(height):
            for dx, dy in ((1, 0), (0, 1)):
                u, v = (x, y), (x + dx, y + dy)
                if v[0] < width and v[1] < height and (keep is None or keep(u, v)):
                    edges.append((f"p{u[0]}_{u[1]}", f"p{v[0]}_{v[1]}"))
    used = {n for e in edges for n in e}
    pts = {n: p for n, p in pts.items() if n in used}
    return from_drawing(pts, sides, edges)


def ladder(rungs: int) -> Circuit:
    return grid(rungs, 2)


def swap_host(extra: int = 0) -> Circuit:
    """Degree-4 cogate ``v`` against two degree-2 gates on edges (1,2) and (3,4).

    With ``extra > 0`` the gate ``a`` gets ``extra`` further legs, each
    continued by a degree-2 cogate and a degree-1 gate.  The edge count stays
    even, as the substitution argument needs.
    """
    a_rot = [2, 1] + [3 + 2 * i for i in range(1, extra + 1)]
    vs = [
        make_vertex("v", COGATE, [1, 2, 3, 4]),
        make_vertex("a", GATE, a_rot),
        make_vertex("b", GATE, [4, 3]),
    ]
    for i in range(1, extra + 1):
        vs.append(make_vertex(f"t{i}", COGATE, [3 + 2 * i, 4 + 2 * i]))
        vs.append(make_vertex(f"u{i}", GATE, [4 + 2 * i]))
    return Circuit(tuple(vs))


def swap_host_digon() -> Circuit:
    """Degree-4 cogate ``v`` against a single degree-4 gate."""
    return Circuit((make_vertex("v", COGATE, [1, 2, 3, 4]), make_vertex("a", GATE, [4, 3, 2, 1])))


def swap_hosts() -> list[Circuit]:
    return [swap_host(0), swap_host(1), swap_host(2), swap_host_digon()]


def named_topologies() -> dict[str, Circuit]:
    """Fixed catalogue, every member has at most 10 edges."""
    return {
        "edge": single_edge(),
        "digon2": digon(2),
        "digon4": digon(4),
        "cycle4": cycle(4),
        "cycle6": cycle(6),
        "cycle10": cycle(10),
        "theta": complete_bipartite_2k(3),
        "k2_4": complete_bipartite_2k(4),
        "k2_5": complete_bipartite_2k(5),
        "star5": star(5),
        "costar4": star(4, COGATE),
        "ladder3": ladder(3),
        "ladder4": ladder(4),
        "grid3x3_plus": grid(3, 3, keep=lambda u, v: (1, 1) in (u, v) or u[1] == v[1] == 0),
        "swap_host": swap_host(),
        "swap_host_ext": swap_host(2),
        "swap_host_digon": swap_host_digon(),
    }


def random_grid_topology(rng, max_edges: int = 10, size: tuple[int, int] = (4, 4)) -> Circuit:
    """Random connected subgraph of a grid with at most ``max_edges`` edges."""
    rng = rng_from(rng)
    w, h = size
    all_edges = []
    for x in range(w):
        for y in range(h):
            if x + 1 < w:
                all_edges.append(((x, y), (x + 1, y)))
            if y + 1 < h:
                all_edges.append(((x, y), (x, y + 1)))
    target = int(rng.integers(1, max_edges + 1))
    start = (int(rng.integers(0, w)), int(rng.integers(0, h)))
    chosen: list = []
    reached = {start}
    while len(chosen) < target:
        frontier = [e for e in all_edges if e not in chosen and (e[0] in reached or e[1] in reached)]
        if not frontier:
            break
        e = frontier[int(rng.integers(0, len(frontier)))]
        chosen.append(e)
        reached |= {e[0], e[1]}
    keep = set(chosen)
    return grid(w, h, keep=lambda u, v: (u, v) in keep)


def with_random_matrices(c: Circuit, rng, kind: str = "int", bound: int = 4) -> Circuit:
    """Same topology, fresh random skew matrix at every vertex."""
    rng = rng_from(rng)
    vs = [Vertex(v.name, v.side, v.rotation, random_skew(rng, v.degree, kind, bound)) for v in c.vertices]
    return Circuit(tuple(vs))


def random_elementary_circuit(rng, max_edges: int = 10, kind: str = "int") -> tuple[str, Circuit]:
    """Random topology (catalogue or random grid subgraph) with random entries."""
    rng = rng_from(rng)
    catalogue = named_topologies()
    names = sorted(catalogue)
    pick = int(rng.integers(0, len(names) + 4))
    if pick < len(names):
        name = names[pick]
        topo = catalogue[name]
    else:
        name = "grid"
        topo = random_grid_topology(rng, max_edges)
    return name, with_random_matrices(topo, rng, kind)


def zero_matrix_circuit(c: Circuit) -> Circuit:
    return Circuit(tuple(Vertex(v.name, v.side, v.rotation, LabeledSkewMatrix.zero(v.degree)) for v in c.vertices))
