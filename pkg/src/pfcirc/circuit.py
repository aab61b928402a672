"""Pfaffian circuits: data model, planar edge ordering, compilation, evaluation.

A circuit is a plane bipartite graph given by a rotation system.  Every
vertex lists its incident edge ids in cyclic (counterclockwise) order, and
leg ``k`` of the vertex tensor sits on ``rotation[k-1]``.  Gate vertices
carry all-ket tensors, cogate vertices all-bra tensors.  A vertex is
*elementary* when it carries a skew matrix ``M`` (meaning ``sPf(M)`` or
``sPf_cogate(M)``, legs in rotation order).

The fast evaluation labels the edges along a closed curve that crosses every
edge once, with all gates on one side and all cogates on the other.  The
curve is the boundary of a thickened spanning tree that joins the gates
through the faces they share.  Along such a curve each vertex's edges appear
in dihedral order, so each vertex matrix can be relabelled without sign
bookkeeping; see :func:`compile`.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence, Union

from .exactfield import ONE, Scalar
from .pfaffian import (
    LabeledSkewMatrix,
    direct_sum_all,
    matrix_from_json,
    matrix_to_json,
    pair_value,
    sub_pfaffian_cogate,
    sub_pfaffian_gate,
)
from .tensor import (
    BRA,
    KET,
    QubitTensor,
    TwoByTwo,
    apply_basis_change,
    pairing,
    permute_legs,
    tensor_from_json,
    tensor_product_all,
    tensor_to_json,
)

GATE = "gate"
COGATE = "cogate"
BRUTEFORCE_EDGE_LIMIT = 16

Assignment = Union[LabeledSkewMatrix, QubitTensor]


class CircuitError(ValueError):
    """Structurally invalid circuit (not bipartite, not planar, bad arity...)."""


class NonElementaryError(CircuitError):
    """The fast path needs every vertex to carry a skew matrix."""


class OracleMismatch(AssertionError):
    """Pfaffian evaluation disagreed with the brute-force pairing."""


@dataclass(frozen=True)
class Vertex:
    name: str
    side: str
    rotation: tuple[int, ...]
    assignment: Assignment

    @property
    def degree(self) -> int:
        return len(self.rotation)

    @property
    def is_elementary(self) -> bool:
        return isinstance(self.assignment, LabeledSkewMatrix)

    def tensor(self) -> QubitTensor:
        """The vertex tensor with leg k on ``rotation[k-1]``."""
        a = self.assignment
        if isinstance(a, LabeledSkewMatrix):
            return sub_pfaffian_gate(a) if self.side == GATE else sub_pfaffian_cogate(a)
        return a


def _check_assignment(side: str, degree: int, a: Assignment, name: str):
    if isinstance(a, LabeledSkewMatrix):
        if a.size != degree:
            raise CircuitError(f"vertex {name}: matrix size {a.size} != degree {degree}")
    elif isinstance(a, QubitTensor):
        if a.arity != degree:
            raise CircuitError(f"vertex {name}: tensor arity {a.arity} != degree {degree}")
        want = KET if side == GATE else BRA
        if any(v != want for v in a.variance):
            raise CircuitError(f"vertex {name}: {side} tensors must be all-{'ket' if want == KET else 'bra'}")
    else:
        raise CircuitError(f"vertex {name}: unsupported assignment {type(a).__name__}")


@dataclass(frozen=True, eq=False)
class Circuit:
    """Immutable plane bipartite circuit."""

    vertices: tuple[Vertex, ...]
    edges: Mapping[int, tuple[str, str]] = field(init=False)

    def __post_init__(self):
        names = [v.name for v in self.vertices]
        if len(set(names)) != len(names):
            raise CircuitError("vertex names must be unique")
        ends: dict[int, list[str]] = {}
        for v in self.vertices:
            if v.side not in (GATE, COGATE):
                raise CircuitError(f"vertex {v.name}: side must be 'gate' or 'cogate'")
            if len(set(v.rotation)) != len(v.rotation):
                raise CircuitError(f"vertex {v.name}: repeated edge in rotation")
            _check_assignment(v.side, v.degree, v.assignment, v.name)
            for e in v.rotation:
                ends.setdefault(e, []).append(v.name)
        side = {v.name: v.side for v in self.vertices}
        edges = {}
        for e in sorted(ends):
            if len(ends[e]) != 2:
                raise CircuitError(f"edge {e} has {len(ends[e])} endpoints, expected 2")
            a, b = ends[e]
            if side[a] == side[b]:
                raise CircuitError(f"edge {e} joins two {side[a]} vertices")
            if side[a] == COGATE:
                a, b = b, a
            edges[e] = (a, b)
        object.__setattr__(self, "edges", edges)
        _check_planar(self)

    # -- access -----------------------------------------------------------

    def vertex(self, name: str) -> Vertex:
        for v in self.vertices:
            if v.name == name:
                return v
        raise KeyError(name)

    @property
    def edge_ids(self) -> list[int]:
        return sorted(self.edges)

    @property
    def gates(self) -> list[Vertex]:
        return [v for v in self.vertices if v.side == GATE]

    @property
    def cogates(self) -> list[Vertex]:
        return [v for v in self.vertices if v.side == COGATE]

    @property
    def is_elementary(self) -> bool:
        return all(v.is_elementary for v in self.vertices)

    def with_assignment(self, name: str, a: Assignment) -> "Circuit":
        return Circuit(tuple(replace(v, assignment=a) if v.name == name else v for v in self.vertices))

    def components(self) -> list["Circuit"]:
        """Connected components as separate circuits (isolated vertices included)."""
        adj: dict[str, set[str]] = {v.name: set() for v in self.vertices}
        for a, b in self.edges.values():
            adj[a].add(b)
            adj[b].add(a)
        seen: set[str] = set()
        out = []
        for v in self.vertices:
            if v.name in seen:
                continue
            comp = {v.name}
            todo = [v.name]
            while todo:
                x = todo.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        todo.append(y)
            seen |= comp
            out.append(Circuit(tuple(w for w in self.vertices if w.name in comp)))
        return out

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self) -> str:
        parts = ", ".join(f"{v.name}:{v.side[0]}{list(v.rotation)}" for v in self.vertices)
        return f"Circuit({parts})"


# -- faces and planarity ------------------------------------------------------


def _rotation_maps(c: Circuit):
    rot = {v.name: v.rotation for v in c.vertices}
    pos = {v.name: {e: k for k, e in enumerate(v.rotation)} for v in c.vertices}
    return rot, pos


def trace_faces(c: Circuit) -> list[list[tuple[str, int]]]:
    """Faces of the embedding as lists of corners ``(vertex, k)``.

    Corner ``k`` at vertex ``w`` lies between ``rotation[k]`` and
    ``rotation[k+1]``.  A dart along edge ``e`` into ``w`` continues along
    the successor of ``e`` at ``w``.  Isolated vertices get one face each.
    """
    rot, pos = _rotation_maps(c)
    other = {}
    for e, (a, b) in c.edges.items():
        other[(e, a)] = b
        other[(e, b)] = a
    seen: set[tuple[int, str]] = set()
    faces = []
    for v in c.vertices:
        if not v.rotation:
            faces.append([])
            continue
        for e in v.rotation:
            if (e, v.name) in seen:
                continue
            face = []
            dart = (e, v.name)
            while dart not in seen:
                seen.add(dart)
                e0, u = dart
                w = other[(e0, u)]
                k = pos[w][e0]
                face.append((w, k))
                nxt = rot[w][(k + 1) % len(rot[w])]
                dart = (nxt, w)
            faces.append(face)
    return faces


def _check_planar(c: Circuit):
    faces = trace_faces(c)
    n_comp = _count_components(c)
    V, E, F = len(c.vertices), len(c.edges), len(faces)
    # faces are traced per component, so each planar component adds 2
    expected = 2 * n_comp
    if V - E + F != expected:
        raise CircuitError(f"rotation system is not planar: V-E+F = {V - E + F}, expected {expected}")


def _count_components(c: Circuit) -> int:
    parent = {v.name: v.name for v in c.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in c.edges.values():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in parent})


def euler_characteristic(c: Circuit) -> int:
    """``V - E + F`` summed over components (2 per component when planar)."""
    return len(c.vertices) - len(c.edges) + len(trace_faces(c))


# -- edge order -----------------------------------------------------------------


@dataclass(frozen=True)
class EdgeOrder:
    """Bijection from edge ids to positions ``1..|E|``."""

    sequence: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("edge order repeats an edge")

    @property
    def position(self) -> dict[int, int]:
        return {e: k + 1 for k, e in enumerate(self.sequence)}

    def __len__(self) -> int:
        return len(self.sequence)

    def rotated(self, shift: int) -> "EdgeOrder":
        if not self.sequence:
            return self
        s = shift % len(self.sequence)
        return EdgeOrder(self.sequence[s:] + self.sequence[:s])

    def reversed(self) -> "EdgeOrder":
        return EdgeOrder(tuple(reversed(self.sequence)))

    def check_against(self, c: Circuit):
        if sorted(self.sequence) != c.edge_ids:
            raise ValueError("edge order is not a bijection onto the circuit's edges")


def edge_order_from_embedding(c: Circuit, start: int | None = None) -> EdgeOrder:
    """Crossing order of a closed curve separating gates from cogates.

    Gates and faces are joined into a tree (breadth-first, through corners).
    Walking around the boundary of the thickened tree crosses every edge
    once, counterclockwise around each gate.  The walk begins with edge
    ``start`` (default: the smallest edge id).
    """
    if not c.edges:
        return EdgeOrder(())
    if not c.is_connected:
        raise CircuitError("edge ordering needs a connected circuit; evaluate() splits components")
    rot, pos = _rotation_maps(c)
    faces = trace_faces(c)
    side = {v.name: v.side for v in c.vertices}
    face_of: dict[tuple[str, int], int] = {}
    for f, corners in enumerate(faces):
        for corner in corners:
            face_of[corner] = f

    first = start if start is not None else min(c.edges)
    if first not in c.edges:
        raise ValueError(f"unknown start edge {first}")
    root = c.edges[first][0]

    # breadth-first tree over gates and faces
    tree_corners: set[tuple[str, int]] = set()
    seen_gate = {root}
    seen_face: set[int] = set()
    queue: deque = deque([("g", root)])
    while queue:
        kind, x = queue.popleft()
        if kind == "g":
            for k in range(len(rot[x])):
                f = face_of[(x, k)]
                if f not in seen_face:
                    seen_face.add(f)
                    tree_corners.add((x, k))
                    queue.append(("f", f))
        else:
            for w, k in faces[x]:
                if side[w] == GATE and w not in seen_gate:
                    seen_gate.add(w)
                    tree_corners.add((w, k))
                    queue.append(("g", w))

    # tree corners of each face, in face order
    ring: dict[int, list[tuple[str, int]]] = {}
    for f, corners in enumerate(faces):
        ring[f] = [cn for cn in corners if cn in tree_corners]
    hop: dict[tuple[str, int], tuple[str, int]] = {}
    for f, cs in ring.items():
        for i, cn in enumerate(cs):
            hop[cn] = cs[(i - 1) % len(cs)]

    order = []
    u, k = root, pos[root][first]
    total = len(c.edges)
    while len(order) < total:
        order.append(rot[u][k])
        corner = (u, k)
        if corner in tree_corners:
            u, k = hop[corner]
        k = (k + 1) % len(rot[u])
    if sorted(order) != c.edge_ids:
        raise CircuitError("boundary walk did not cross every edge exactly once")
    return EdgeOrder(tuple(order))


# -- compilation and evaluation ---------------------------------------------------


def _relabel_vertex(v: Vertex, position: Mapping[int, int]) -> LabeledSkewMatrix:
    # Entry (a, b) with a < b in global order is the local upper entry of the
    # pair of legs.  This absorbs the permutation sign for dihedral leg orders.
    M = v.assignment
    legs = {position[e]: k for k, e in enumerate(v.rotation)}
    labels = sorted(legs)
    upper = {}
    for i, la in enumerate(labels):
        for j in range(i + 1, len(labels)):
            lb = labels[j]
            p, q = legs[la], legs[lb]
            x = M.entries[min(p, q)][max(p, q)]
            if x:
                upper[(i + 1, j + 1)] = x
    return LabeledSkewMatrix.from_upper(labels, upper)


def compile(c: Circuit, order: EdgeOrder) -> tuple[LabeledSkewMatrix, LabeledSkewMatrix]:
    """Combined gate matrix ``X`` and cogate matrix ``T`` under ``order``."""
    order.check_against(c)
    bad = [v.name for v in c.vertices if not v.is_elementary]
    if bad:
        raise NonElementaryError(f"non-elementary vertices: {', '.join(bad)}")
    position = order.position
    X = direct_sum_all([_relabel_vertex(v, position) for v in c.gates])
    T = direct_sum_all([_relabel_vertex(v, position) for v in c.cogates])
    if not X.labels:
        X = LabeledSkewMatrix.empty()
    if not T.labels:
        T = LabeledSkewMatrix.empty()
    return X, T


def _isolated_value(v: Vertex) -> Scalar:
    return v.tensor().coeffs[0]


def evaluate(c: Circuit, order: EdgeOrder | None = None, verify: bool = False) -> Scalar:
    """Circuit value through a single Pfaffian per connected component.

    With an explicit ``order`` the whole circuit is compiled at once under
    that labelling.  ``verify`` compares with :func:`evaluate_bruteforce`
    and raises :class:`OracleMismatch` on disagreement.
    """
    if order is not None:
        X, T = compile(c, order)
        value = pair_value(X, T)
    else:
        value = ONE
        for comp in c.components():
            if not comp.edges:
                value = value * _isolated_value(comp.vertices[0])
                continue
            X, T = compile(comp, edge_order_from_embedding(comp))
            value = value * pair_value(X, T)
    if verify:
        oracle = evaluate_bruteforce(c)
        if oracle != value:
            raise OracleMismatch(f"pfaffian value {value} != brute-force value {oracle}")
    return value


def _side_tensor(vs: Sequence[Vertex], edge_ids: Sequence[int]) -> QubitTensor:
    t = tensor_product_all(v.tensor() for v in vs)
    legs = [e for v in vs for e in v.rotation]
    where = {e: k + 1 for k, e in enumerate(legs)}
    return permute_legs(t, [where[e] for e in edge_ids])


def evaluate_bruteforce(c: Circuit, limit: int = BRUTEFORCE_EDGE_LIMIT) -> Scalar:
    """Full pairing of the gate-side tensor against the cogate-side tensor."""
    if len(c.edges) > limit:
        raise CircuitError(f"brute force limited to {limit} edges, circuit has {len(c.edges)}")
    ids = c.edge_ids
    return pairing(_side_tensor(c.cogates, ids), _side_tensor(c.gates, ids))


# -- transformations -----------------------------------------------------------------


def substitute(c: Circuit, vertex: str, t: Assignment) -> Circuit:
    """Copy of ``c`` with the assignment at ``vertex`` replaced."""
    v = c.vertex(vertex)
    if isinstance(t, QubitTensor):
        if t.arity != v.degree:
            raise CircuitError(f"arity {t.arity} does not match degree {v.degree} of {vertex}")
        want = KET if v.side == GATE else BRA
        if any(x != want for x in t.variance):
            raise CircuitError(f"variance {t.variance!r} does not match {v.side} vertex {vertex}")
    return c.with_assignment(vertex, t)


def apply_edge_basis_change(c: Circuit, changes: Mapping[int, TwoByTwo]) -> Circuit:
    """Act with ``g`` on edge ``e``: ``g`` on the gate leg, ``g^-1`` on the cogate leg.

    The pairing, and so the circuit value, is unchanged.  Touched vertices
    become general (tensor) assignments.
    """
    vertices = []
    for v in c.vertices:
        touched = [e for e in v.rotation if e in changes]
        if not touched:
            vertices.append(v)
            continue
        if v.side == GATE:
            mats = [changes.get(e) for e in v.rotation]
        else:
            mats = [changes[e].inverse() if e in changes else None for e in v.rotation]
        vertices.append(replace(v, assignment=apply_basis_change(v.tensor(), mats)))
    for e in changes:
        if e not in c.edges:
            raise CircuitError(f"unknown edge {e}")
    return Circuit(tuple(vertices))


# -- construction helpers ------------------------------------------------------------


def make_vertex(name: str, side: str, rotation: Iterable[int], assignment: Assignment | Sequence | None = None) -> Vertex:
    """Vertex with a skew matrix given by upper entries (default: zero matrix)."""
    rotation = tuple(rotation)
    if assignment is None:
        assignment = LabeledSkewMatrix.zero(len(rotation))
    elif not isinstance(assignment, (LabeledSkewMatrix, QubitTensor)):
        assignment = LabeledSkewMatrix.from_upper(len(rotation), assignment)
    return Vertex(name, side, rotation, assignment)


def circuit_from_rotations(
    gates: Mapping[str, Sequence[int]],
    cogates: Mapping[str, Sequence[int]],
    assignments: Mapping[str, Assignment | Sequence] | None = None,
) -> Circuit:
    assignments = assignments or {}
    vs = [make_vertex(n, GATE, r, assignments.get(n)) for n, r in gates.items()]
    vs += [make_vertex(n, COGATE, r, assignments.get(n)) for n, r in cogates.items()]
    return Circuit(tuple(vs))


# -- JSON ------------------------------------------------------------------------------


def circuit_to_json(c: Circuit) -> dict:
    vs = []
    for v in c.vertices:
        entry: dict = {"name": v.name, "side": v.side, "rotation": list(v.rotation)}
        if v.is_elementary:
            entry["matrix"] = matrix_to_json(v.assignment)
        else:
            entry["tensor"] = tensor_to_json(v.assignment)
        vs.append(entry)
    edges = [{"id": e, "ends": list(ab)} for e, ab in sorted(c.edges.items())]
    return {"vertices": vs, "edges": edges}


def circuit_from_json(obj: Mapping) -> Circuit:
    vs = []
    for entry in obj["vertices"]:
        rotation = tuple(int(e) for e in entry["rotation"])
        if "matrix" in entry:
            a = matrix_from_json(entry["matrix"])
            if a.labels != tuple(range(1, len(rotation) + 1)):
                a = a.relabel(range(1, a.size + 1))
        elif "tensor" in entry:
            a = tensor_from_json(entry["tensor"])
        else:
            a = LabeledSkewMatrix.zero(len(rotation))
        vs.append(Vertex(str(entry["name"]), str(entry["side"]), rotation, a))
    c = Circuit(tuple(vs))
    for item in obj.get("edges", []):
        e = int(item["id"])
        ends = set(item["ends"])
        if e not in c.edges or set(c.edges[e]) != ends:
            raise CircuitError(f"edge {e} endpoints {sorted(ends)} disagree with the rotations")
    if "edges" in obj and len(obj["edges"]) != len(c.edges):
        raise CircuitError("edge list does not match the rotations")
    return c


def dumps(c: Circuit) -> str:
    return json.dumps(circuit_to_json(c), indent=1)


def loads(text: str) -> Circuit:
    return circuit_from_json(json.loads(text))
