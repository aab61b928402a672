from __future__ import annotations

import itertools

import pytest

from pfcirc.circuit import (
    COGATE,
    GATE,
    Circuit,
    CircuitError,
    EdgeOrder,
    NonElementaryError,
    OracleMismatch,
    apply_edge_basis_change,
    circuit_from_rotations,
    compile,
    dumps,
    edge_order_from_embedding,
    euler_characteristic,
    evaluate,
    evaluate_bruteforce,
    loads,
    make_vertex,
    substitute,
    trace_faces,
)
from pfcirc.exactfield import ONE, Scalar
from pfcirc.pfaffian import LabeledSkewMatrix, pair_value
from pfcirc.sampling import random_gl2
from pfcirc.tensor import QubitTensor, swap_gate
from pfcirc.topologies import (
    complete_bipartite_2k,
    cycle,
    digon,
    named_topologies,
    random_elementary_circuit,
    swap_host,
    with_random_matrices,
)


def test_digon_by_hand():
    # gate |00> + a|11>, cogate <11| + b<00|: value a + b
    c = circuit_from_rotations({"g": [1, 2]}, {"c": [2, 1]}, {"g": [3], "c": [5]})
    assert evaluate(c) == Scalar(8)
    assert evaluate_bruteforce(c) == Scalar(8)


def test_single_edge_with_zero_matrices():
    # gate |0>, cogate <1|: value 0
    c = circuit_from_rotations({"g": [1]}, {"c": [1]})
    assert evaluate(c) == evaluate_bruteforce(c) == Scalar(0)


def test_four_cycle_by_hand():
    # two gates, two cogates on a square; each vertex has one upper entry
    c = circuit_from_rotations(
        {"g1": [1, 2], "g2": [3, 4]},
        {"c1": [2, 3], "c2": [4, 1]},
        {"g1": [2], "g2": [3], "c1": [5], "c2": [7]},
    )
    # gate side: (|00> + 2|11>)(|00> + 3|11>) on edges (1,2),(3,4)
    # cogate side: (<11| + 5<00|)(<11| + 7<00|) on edges (2,3),(4,1)
    # surviving terms: all-zero (35), all-one (6), 1,2 only? no (c1 needs 2,3 equal)
    assert evaluate_bruteforce(c) == Scalar(35 + 6)
    assert evaluate(c) == Scalar(41)


@pytest.mark.parametrize("name", sorted(named_topologies()))
def test_named_topologies_match_oracle(name, rng):
    base = named_topologies()[name]
    for _ in range(3):
        c = with_random_matrices(base, rng, kind="int")
        assert evaluate(c) == evaluate_bruteforce(c)


def test_random_circuits_match_oracle(rng):
    for _ in range(60):
        _, c = random_elementary_circuit(rng, kind="field")
        assert evaluate(c, verify=True) == evaluate_bruteforce(c)


def test_order_is_a_closed_curve(rng):
    c = with_random_matrices(complete_bipartite_2k(4), rng)
    order = edge_order_from_embedding(c)
    want = evaluate_bruteforce(c)
    for k in range(len(order)):
        assert evaluate(c, order.rotated(k)) == want
        assert evaluate(c, order.rotated(k).reversed()) == want


def test_arbitrary_orders_can_fail(rng):
    # control: the Pfaffian formula depends on the curve, not just any labelling
    c = with_random_matrices(cycle(6), rng, bound=5)
    want = evaluate_bruteforce(c)
    wrong = 0
    for perm in itertools.permutations(c.edge_ids):
        if evaluate(c, EdgeOrder(perm)) != want:
            wrong += 1
    assert wrong > 0


def test_compile_shapes():
    c = with_random_matrices(digon(4), __import__("pfcirc").sampling.rng_from(3))
    X, T = compile(c, edge_order_from_embedding(c))
    assert X.size == T.size == 4
    assert pair_value(X, T) == evaluate_bruteforce(c)


def test_faces_and_euler():
    c = cycle(6)
    assert len(trace_faces(c)) == 2
    assert euler_characteristic(c) == 2


def test_nonplanar_rotation_rejected():
    ok = circuit_from_rotations({"g": [1, 2, 3]}, {"c": [3, 2, 1]})
    assert len(trace_faces(ok)) == 3
    with pytest.raises(CircuitError):
        circuit_from_rotations({"g": [1, 2, 3]}, {"c": [1, 2, 3]})


@pytest.mark.parametrize(
    "gates, cogates",
    [
        ({"g": [1, 2]}, {"c": [1]}),
        ({"g": [1], "h": [1]}, {}),
        ({"g": [1, 1]}, {"c": [1, 1]}),
    ],
)
def test_malformed_circuits(gates, cogates):
    with pytest.raises(CircuitError):
        circuit_from_rotations(gates, cogates)


def test_disconnected_product(rng):
    a = with_random_matrices(digon(2), rng)
    b = with_random_matrices(cycle(4), rng)
    rename = {v.name: v.name + "'" for v in b.vertices}
    shifted = [
        make_vertex(rename[v.name], v.side, [e + 10 for e in v.rotation], v.assignment) for v in b.vertices
    ]
    both = Circuit(a.vertices + tuple(shifted))
    assert len(both.components()) == 2
    assert evaluate(both) == evaluate(a) * evaluate(b)
    with pytest.raises(CircuitError):
        edge_order_from_embedding(both)


def test_isolated_vertices():
    g = make_vertex("g", GATE, [])
    c = Circuit((g,))
    assert evaluate(c) == ONE


def test_non_elementary_needs_oracle():
    c = substitute(swap_host(), "v", swap_gate("bra"))
    assert not c.is_elementary
    with pytest.raises(NonElementaryError):
        evaluate(c)
    evaluate_bruteforce(c)


def test_substitute_checks_shape():
    c = swap_host()
    with pytest.raises(CircuitError):
        substitute(c, "v", swap_gate("ket"))
    with pytest.raises(CircuitError):
        substitute(c, "v", QubitTensor.bra("00"))


def test_edge_basis_change_keeps_value(rng):
    c = with_random_matrices(complete_bipartite_2k(3), rng)
    changed = apply_edge_basis_change(c, {e: random_gl2(rng) for e in c.edge_ids})
    assert evaluate_bruteforce(changed) == evaluate(c)


def test_verify_raises_on_mismatch(rng):
    c = with_random_matrices(cycle(6), rng, bound=5)
    want = evaluate_bruteforce(c)
    bad = next(
        EdgeOrder(p) for p in itertools.permutations(c.edge_ids) if evaluate(c, EdgeOrder(p)) != want
    )
    with pytest.raises(OracleMismatch):
        evaluate(c, bad, verify=True)


def test_bruteforce_limit():
    with pytest.raises(CircuitError):
        evaluate_bruteforce(cycle(4), limit=3)


def test_json_roundtrip(rng):
    for c in named_topologies().values():
        c = with_random_matrices(c, rng, kind="field")
        back = loads(dumps(c))
        assert back == c
        assert evaluate(back) == evaluate(c)


def test_json_rejects_wrong_edges():
    import json

    data = json.loads(dumps(digon(2)))
    data["edges"][0]["ends"] = ["g", "g"]
    with pytest.raises(CircuitError):
        loads(json.dumps(data))


def test_vertex_sides():
    c = digon(3)
    assert {v.side for v in c.gates} == {GATE}
    assert {v.side for v in c.cogates} == {COGATE}
    assert isinstance(c.vertices[0].assignment, LabeledSkewMatrix)
