"""Exact evaluation of planar Pfaffian circuits over Q(sqrt2, i).

The public names below are grouped by module; see the README for a tour.
"""

from __future__ import annotations

from .circuit import (
    COGATE,
    GATE,
    Circuit,
    CircuitError,
    EdgeOrder,
    NonElementaryError,
    Vertex,
    apply_edge_basis_change,
    circuit_from_rotations,
    compile,
    edge_order_from_embedding,
    evaluate,
    evaluate_bruteforce,
    make_vertex,
    substitute,
    trace_faces,
)
from .exactfield import I, ONE, SQRT2, ZERO, Scalar, as_scalar, format_scalar, parse_scalar
from .invariants import (
    InvariantVector,
    act,
    check_invariance,
    dual_invariants,
    invariants,
    phi,
    psi_involution,
    theta_map,
)
from .pfaffian import (
    LabeledSkewMatrix,
    all_sub_pfaffians,
    direct_sum_all,
    interleaved_direct_sum,
    pair_value,
    pfaffian,
    principal_minor,
    sub_pfaffian_cogate,
    sub_pfaffian_gate,
    twist,
)
from .swapsub import (
    ObstructionReport,
    SwapSolution,
    cogate_matrix,
    decompose_swap,
    demo_substitution,
    multi_swap_obstruction,
    reference_solution,
    sample_solution,
)
from .tensor import (
    QubitTensor,
    TwoByTwo,
    apply_basis_change,
    pairing,
    parity_projection,
    permute_legs,
    swap_gate,
    tensor_product,
)
from .varieties import (
    GPRelation,
    MembershipReport,
    enumerate_relations,
    is_cone_point,
    is_pfaffian_cogate_point,
    is_pfaffian_gate_point,
    membership,
)

__version__ = "0.1.0"
