"""Replacing one Pfaffian cogate by a SWAP gate.

Write ``M = (a b; c d)`` and ``N = (e f; g h)``.  The basis-changed SWAP
covector ``SWAP o (M x N x I x I)`` splits as ``P + Q`` with ``P`` its even
part and ``Q`` its odd part.  ``P`` is a Pfaffian cogate exactly when
``dh = 1`` and ``ae = bcfg`` (with ``det M = det N = 1``).  Because ``Q`` is
orthogonal to every even-support vector, a circuit cogate equal to
``P o (M^-1 x N^-1 x I x I)`` can be swapped for SWAP without changing the
circuit value.

Solutions are parametrised by ``(b, c, f, d)`` with ``f, d != 0``::

    h = 1/d,  a = (1 + bc)/d,  e = -bc*d,  g = -(1 + bc)/f.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import COGATE, Circuit, apply_edge_basis_change, evaluate, evaluate_bruteforce, substitute
from .exactfield import ONE, SQRT2, Scalar, as_scalar
from .pfaffian import LabeledSkewMatrix, sub_pfaffian_cogate
from .sampling import random_scalar, rng_from
from .tensor import QubitTensor, TwoByTwo, apply_basis_change, parity_projection, swap_gate, tensor_product_all
from .varieties import GPRelation, membership


class DegenerateParameters(ValueError):
    """Parameters on the excluded locus of the solution chart."""


def basis_changed_swap(M: TwoByTwo, N: TwoByTwo) -> QubitTensor:
    """``SWAP o (M x N x I x I)`` as a bra tensor."""
    return apply_basis_change(swap_gate("bra"), [M, N, None, None])


def decompose_swap(M: TwoByTwo, N: TwoByTwo) -> tuple[QubitTensor, QubitTensor]:
    """``(P, Q)``: even and odd parts of the basis-changed SWAP."""
    s = basis_changed_swap(M, N)
    return parity_projection(s, "even"), parity_projection(s, "odd")


def cogate_matrix_of(P: QubitTensor) -> LabeledSkewMatrix:
    """Skew ``S`` with ``sPf_cogate(S) = P``, read off the pair coordinates.

    ``S_ij`` is the coefficient of the complement of ``{i, j}``, divided by
    the coefficient of ``<1...1|``.  Raises if ``P`` is not a cogate point.
    """
    n = P.arity
    full = (1 << n) - 1
    base = P.coeffs[full]
    if not base:
        raise ValueError("coefficient of <1...1| vanishes; not on the normalised chart")
    k = base.inverse()
    upper = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            upper[(i, j)] = P.coeffs[full ^ (1 << (i - 1)) ^ (1 << (j - 1))] * k
    S = LabeledSkewMatrix.from_upper(n, upper)
    if sub_pfaffian_cogate(S).scale(base) != P:
        raise ValueError("tensor is not a Pfaffian cogate point")
    return S


@dataclass(frozen=True)
class SwapSolution:
    M: TwoByTwo
    N: TwoByTwo
    S: LabeledSkewMatrix

    @property
    def entries(self) -> dict[str, Scalar]:
        a, b, c, d = self.M.a, self.M.b, self.M.c, self.M.d
        e, f, g, h = self.N.a, self.N.b, self.N.c, self.N.d
        return dict(a=a, b=b, c=c, d=d, e=e, f=f, g=g, h=h)

    def check(self) -> list[str]:
        """Names of violated defining conditions (empty when valid)."""
        x = self.entries
        bad = []
        if self.M.det() != ONE:
            bad.append("det M = 1")
        if self.N.det() != ONE:
            bad.append("det N = 1")
        if x["d"] * x["h"] != ONE:
            bad.append("dh = 1")
        if x["a"] * x["e"] != x["b"] * x["c"] * x["f"] * x["g"]:
            bad.append("ae = bcfg")
        P, Q = decompose_swap(self.M, self.N)
        if sub_pfaffian_cogate(self.S) != P:
            bad.append("sPf_cogate(S) = P")
        if parity_projection(Q, "even") != QubitTensor.zero("bbbb"):
            bad.append("Q odd")
        return bad


def solution_from_matrices(M: TwoByTwo, N: TwoByTwo) -> SwapSolution:
    P, _ = decompose_swap(M, N)
    sol = SwapSolution(M, N, cogate_matrix_of(P))
    bad = sol.check()
    if bad:
        raise ValueError(f"not a solution: fails {', '.join(bad)}")
    return sol


def sample_solution(params: Sequence) -> SwapSolution:
    """Solution from the free parameters ``(b, c, f, d)``."""
    if len(params) != 4:
        raise ValueError("need four parameters (b, c, f, d)")
    b, c, f, d = (as_scalar(p) for p in params)
    if not d:
        raise DegenerateParameters("d = 0 makes dh = 1 impossible")
    if not f:
        raise DegenerateParameters("f = 0 is outside the chart")
    h = d.inverse()
    a = (ONE + b * c) * h
    e = -(b * c * d)
    g = -((ONE + b * c) * f.inverse())
    return solution_from_matrices(TwoByTwo(a, b, c, d), TwoByTwo(e, f, g, h))


def reference_solution() -> SwapSolution:
    """``d = h = 1``, ``a = e = 1/2``, ``b = f = 1/sqrt2``, ``c = g = -1/sqrt2``."""
    r = SQRT2 / 2
    return sample_solution([r, -r, r, ONE])


def reference_matrix_A() -> LabeledSkewMatrix:
    half = Scalar("1/2")
    return LabeledSkewMatrix.from_upper(4, [half, half, -half, -half, half, half])


def random_solution(rng, kind: str = "rational") -> SwapSolution:
    rng = rng_from(rng)
    while True:
        params = [random_scalar(rng, kind, 3) for _ in range(4)]
        try:
            return sample_solution(params)
        except DegenerateParameters:
            continue


def cogate_matrix(sol: SwapSolution) -> LabeledSkewMatrix:
    return cogate_matrix_of(decompose_swap(sol.M, sol.N)[0])


# -- substitution in a circuit ---------------------------------------------------


@dataclass(frozen=True)
class SubstitutionResult:
    value_before: Scalar
    value_after: Scalar
    value_pfaffian: Scalar

    @property
    def equal(self) -> bool:
        return self.value_before == self.value_after == self.value_pfaffian

    def __iter__(self):
        yield self.value_before
        yield self.value_after


def substitution_circuits(c: Circuit, vertex: str, sol: SwapSolution) -> tuple[Circuit, Circuit, Circuit]:
    """``(elementary, before, after)`` circuits of the substitution demo.

    ``elementary`` has ``S`` at ``vertex``; ``before`` is the same circuit
    after the edge basis change ``M`` (leg 1) and ``N`` (leg 2), so the vertex
    carries ``sPf_cogate(S) o (M^-1 x N^-1 x I x I)``; ``after`` has bra SWAP
    there instead.
    """
    v = c.vertex(vertex)
    if v.side != COGATE or v.degree != 4:
        raise ValueError(f"vertex {vertex} must be a degree-4 cogate")
    if len(c.edges) % 2:
        raise ValueError("the circuit needs an even number of edges")
    others = [w.name for w in c.vertices if w.name != vertex and not w.is_elementary]
    if others:
        raise ValueError(f"other vertices must be elementary: {', '.join(others)}")
    elementary = c.with_assignment(vertex, sol.S)
    before = apply_edge_basis_change(elementary, {v.rotation[0]: sol.M, v.rotation[1]: sol.N})
    after = substitute(before, vertex, swap_gate("bra"))
    return elementary, before, after


def demo_substitution(c: Circuit, vertex: str, sol: SwapSolution) -> SubstitutionResult:
    elementary, before, after = substitution_circuits(c, vertex, sol)
    return SubstitutionResult(evaluate_bruteforce(before), evaluate_bruteforce(after), evaluate(elementary))


# -- more than one SWAP ----------------------------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    k: int
    cone_member: bool
    reason: str
    relation: GPRelation | None
    relation_value: object
    defect_matches: bool
    defect_nonzero: bool

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "cone_member": self.cone_member,
            "reason": self.reason,
            "relation": str(self.relation) if self.relation is not None else None,
            "relation_value": str(self.relation_value) if self.relation_value is not None else None,
            "defect_matches": self.defect_matches,
            "defect_nonzero": self.defect_nonzero,
        }


def _even_count_terms(Ps, Qs):
    # sum over choices with an even number of odd factors
    k = len(Ps)
    total = None
    for mask in range(1 << k):
        if bin(mask).count("1") % 2:
            continue
        t = tensor_product_all(Qs[i] if mask >> i & 1 else Ps[i] for i in range(k))
        total = t if total is None else total + t
    return total


def product_obstruction(factors: Sequence[QubitTensor], parts: Sequence[tuple[QubitTensor, QubitTensor]] | None = None) -> ObstructionReport:
    """Cone-cogate test for the even part of a product of bra tensors."""
    from .varieties import MAX_ARITY, in_chart_by_reconstruction

    k = len(factors)
    G = tensor_product_all(factors)
    W = parity_projection(G, "even")
    if parts is None:
        parts = [(parity_projection(f, "even"), parity_projection(f, "odd")) for f in factors]
    Ps = [p for p, _ in parts]
    Qs = [q for _, q in parts]
    expected = _even_count_terms(Ps, Qs)
    defect = W - tensor_product_all(Ps)
    if W.arity <= MAX_ARITY:
        rep = membership(W, "cogate", cone=True)
        return ObstructionReport(k, rep.member, rep.reason, rep.relation, rep.value, W == expected, not defect.is_zero())
    if not W.coeffs[(1 << W.arity) - 1]:
        raise ValueError("chart check needs a nonzero <1...1| coefficient")
    member = in_chart_by_reconstruction(W, "cogate")
    reason = "matches a scaled sub-Pfaffian image" if member else "differs from every scaled sub-Pfaffian image on the chart"
    return ObstructionReport(k, member, reason, None, None, W == expected, not defect.is_zero())


def multi_swap_obstruction(k: int, sols: Sequence[SwapSolution]) -> ObstructionReport:
    """Even part of ``k`` basis-changed SWAPs against the cogate cone.

    ``k = 2`` uses the arity-8 quadratic relations and reports the first
    violated one; ``k = 3`` (arity 12) uses the chart reconstruction test.
    """
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    if len(sols) != k:
        raise ValueError(f"need {k} solutions, got {len(sols)}")
    factors = [basis_changed_swap(s.M, s.N) for s in sols]
    parts = [decompose_swap(s.M, s.N) for s in sols]
    return product_obstruction(factors, parts)
