"""The nine acceptance checks, shared by ``pfcirc selftest`` and the test-suite.

Each check returns a :class:`CheckResult`.  Counts default to the full
acceptance sizes; ``scale`` shrinks them for quick runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .circuit import evaluate, evaluate_bruteforce
from .exactfield import ONE, Scalar
from .invariants import (
    DEGREES,
    check_invariance as invariance_holds,
    dual_invariants,
    invariants,
    psi_involution,
)
from .pfaffian import (
    LabeledSkewMatrix,
    interleaved_direct_sum,
    pfaffian,
    sub_pfaffian_cogate,
    sub_pfaffian_gate,
)
from .sampling import random_skew, random_sl2, random_tensor, rng_from
from .swapsub import (
    decompose_swap,
    demo_substitution,
    multi_swap_obstruction,
    reference_matrix_A,
    reference_solution,
    random_solution,
)
from .tensor import permute_legs, swap_gate, tensor_product
from .topologies import random_elementary_circuit, swap_hosts, with_random_matrices
from .varieties import enumerate_relations, first_violated, membership


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.title}"


def _n(count: int, scale: float) -> int:
    return max(1, int(round(count * scale)))


# -- 1 ---------------------------------------------------------------------------


def check_oracle_equivalence(seed=None, scale: float = 1.0) -> CheckResult:
    rng = rng_from(seed)
    total = _n(500, scale)
    topologies: set[str] = set()
    shapes: set[tuple] = set()
    mismatches = []
    for k in range(total):
        kind = "field" if k % 10 == 9 else "int"
        name, c = random_elementary_circuit(rng, max_edges=10, kind=kind)
        topologies.add(name)
        shapes.add(tuple(sorted((v.side, v.degree) for v in c.vertices)))
        if evaluate(c) != evaluate_bruteforce(c):
            mismatches.append(name)
    ok = not mismatches and len(shapes) >= 4
    return CheckResult(
        1,
        "evaluate equals brute-force pairing on random elementary circuits",
        ok,
        {"circuits": total, "named_topologies": len(topologies), "distinct_shapes": len(shapes), "mismatches": len(mismatches)},
    )


# -- 2 ---------------------------------------------------------------------------


def noncrossing_split(rng, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split ``1..n`` into two label sets that do not interleave.

    One set is a cyclic interval of positions; its complement is the other.
    """
    size = int(rng.integers(0, n + 1))
    start = int(rng.integers(0, max(n, 1)))
    first = sorted((start + i) % n + 1 for i in range(size))
    second = sorted(set(range(1, n + 1)) - set(first))
    return tuple(first), tuple(second)


def labelled_product(a, b, first_labels, second_labels):
    """``a (x) b`` with legs reordered into increasing label order."""
    t = tensor_product(a, b)
    legs = list(first_labels) + list(second_labels)
    order = [legs.index(lab) + 1 for lab in sorted(legs)]
    return permute_legs(t, order)


def interleaving_example() -> tuple[LabeledSkewMatrix, LabeledSkewMatrix, LabeledSkewMatrix]:
    """Symbolic-free stand-in: distinct primes for the printed m_ij, n_ij entries."""
    m12 = Scalar(2)
    n12, n13, n23 = Scalar(3), Scalar(5), Scalar(7)
    M = LabeledSkewMatrix.from_upper((1, 3), {(1, 2): m12})
    N = LabeledSkewMatrix.from_upper((2, 4, 5), {(1, 2): n12, (1, 3): n13, (2, 3): n23})
    z = Scalar(0)
    expected = LabeledSkewMatrix.from_rows(
        [
            [z, z, m12, z, z],
            [z, z, z, n12, n13],
            [-m12, z, z, z, z],
            [z, -n12, z, z, n23],
            [z, -n13, z, -n23, z],
        ],
        labels=(1, 2, 3, 4, 5),
    )
    return M, N, expected


def check_direct_sum(seed=None, scale: float = 1.0) -> CheckResult:
    rng = rng_from(seed)
    total = _n(200, scale)
    failures = 0
    for _ in range(total):
        n = int(rng.integers(0, 11))
        I, J = noncrossing_split(rng, n)
        M = random_skew(rng, I)
        N = random_skew(rng, J)
        MN = interleaved_direct_sum(M, N)
        gate_ok = labelled_product(sub_pfaffian_gate(M), sub_pfaffian_gate(N), I, J) == sub_pfaffian_gate(MN)
        cogate_ok = labelled_product(sub_pfaffian_cogate(M), sub_pfaffian_cogate(N), I, J) == sub_pfaffian_cogate(MN)
        failures += not (gate_ok and cogate_ok)
    M, N, expected = interleaving_example()
    example_ok = interleaved_direct_sum(M, N) == expected
    return CheckResult(
        2,
        "interleaved direct sum realises the tensor product; printed 5x5 example",
        failures == 0 and example_ok,
        {"pairs": total, "failures": failures, "printed_example": example_ok},
    )


# -- 3 ---------------------------------------------------------------------------


def check_swap_invariants(seed=None, scale: float = 1.0) -> CheckResult:
    rng = rng_from(seed)
    ket = invariants(swap_gate("ket")).as_tuple()
    dual = dual_invariants(swap_gate("bra")).as_tuple()
    want = (Scalar(2), Scalar(1), Scalar(0), Scalar(0))
    total = _n(100, scale)
    involution = all(
        psi_involution(psi_involution(t)) == t
        for t in (random_tensor(rng, "kkkk", "field") for _ in range(total))
    )
    ok = ket == want and dual == want and involution
    return CheckResult(
        3,
        "SWAP invariants (H, detL, detM, detB) = (2, 1, 0, 0); dual values agree; psi is an involution",
        ok,
        {"ket": [str(v) for v in ket], "dual": [str(v) for v in dual], "psi_samples": total},
    )


# -- 4 ---------------------------------------------------------------------------


def check_group_invariance(seed=None, scale: float = 1.0) -> CheckResult:
    rng = rng_from(seed)
    total = _n(200, scale)
    bad = 0
    for k in range(total):
        variance = "kkkk" if k % 2 == 0 else "bbbb"
        t = random_tensor(rng, variance, "rational")
        gs = [random_sl2(rng) for _ in range(4)]
        bad += not invariance_holds(t, gs)
    lam = Scalar(3, 1, 0, 0)
    degrees_ok = True
    for _ in range(_n(20, scale)):
        t = random_tensor(rng, "kkkk", "rational")
        a, b = invariants(t), invariants(t.scale(lam))
        for name, deg in DEGREES.items():
            if getattr(b, name) != lam**deg * getattr(a, name):
                degrees_ok = False
    return CheckResult(
        4,
        "generators invariant under random rational SL(2)^4; degrees (2, 4, 4, 6)",
        bad == 0 and degrees_ok,
        {"group_elements": total, "failures": bad, "degrees": degrees_ok},
    )


# -- 5 ---------------------------------------------------------------------------


def check_gp_calibration(seed=None, scale: float = 1.0) -> CheckResult:
    rng = rng_from(seed)
    total = _n(1000, scale)
    failures = {}
    for n in (4, 6, 8):
        enumerate_relations(n)
        bad = 0
        for _ in range(total):
            M = random_skew(rng, n, "int", 5)
            if first_violated(list(sub_pfaffian_gate(M).coeffs), n) is not None:
                bad += 1
        failures[n] = bad
    ket = membership(swap_gate("ket"), "gate")
    bra = membership(swap_gate("bra"), "cogate")
    quadric = enumerate_relations(4)[0]
    swap_ok = (not ket.member and not bra.member and ket.relation == quadric and bra.relation == quadric)
    return CheckResult(
        5,
        "all Grassmann-Pluecker relations vanish on random sPf images; SWAP violates the quadric",
        all(v == 0 for v in failures.values()) and swap_ok,
        {
            "samples_per_n": total,
            "relations": {n: len(enumerate_relations(n)) for n in (4, 6, 8)},
            "failures": failures,
            "swap_violation": str(ket.relation),
        },
    )


# -- 6 ---------------------------------------------------------------------------


def check_swap_construction(seed=None, scale: float = 1.0) -> CheckResult:
    rng = rng_from(seed)
    ps = reference_solution()
    a_ok = ps.S == reference_matrix_A() and pfaffian(ps.S) == Scalar("1/4")
    sols = [ps] + [random_solution(rng, "field" if k % 5 == 4 else "rational") for k in range(_n(50, scale))]
    hosts = swap_hosts()
    per = _n(20, scale)
    bad_members = bad_demos = demos = 0
    for sol in sols:
        P, _ = decompose_swap(sol.M, sol.N)
        if not membership(P, "cogate").member:
            bad_members += 1
        for k in range(per):
            host = with_random_matrices(hosts[k % len(hosts)], rng)
            demos += 1
            if not demo_substitution(host, "v", sol).equal:
                bad_demos += 1
    return CheckResult(
        6,
        "reference solution gives matrix A; even parts are cogates; substitution keeps the value",
        a_ok and bad_members == 0 and bad_demos == 0,
        {"matrix_A": a_ok, "solutions": len(sols), "demos": demos, "membership_failures": bad_members, "demo_failures": bad_demos},
    )


# -- 7 ---------------------------------------------------------------------------


def check_two_swaps(seed=None, scale: float = 1.0) -> CheckResult:
    rng = rng_from(seed)
    total = _n(50, scale)
    members = 0
    example = None
    for _ in range(total):
        rep = multi_swap_obstruction(2, [random_solution(rng), random_solution(rng)])
        if rep.cone_member or rep.relation is None or not rep.defect_matches:
            members += 1
        elif example is None:
            example = str(rep.relation)
    return CheckResult(
        7,
        "even part of two basis-changed SWAPs violates an arity-8 cogate relation",
        members == 0,
        {"pairs": total, "unexpected": members, "example_relation": example},
    )


# -- 8 ---------------------------------------------------------------------------


def sympy_reverify(cert) -> bool:
    """Expand ``sum m_i g_i - target`` with sympy instead of :class:`PolyQ`."""
    from sympy import Integer, Rational, expand, symbols

    xs = symbols(f"x1:{cert.target.n + 1}")

    def conv(p):
        total = Integer(0)
        for e, c in p.terms.items():
            term = Rational(c.numerator, c.denominator)
            for v, a in zip(xs, e):
                if a:
                    term *= v**a
            total += term
        return total

    combo = sum((conv(m) * conv(cert.gens[i]) for i, m in cert.multipliers), Integer(0))
    return expand(combo - conv(cert.target)) == 0


def check_certificate(seed=None, scale: float = 1.0) -> CheckResult:
    from .certs import certify_i_plus_j

    cert, log = certify_i_plus_j()
    ok = bool(cert) and cert.verify() and sympy_reverify(cert)
    details = {"attempts": log}
    if ok:
        details.update({"degree": cert.degree, "terms": cert.size, "sympy_reverified": True})
    else:
        details["reached"] = log[-1]["degree"] if log else None
    return CheckResult(8, "certificate for 1 in I + J within degree 12", ok, details)


# -- 9 ---------------------------------------------------------------------------


def check_pfaffian_squared(seed=None, scale: float = 1.0) -> CheckResult:
    from sympy import Matrix, Rational

    rng = rng_from(seed)
    total = _n(200, scale)
    bad = 0
    for k in range(total):
        n = 2 * int(rng.integers(1, 5))
        M = random_skew(rng, n, "rational" if k % 2 else "int")
        pf = pfaffian(M)
        rows = [[Rational(x.p.numerator, x.p.denominator) for x in row] for row in M.entries]
        det = Matrix(rows).det()
        sq = pf * pf
        if Rational(sq.p.numerator, sq.p.denominator) != det or not sq.is_rational():
            bad += 1
    empty_ok = pfaffian(LabeledSkewMatrix.empty()) == ONE
    return CheckResult(
        9,
        "Pf(M)^2 = det(M) on random even matrices; Pf(empty) = 1",
        bad == 0 and empty_ok,
        {"matrices": total, "failures": bad, "empty": empty_ok},
    )


CHECKS: list[Callable[..., CheckResult]] = [
    check_oracle_equivalence,
    check_direct_sum,
    check_swap_invariants,
    check_group_invariance,
    check_gp_calibration,
    check_swap_construction,
    check_two_swaps,
    check_certificate,
    check_pfaffian_squared,
]


def run_all(seed=None, scale: float = 1.0, only: set[int] | None = None) -> list[CheckResult]:
    out = []
    for k, f in enumerate(CHECKS, start=1):
        if only and k not in only:
            continue
        t0 = time.perf_counter()
        r = f(seed=seed, scale=scale)
        r.seconds = time.perf_counter() - t0
        out.append(r)
    return out
