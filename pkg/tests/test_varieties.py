from __future__ import annotations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import nonzero_scalars, skew_matrices
from pfcirc.exactfield import ONE, Scalar
from pfcirc.pfaffian import LabeledSkewMatrix, sub_pfaffian_cogate, sub_pfaffian_gate
from pfcirc.sampling import random_skew
from pfcirc.tensor import QubitTensor, swap_gate
from pfcirc.varieties import (
    enumerate_relations,
    first_violated,
    in_chart_by_reconstruction,
    is_cone_point,
    is_pfaffian_cogate_point,
    is_pfaffian_gate_point,
    membership,
    reconstruct_gate_matrix,
    wick_relation,
)


@pytest.mark.parametrize("n, count", [(0, 0), (3, 0), (4, 1), (5, 10), (6, 76), (7, 504), (8, 2976)])
def test_relation_counts(n, count):
    assert len(enumerate_relations(n)) == count


def test_max_k_filters_by_length():
    assert len(enumerate_relations(6, max_k=1)) < len(enumerate_relations(6))
    assert all(r.size <= 4 for r in enumerate_relations(6, max_k=1))


def test_four_leg_quadric():
    (rel,) = enumerate_relations(4)
    assert str(rel) == "- a[]a[1234] + a[12]a[34] - a[13]a[24] + a[23]a[14]"


def test_wick_relation_needs_disjoint_sets():
    with pytest.raises(ValueError):
        wick_relation((1,), (1, 2), (3,))


def test_arity_limit():
    with pytest.raises(ValueError):
        enumerate_relations(9)


def _symbolic_subpfaffians(n):
    x = {(i, j): sympy.Symbol(f"m{i}{j}") for i in range(n) for j in range(i + 1, n)}

    def pf(idx):
        if not idx:
            return sympy.Integer(1)
        if len(idx) % 2:
            return sympy.Integer(0)
        first, rest = idx[0], idx[1:]
        total = sympy.Integer(0)
        for k, j in enumerate(rest):
            total += (-1) ** k * x[(first, j)] * pf(rest[:k] + rest[k + 1:])
        return total

    return [pf([k for k in range(n) if m >> k & 1]) for m in range(1 << n)]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_relations_vanish_identically(n):
    # exact polynomial identity on generic sub-Pfaffians, independent of pfcirc's Pfaffian code
    alpha = _symbolic_subpfaffians(n)
    for rel in enumerate_relations(n):
        value = sum(c * alpha[p] * alpha[q] for p, q, c in rel.terms)
        assert sympy.expand(value) == 0, str(rel)


@given(skew_matrices(min_n=4, max_n=8))
def test_images_are_members(M):
    assert is_pfaffian_gate_point(sub_pfaffian_gate(M))
    assert is_pfaffian_cogate_point(sub_pfaffian_cogate(M))


@given(skew_matrices(min_n=4, max_n=7), nonzero_scalars)
def test_cone(M, c):
    t = sub_pfaffian_gate(M).scale(c)
    assert is_cone_point(t, "gate")
    assert membership(t, "gate").member is (c == ONE)


@given(skew_matrices(min_n=4, max_n=7), st.data())
def test_relations_agree_with_reconstruction(M, data):
    t = sub_pfaffian_gate(M)
    even = [m for m in range(1 << M.size) if bin(m).count("1") % 2 == 0 and m]
    m = data.draw(st.sampled_from(even))
    bump = Scalar(data.draw(st.integers(-3, 3)))
    coeffs = list(t.coeffs)
    coeffs[m] = coeffs[m] + bump
    u = QubitTensor(t.variance, tuple(coeffs))
    assert membership(u, "gate").member == in_chart_by_reconstruction(u, "gate")


def test_swap_is_not_a_member():
    for side, t in (("gate", swap_gate("ket")), ("cogate", swap_gate("bra"))):
        rep = membership(t, side)
        assert not rep.member
        assert rep.relation == enumerate_relations(4)[0]
        assert rep.value == Scalar(-2)
        assert not is_cone_point(t, side)


def test_odd_support_is_reported_first():
    t = QubitTensor.ket("0000", "1000")
    rep = membership(t, "gate")
    assert not rep.member and "odd-support" in rep.reason and "1000" in rep.reason


def test_normalisation_reported():
    t = QubitTensor.from_terms("kk", {"00": 2, "11": 4})
    rep = membership(t, "gate")
    assert "normalisation" in rep.reason
    assert membership(t, "gate", cone=True).member


def test_side_must_match_variance():
    with pytest.raises(ValueError):
        membership(swap_gate("ket"), "cogate")


def test_first_violated_fast_and_slow_paths_agree(rng):
    # entries above 2**28 leave the int64 path; the hit must not change
    big = Scalar(1 << 30)
    for _ in range(20):
        alpha = list(sub_pfaffian_gate(random_skew(rng, 6)).coeffs)
        alpha[3] = alpha[3] + 1
        fast = first_violated(alpha, 6)
        slow = first_violated([a * big for a in alpha], 6)
        assert fast[0] == slow[0]
        assert fast[1] * big * big == slow[1]


def test_reconstruction():
    M = LabeledSkewMatrix.from_upper(4, [1, 2, 3, 4, 5, 6])
    got, base = reconstruct_gate_matrix(sub_pfaffian_gate(M).scale(3), "gate")
    assert got == M and base == Scalar(3)
    with pytest.raises(ValueError):
        reconstruct_gate_matrix(QubitTensor.ket("11"), "gate")


def test_twelve_legs_by_reconstruction(rng):
    t = sub_pfaffian_cogate(random_skew(rng, 12, bound=2))
    assert in_chart_by_reconstruction(t, "cogate")
    # bump a four-leg coordinate off the variety
    bumped = t + QubitTensor.from_terms("b" * 12, {"0" * 8 + "1111": 1})
    assert not in_chart_by_reconstruction(bumped, "cogate")


def test_relations_touch_even_sets_only():
    for n in (4, 5, 6):
        for rel in enumerate_relations(n):
            for p, q, _ in rel.terms:
                assert bin(p).count("1") % 2 == 0 and bin(q).count("1") % 2 == 0
