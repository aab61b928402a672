from __future__ import annotations

import json

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals, skew_matrices
from pfcirc.acceptance import labelled_product, noncrossing_split, interleaving_example
from pfcirc.exactfield import ONE, ZERO, Scalar
from pfcirc.pfaffian import (
    LabeledSkewMatrix,
    all_sub_pfaffians,
    direct_sum_all,
    interleaved_direct_sum,
    matrix_from_json,
    matrix_to_json,
    pair_value,
    pfaffian,
    pfaffian_by_elimination,
    principal_minor,
    sub_pfaffian_cogate,
    sub_pfaffian_gate,
    twist,
)
from pfcirc.sampling import random_skew
from pfcirc.tensor import pairing


def matching_pfaffian(a, idx):
    """Pfaffian as a signed sum over perfect matchings (independent oracle)."""
    if not idx:
        return ONE
    if len(idx) % 2:
        return ZERO
    first, rest = idx[0], idx[1:]
    total = ZERO
    for k, j in enumerate(rest):
        term = a[first][j] * matching_pfaffian(a, rest[:k] + rest[k + 1:])
        total = total + term if k % 2 == 0 else total - term
    return total


def sym_det(M: LabeledSkewMatrix):
    return sympy.Matrix([[sympy.Rational(x.p.numerator, x.p.denominator) for x in row] for row in M.entries]).det()


def test_small_closed_forms():
    a, b, c, d, e, f = (Scalar(k) for k in (2, 3, 5, 7, 11, 13))
    assert pfaffian(LabeledSkewMatrix.empty()) == ONE
    assert pfaffian(LabeledSkewMatrix.from_upper(2, [a])) == a
    assert pfaffian(LabeledSkewMatrix.from_upper(3, [a, b, c])) == ZERO
    M4 = LabeledSkewMatrix.from_upper(4, [a, b, c, d, e, f])
    assert pfaffian(M4) == a * f - b * e + c * d


def test_reference_matrix_A():
    half = Scalar("1/2")
    A = LabeledSkewMatrix.from_upper(4, [half, half, -half, -half, half, half])
    assert pfaffian(A) == Scalar("1/4")


@given(skew_matrices(max_n=8))
def test_matches_matching_sum(M):
    assert pfaffian(M) == matching_pfaffian(M.entries, list(range(M.size)))


@given(skew_matrices(min_n=1, max_n=12))
def test_elimination_agrees(M):
    want = pfaffian(M) if M.size <= 8 else matching_pfaffian(M.entries, list(range(M.size)))
    assert pfaffian_by_elimination(M) == want


@given(skew_matrices(max_n=8, entries=rationals))
def test_square_is_determinant(M):
    pf = pfaffian(M)
    assert pf.is_rational()
    assert sympy.Rational(pf.p.numerator, pf.p.denominator) ** 2 == sym_det(M)


@given(skew_matrices(min_n=2, max_n=6), st.integers(-3, 3))
def test_homogeneity(M, c):
    n = M.size - M.size % 2
    M = principal_minor(M, range(1, n + 1))
    assert pfaffian(M.scale(c)) == Scalar(c) ** (n // 2) * pfaffian(M)


@given(skew_matrices(max_n=7))
def test_sub_pfaffians_are_principal_pfaffians(M):
    pfs = all_sub_pfaffians(M)
    for mask, v in enumerate(pfs):
        pos = [k + 1 for k in range(M.size) if mask >> k & 1]
        assert v == pfaffian(principal_minor(M, pos))


def test_gate_and_cogate_layout():
    M = LabeledSkewMatrix.from_upper(2, [Scalar(5)])
    g, c = sub_pfaffian_gate(M), sub_pfaffian_cogate(M)
    assert g.coeffs == (ONE, ZERO, ZERO, Scalar(5))
    assert c.coeffs == (Scalar(5), ZERO, ZERO, ONE)
    assert c.is_bra and g.is_ket


@given(skew_matrices(max_n=6), skew_matrices(max_n=6))
def test_pair_value_is_pairing(X, T):
    n = min(X.size, T.size)
    X = principal_minor(X, range(1, n + 1))
    T = principal_minor(T, range(1, n + 1)).relabel(X.labels)
    assert pair_value(X, T) == pairing(sub_pfaffian_cogate(T), sub_pfaffian_gate(X))


def test_twist_signs():
    T = LabeledSkewMatrix.from_upper(3, [1, 1, 1])
    assert twist(T).upper() == {(1, 2): ONE, (1, 3): -ONE, (2, 3): ONE}


def test_pair_value_label_mismatch():
    with pytest.raises(ValueError):
        pair_value(LabeledSkewMatrix.zero(2), LabeledSkewMatrix.zero(3))


def test_interleaving_example():
    M, N, expected = interleaving_example()
    got = interleaved_direct_sum(M, N)
    assert got == expected
    assert got.labels == (1, 2, 3, 4, 5)


def test_overlapping_labels_rejected():
    with pytest.raises(ValueError):
        interleaved_direct_sum(LabeledSkewMatrix.zero((1, 2)), LabeledSkewMatrix.zero((2, 3)))


def _filled(labels, f):
    n = len(labels)
    return LabeledSkewMatrix.from_upper(labels, {(a, b): Scalar(f(a, b)) for a in range(1, n + 1) for b in range(a + 1, n + 1)})


@pytest.mark.parametrize(
    "I, J, ok",
    [
        ((1, 2), (3, 4), True),
        ((1, 4), (2, 3), True),
        ((1, 2, 5, 6), (3, 4), True),
        ((1, 3), (2, 4), False),
        ((1, 3), (2, 4, 5), False),
    ],
)
def test_direct_sum_needs_noncrossing_labels(I, J, ok):
    M = _filled(I, lambda a, b: a + 2 * b)
    N = _filled(J, lambda a, b: 3 * a - b)
    same = labelled_product(sub_pfaffian_gate(M), sub_pfaffian_gate(N), I, J) == sub_pfaffian_gate(interleaved_direct_sum(M, N))
    assert same is ok


@given(st.data())
def test_direct_sum_sign_rule(data):
    n = data.draw(st.integers(0, 7))
    first = tuple(sorted(data.draw(st.sets(st.integers(1, max(n, 1)), max_size=n)))) if n else ()
    second = tuple(k for k in range(1, n + 1) if k not in first)
    ints = st.integers(-4, 4)
    M = LabeledSkewMatrix.from_upper(first, [data.draw(ints) for _ in range(len(first) * (len(first) - 1) // 2)])
    N = LabeledSkewMatrix.from_upper(second, [data.draw(ints) for _ in range(len(second) * (len(second) - 1) // 2)])
    S = interleaved_direct_sum(M, N)
    pm, pn, ps = all_sub_pfaffians(M), all_sub_pfaffians(N), all_sub_pfaffians(S)
    for mask in range(1 << n):
        K = [k + 1 for k in range(n) if mask >> k & 1]
        a = [x for x in K if x in first]
        b = [x for x in K if x in second]
        inversions = sum(1 for x in a for y in b if y < x)
        ma = sum(1 << first.index(x) for x in a)
        mb = sum(1 << second.index(y) for y in b)
        want = pm[ma] * pn[mb]
        assert ps[mask] == (want if inversions % 2 == 0 else -want)


def test_random_noncrossing_splits(rng):
    for _ in range(30):
        n = int(rng.integers(0, 9))
        I, J = noncrossing_split(rng, n)
        M, N = random_skew(rng, I), random_skew(rng, J)
        S = interleaved_direct_sum(M, N)
        assert labelled_product(sub_pfaffian_cogate(M), sub_pfaffian_cogate(N), I, J) == sub_pfaffian_cogate(S)


def test_direct_sum_all():
    mats = [LabeledSkewMatrix.from_upper((1, 2), [3]), LabeledSkewMatrix.from_upper((3, 4), [5])]
    assert pfaffian(direct_sum_all(mats)) == Scalar(15)


@given(skew_matrices(max_n=6))
def test_json_roundtrip(M):
    M = M.relabel([2 * k + 3 for k in range(M.size)])
    assert matrix_from_json(json.loads(json.dumps(matrix_to_json(M)))) == M


def test_json_lower_entry_is_negated():
    M = matrix_from_json({"labels": [4, 7], "upper": [[7, 4, "2"]]})
    assert M[(0, 1)] == Scalar(-2)
