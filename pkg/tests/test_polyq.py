from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pfcirc.polyq import PolyQ

N = 3
exps = st.tuples(*[st.integers(0, 3)] * N)
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(exps, coefs, max_size=5).map(lambda d: PolyQ(N, d))
points = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=3)] * N)


@given(polys, polys, points)
def test_evaluation_is_a_ring_map(p, q, x):
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)
    assert (p - q).evaluate(x) == p.evaluate(x) - q.evaluate(x)


@given(polys, polys, polys)
def test_distributive(p, q, r):
    assert p * (q + r) == p * q + p * r


@given(polys)
def test_json_roundtrip(p):
    assert PolyQ.from_json(N, p.to_json()) == p


def test_zero_coefficients_dropped():
    p = PolyQ(2, {(1, 0): 1, (0, 1): 0})
    assert p.terms == {(1, 0): Fraction(1)}
    assert (p - p).is_zero() and not (p - p)


def test_degree_and_support():
    x, y, z = PolyQ.variables(3)
    p = x * x * y - 3 * z + 1
    assert p.degree() == 3
    assert p.support_variables() == {0, 1, 2}
    assert PolyQ.zero(3).degree() == -1
    assert (2 * y).linear_variable() == (1, Fraction(2))
    assert (x * y).linear_variable() is None


def test_substitute_zero():
    x, y = PolyQ.variables(2)
    assert (x * y + y + 2).substitute_zero([0]) == y + 2


def test_to_string():
    x, y = PolyQ.variables(2)
    assert (x * x - Fraction(1, 2) * y + 3).to_string(["a", "b"]) == "a^2 - 1/2*b + 3"
    assert str(PolyQ.zero(2)) == "0"


def test_mismatched_variable_counts():
    with pytest.raises(ValueError):
        PolyQ.var(2, 0) + PolyQ.var(3, 0)
    with pytest.raises(ValueError):
        PolyQ(2, {(1, 0, 0): 1})
