from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import nonzero_scalars, scalars
from pfcirc.exactfield import I, ONE, SQRT2, ZERO, Scalar, as_scalar, format_scalar, parse_scalar


def test_basis_squares():
    assert SQRT2 * SQRT2 == Scalar(2)
    assert I * I == Scalar(-1)
    assert (I * SQRT2) * (I * SQRT2) == Scalar(-2)


def test_inverse_of_half_sqrt2():
    r = SQRT2 / 2
    assert r * r == Scalar("1/2")
    assert r.inverse() == SQRT2


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@pytest.mark.parametrize(
    "text, coords",
    [
        ("0", (0, 0, 0, 0)),
        ("-3/4", (Fraction(-3, 4), 0, 0, 0)),
        ("sqrt2", (0, 1, 0, 0)),
        ("-i", (0, 0, -1, 0)),
        ("1/2 - 1/2*sqrt2 + 3*i - i*sqrt2", (Fraction(1, 2), Fraction(-1, 2), 3, -1)),
        ("0.25", (Fraction(1, 4), 0, 0, 0)),
    ],
)
def test_parse(text, coords):
    assert parse_scalar(text).coords == tuple(Fraction(c) for c in coords)


@pytest.mark.parametrize("bad", ["", "abc", "1 +", "sqrt3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_as_scalar_rejects_float():
    with pytest.raises(TypeError):
        as_scalar(0.5)


@given(scalars)
def test_format_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(scalars, scalars, scalars)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO


@given(nonzero_scalars)
def test_inverse(x):
    assert x * x.inverse() == ONE


@given(scalars, scalars)
def test_conjugations_are_automorphisms(x, y):
    for f in (Scalar.conjugate, Scalar.sqrt2_conjugate):
        assert f(x * y) == f(x) * f(y)
        assert f(x + y) == f(x) + f(y)


@given(scalars, scalars)
def test_float_image_is_a_homomorphism(x, y):
    assert cmath.isclose(complex(x * y), complex(x) * complex(y), rel_tol=1e-9, abs_tol=1e-9)
