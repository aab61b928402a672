"""Seeded random exact objects used by the demos, the self-test and the tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exactfield import Scalar
from .pfaffian import LabeledSkewMatrix
from .tensor import QubitTensor, TwoByTwo

DEFAULT_SEED = 20240601


def rng_from(seed=None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def random_int(rng, lo: int = -4, hi: int = 4) -> int:
    return int(rng.integers(lo, hi + 1))


def random_rational(rng, bound: int = 5) -> Fraction:
    den = int(rng.integers(1, bound + 1))
    return Fraction(int(rng.integers(-bound, bound + 1)), den)


def random_scalar(rng, kind: str = "int", bound: int = 4) -> Scalar:
    """``kind`` is ``"int"``, ``"rational"`` or ``"field"`` (all four coordinates)."""
    if kind == "int":
        return Scalar(random_int(rng, -bound, bound))
    if kind == "rational":
        return Scalar(random_rational(rng, bound))
    if kind == "field":
        return Scalar(*(random_rational(rng, bound) for _ in range(4)))
    raise ValueError(f"unknown scalar kind {kind!r}")


def random_skew(rng, n_or_labels, kind: str = "int", bound: int = 4) -> LabeledSkewMatrix:
    labels = tuple(range(1, n_or_labels + 1)) if isinstance(n_or_labels, int) else tuple(n_or_labels)
    n = len(labels)
    upper = [random_scalar(rng, kind, bound) for _ in range(n * (n - 1) // 2)]
    return LabeledSkewMatrix.from_upper(labels, upper)


def random_tensor(rng, variance: str, kind: str = "int", bound: int = 4) -> QubitTensor:
    return QubitTensor(variance, tuple(random_scalar(rng, kind, bound) for _ in range(1 << len(variance))))


def random_sl2(rng, bound: int = 3) -> TwoByTwo:
    """Product ``(1,r;0,1)(1,0;s,1)(1,u;0,1)`` with random rationals: det 1 exactly."""
    r, s, u = (random_rational(rng, bound) for _ in range(3))
    upper_r = TwoByTwo.of(1, r, 0, 1)
    lower_s = TwoByTwo.of(1, 0, s, 1)
    upper_u = TwoByTwo.of(1, u, 0, 1)
    return upper_r @ lower_s @ upper_u


def random_gl2(rng, bound: int = 4) -> TwoByTwo:
    while True:
        g = TwoByTwo.of(*(random_rational(rng, bound) for _ in range(4)))
        if g.det():
            return g
