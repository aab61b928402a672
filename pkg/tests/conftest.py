from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pfcirc.exactfield import Scalar
from pfcirc.pfaffian import LabeledSkewMatrix
from pfcirc.sampling import DEFAULT_SEED, rng_from

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

small = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
scalars = st.builds(Scalar, rationals, rationals, rationals, rationals)
nonzero_scalars = scalars.filter(bool)


@st.composite
def skew_matrices(draw, min_n=0, max_n=6, entries=small):
    n = draw(st.integers(min_n, max_n))
    upper = [Scalar(draw(entries)) for _ in range(n * (n - 1) // 2)]
    return LabeledSkewMatrix.from_upper(n, upper)


@pytest.fixture
def rng():
    return rng_from(DEFAULT_SEED)
