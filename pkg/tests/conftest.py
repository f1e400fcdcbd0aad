import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings as hsettings, strategies as st

hsettings.register_profile(
    "dev",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
hsettings.register_profile(
    "ci",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
hsettings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


# ---------------------------------------------------------------------------
# shared strategies

PALETTE = [0j, 1 + 0j, -1 + 0j, 1j, -1j, 0.5 + 0j, -0.5 + 0j, 1 + 1j]

finite = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)


def weights(allow_zero: bool = True) -> st.SearchStrategy[complex]:
    pool = PALETTE if allow_zero else PALETTE[1:]
    return st.one_of(
        st.sampled_from(pool),
        st.builds(complex, finite, finite).filter(
            lambda z: allow_zero or abs(z) > 1e-6
        ),
    )


@st.composite
def small_vectors(draw, max_height: int = 4):
    h = draw(st.integers(1, max_height))
    vals = draw(
        st.lists(weights(), min_size=2**h, max_size=2**h)
    )
    return np.array(vals, dtype=complex)


def rngs() -> st.SearchStrategy[np.random.Generator]:
    return st.integers(0, 2**32 - 1).map(np.random.default_rng)


@pytest.fixture
def rng():
    return np.random.default_rng(0xDD)
