import math

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from weakpath.hilbert import PathState, SpinState, make_path_state

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

SQ2 = math.sqrt(2)

_unit = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, _unit, _unit)


@st.composite
def path_states(draw, min_norm=0.05):
    a, b = draw(complexes), draw(complexes)
    if abs(a) ** 2 + abs(b) ** 2 < min_norm**2:
        a = a + 1.0
    return make_path_state(a, b)


@st.composite
def spin_states(draw):
    u, d = draw(complexes), draw(complexes)
    n = math.sqrt(abs(u) ** 2 + abs(d) ** 2)
    if n < 0.05:
        u, n = u + 1.0, math.sqrt(abs(u + 1.0) ** 2 + abs(d) ** 2)
    return SpinState(u / n, d / n)


def haar_path_state(rng: np.random.Generator) -> PathState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return make_path_state(*v)


def psi_prime_by_hand(a: complex, b: complex, alpha: float, arm: str = "II") -> np.ndarray:
    """Joint state after the spin rotation, written out entry by entry."""
    c, s = math.cos(alpha), math.sin(alpha)
    if arm == "II":
        return np.array([a, 0, b * c, -1j * b * s], dtype=complex)
    return np.array([a * c, -1j * a * s, b, 0], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20170105)
