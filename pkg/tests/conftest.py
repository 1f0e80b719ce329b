import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repo",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@st.composite
def zx_params(draw, moduli=(2, 3, 4, 5, 6, 8), max_x=3):
    n = draw(st.sampled_from(moduli))
    X = draw(st.sets(st.integers(1, max(1, n - 1)), min_size=1, max_size=max_x))
    return n, sorted(X)


exponents = st.integers(1, 4)
