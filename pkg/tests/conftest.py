import os

import hypothesis
import pytest
from hypothesis import strategies as st

from app.core.polyring import Poly, as_rational

hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))

X = ("x",)
TX = ("t", "x")

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4).map(as_rational)
small_ints = st.integers(min_value=-6, max_value=6)


def unipolys(elements=rationals, max_size=5, var="x"):
    return st.lists(elements, max_size=max_size).map(lambda cs: Poly(cs, (var,)))


def nonzero_unipolys(elements=small_ints, min_degree=1, max_degree=4, var="t"):
    """Integer polynomials of degree in ``[min_degree, max_degree]``."""
    return st.lists(elements, min_size=min_degree + 1, max_size=max_degree + 1).filter(
        lambda cs: cs[-1] != 0
    ).map(lambda cs: Poly(cs, (var,)))


def bipolys(max_t=3, max_x=3, elements=small_ints):
    rows = st.lists(st.lists(elements, max_size=max_x + 1), max_size=max_t + 1)
    return rows.map(lambda rs: Poly([Poly(r, X) for r in rs], TX))


def ypolys(max_y=6, max_x=3, elements=rationals):
    """Polynomials in y of degree in ``[1, max_y]`` over Q[x] with x-degree at most ``max_x``."""
    rows = st.lists(st.lists(elements, max_size=max_x + 1), min_size=2, max_size=max_y + 1)
    return rows.map(lambda rs: Poly([Poly(r, X) for r in rs], ("y",) + X)).filter(lambda p: p.degree >= 1)


@pytest.fixture(autouse=True)
def no_cache_env(monkeypatch):
    monkeypatch.delenv("CHEBYGF_CACHE_PATH", raising=False)
