from fractions import Fraction

import pytest
from hypothesis import strategies as st

from liouvillian_ep.poly2 import Poly2

small_fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))


@st.composite
def polys(draw, max_deg: int = 4, max_terms: int = 6):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        a = draw(st.integers(0, max_deg))
        b = draw(st.integers(0, max_deg))
        terms[(a, b)] = draw(small_fractions)
    return Poly2(terms)


@pytest.fixture
def half():
    return Fraction(1, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
