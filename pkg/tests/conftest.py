import math

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from thfactor.symbols import LaurentPolynomial, PCSymbol, SmoothPart

settings.register_profile("suite", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- hypothesis strategies --------------------------------------------------------

small = st.floats(-0.6, 0.6, allow_nan=False)


@st.composite
def laurent(draw, max_degree=2, scale=0.3):
    n = draw(st.integers(0, 2 * max_degree + 1))
    coeffs = {}
    for _ in range(n):
        k = draw(st.integers(-max_degree, max_degree))
        coeffs[k] = complex(draw(small), draw(small)) * scale
    return LaurentPolynomial(coeffs)


@st.composite
def pc_symbols(draw, p=None, max_jumps=3):
    p = draw(st.sampled_from([4 / 3, 1.5, 2.0, 3.0, 4.0])) if p is None else p
    m = draw(st.integers(-2, 2))
    log = draw(laurent())
    k = draw(st.integers(0, max_jumps))
    angles = draw(st.lists(st.sampled_from([0.0, math.pi, 0.7, 2 * math.pi - 0.7, 2.1,
                                            2 * math.pi - 2.1, 4.0]),
                           min_size=k, max_size=k, unique=True))
    jumps = tuple((a, complex(draw(st.floats(-1.4, 1.4)), draw(st.floats(-0.3, 0.3))))
                  for a in angles)
    return PCSymbol(p, SmoothPart(m, log), jumps)
