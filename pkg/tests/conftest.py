import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from germcq.poly import Polynomial

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polynomials(draw, nvars=2, max_degree=3, max_terms=4):
    exps = st.tuples(*[st.integers(0, max_degree)] * nvars)
    terms = draw(st.dictionaries(exps, coefficients, max_size=max_terms))
    return Polynomial(nvars, terms)


def random_polynomial(rng: random.Random, n: int, min_degree: int = 2, max_degree: int = 3, terms: int = 2) -> Polynomial:
    out = {}
    for _ in range(terms):
        deg = rng.randint(min_degree, max_degree)
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        out[tuple(e)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return Polynomial(n, out)


@pytest.fixture
def rng():
    return random.Random(12345)


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion, then assert it."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
