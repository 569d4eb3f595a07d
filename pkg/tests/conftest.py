import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from mgce.complex import ChainComplex
from mgce.linalg import RatMatrix, kernel_matrix

small_rat = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))


@st.composite
def matrices(draw, max_rows=5, max_cols=5, density=0.5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    ent = {}
    for i in range(r):
        for j in range(c):
            if draw(st.floats(0, 1)) < density:
                ent[(i, j)] = draw(small_rat)
    return RatMatrix(r, c, ent)


def random_matrix(rng: random.Random, r: int, c: int, density: float = 0.6) -> RatMatrix:
    ent = {}
    for i in range(r):
        for j in range(c):
            if rng.random() < density:
                ent[(i, j)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return RatMatrix(r, c, ent)


def random_complex(rng: random.Random, lo: int = -1, hi: int = 2, max_dim: int = 3) -> ChainComplex:
    """Each differential factors through the kernel of the one below, so d^2 = 0."""
    dims = {n: rng.randint(0, max_dim) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        below = diffs.get(n - 1, RatMatrix.zero(0, dims[n - 1]))
        k = kernel_matrix(below)
        diffs[n] = k @ random_matrix(rng, k.cols, dims[n])
    return ChainComplex(dims, diffs)


@st.composite
def complexes(draw, lo=-1, hi=2, max_dim=3):
    return random_complex(random.Random(draw(st.integers(0, 10**6))), lo, hi, max_dim)


@pytest.fixture
def rng():
    return random.Random(20240611)


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
