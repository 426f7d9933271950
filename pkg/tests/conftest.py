import random

import pytest

from pitrace import Matrix, MatrixTuple, conjugate_test, generates
from pitrace.linalg import random_invertible, random_tuple

ACCEPTANCE_LINES = []


def E(i, j, n=2):
    return Matrix.unit(i, j, n)


def random_generating(rng, m=2, n=2, lo=-5, hi=5):
    while True:
        a = random_tuple(rng, m, n, lo, hi)
        if generates(a):
            return a


def random_nonconjugate_family(rng, r, m=2, n=2, lo=-3, hi=3):
    points = []
    while len(points) < r:
        a = random_generating(rng, m, n, lo, hi)
        if all(not conjugate_test(b, a).conjugate for b in points):
            points.append(a)
    return points


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture
def pair():
    return MatrixTuple([E(1, 2), E(2, 1)])


@pytest.fixture
def conj_g():
    return Matrix([[1, 1], [0, 1]])


@pytest.fixture
def invertible(rng):
    return lambda n: random_invertible(rng, n)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
