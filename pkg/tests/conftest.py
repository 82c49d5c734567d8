import numpy as np
import pytest

from simplexqp import QPProblem


def random_convex(rng, n):
    A = rng.standard_normal((n, n))
    return QPProblem(A.T @ A + 1e-3 * np.eye(n), rng.standard_normal(n))


def random_indefinite(rng, n):
    A = rng.standard_normal((n, n))
    return QPProblem(0.5 * (A + A.T), rng.standard_normal(n))


def random_projection_instance(rng, n_max=12, g_max=8):
    n = int(rng.integers(1, n_max + 1))
    k = int(rng.integers(0, min(n, g_max) + 1))
    g = rng.standard_normal(n)
    G = np.sort(rng.choice(n, size=k, replace=False))
    return g, G


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
