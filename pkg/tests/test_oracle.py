import numpy as np
import pytest

from simplexqp import (
    OracleError,
    ProjectionProblem,
    QPProblem,
    oracle_project,
    oracle_qp,
    verify_qp_kkt,
)
from simplexqp.oracle import qp_kkt_candidates

from conftest import random_convex, random_indefinite


def test_project_examples():
    np.testing.assert_allclose(oracle_project(ProjectionProblem(np.array([3.0, 1, -1]), [0])), [0, 1, -1])
    np.testing.assert_allclose(oracle_project(ProjectionProblem(np.array([2.0, 0, -2]), [])), [2, 0, -2])
    np.testing.assert_allclose(oracle_project(ProjectionProblem(np.array([1.0, 1]), [0, 1])), [0, 0])


def test_project_guard():
    with pytest.raises(OracleError):
        oracle_project(ProjectionProblem(np.zeros(25), range(21)))


def test_qp_identity():
    sol = oracle_qp(QPProblem(np.eye(2), [0, 0]))
    np.testing.assert_allclose(sol.x_or_alpha, [0.5, 0.5], atol=1e-15)
    assert sol.objective == pytest.approx(0.25, abs=1e-15)


def test_qp_diagonal_closed_form():
    # d_1 = d_2 on the support: a_1 = 100 a_2, a_1 + a_2 = 1
    sol = oracle_qp(QPProblem(np.diag([1.0, 100.0]), [0, 0]))
    np.testing.assert_allclose(sol.x_or_alpha, [100 / 101, 1 / 101], atol=1e-14)


def test_qp_indefinite_vertex():
    sol = oracle_qp(QPProblem([[0.0, 1.0], [1.0, 0.0]], [0, 0]))
    assert sol.objective == pytest.approx(0.0, abs=1e-15)
    assert np.count_nonzero(sol.x_or_alpha) == 1
    # the interior stationary point (0.5, 0.5) is also a KKT candidate
    objs = sorted(c.objective for c in qp_kkt_candidates(QPProblem([[0.0, 1.0], [1.0, 0.0]], [0, 0])))
    assert objs[-1] == pytest.approx(0.25)


def test_qp_guard():
    with pytest.raises(OracleError):
        oracle_qp(QPProblem(np.eye(13), np.zeros(13)))
    oracle_qp(QPProblem(np.eye(13), np.zeros(13)), guard=13)


@pytest.mark.parametrize("make", [random_convex, random_indefinite])
def test_candidates_are_kkt_points(rng, make):
    for _ in range(30):
        prob = make(rng, int(rng.integers(1, 8)))
        for cand in qp_kkt_candidates(prob):
            assert cand.kkt_residual <= 1e-8
            assert verify_qp_kkt(prob, cand.x_or_alpha) == pytest.approx(cand.kkt_residual)
            assert np.all(cand.x_or_alpha[cand.active_set] == 0)


def test_convex_oracle_beats_random_sweep(rng):
    for n in (2, 3, 5):
        prob = random_convex(rng, n)
        sol = oracle_qp(prob)
        pts = rng.dirichlet(np.ones(n), size=10**6)
        vals = 0.5 * np.einsum("ij,jk,ik->i", pts, prob.hessian, pts) - pts @ prob.linear
        assert sol.objective <= vals.min() + 1e-12
