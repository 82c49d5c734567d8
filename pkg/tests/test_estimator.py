import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from simplexqp import PartialSignProjector, SimplexQP, oracle_qp

from conftest import random_convex


def test_fit_sets_attributes(rng):
    prob = random_convex(rng, 6)
    est = SimplexQP().fit(prob.hessian, prob.linear)
    assert est.n_features_in_ == 6
    assert est.objective_ == pytest.approx(oracle_qp(prob).objective, abs=1e-8)
    assert est.kkt_residual_ <= 1e-7
    assert est.status_.startswith("converged")


def test_params_roundtrip():
    est = SimplexQP(epsilon=1e-6, max_iter=50)
    assert est.get_params()["epsilon"] == 1e-6
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    est.set_params(theta1=0.3)
    assert est.theta1 == 0.3


def test_invalid_params_fail_at_fit():
    with pytest.raises(ValueError):
        SimplexQP(theta2=1.0, theta1=0.5).fit(np.eye(2))


def test_non_square_rejected():
    with pytest.raises(ValueError):
        SimplexQP().fit(np.ones((2, 3)))


def test_projector_rows(rng):
    X = rng.standard_normal((5, 4))
    out = PartialSignProjector(constrained=[0, 2]).fit_transform(X)
    assert out.shape == X.shape
    np.testing.assert_allclose(out.sum(axis=1), 0, atol=1e-12)
    assert np.all(out[:, [0, 2]] <= 0)


def test_projector_checks():
    with pytest.raises(NotFittedError):
        PartialSignProjector().transform(np.zeros((1, 3)))
    proj = PartialSignProjector([1]).fit(np.zeros((1, 3)))
    with pytest.raises(ValueError):
        proj.transform(np.zeros((1, 4)))
    with pytest.raises(IndexError):
        PartialSignProjector([7]).fit(np.zeros((1, 3)))


def test_projector_in_pipeline(rng):
    X = rng.standard_normal((3, 3))
    pipe = make_pipeline(PartialSignProjector([0]), PartialSignProjector([0]))
    np.testing.assert_allclose(pipe.fit_transform(X), PartialSignProjector([0]).fit_transform(X), atol=1e-12)
