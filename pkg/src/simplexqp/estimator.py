"""scikit-learn style front ends.

``SimplexQP`` fits a quadratic program given as ``(H, c)`` and exposes the
minimizer as ``alpha_``. ``PartialSignProjector`` is a stateless transformer
that projects every row of ``X`` onto the zero-sum hyperplane with sign
constraints on a fixed set of columns.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._types import QPProblem, SimplexPoint, SolverConfig
from .projection import ProjectionProblem, project_partial_sign
from .solver import solve


class SimplexQP(BaseEstimator):
    """Minimize ``0.5 a'Ha - a'c`` over the standard simplex.

    Parameters mirror :class:`SolverConfig`. After :meth:`fit` the estimator
    carries ``alpha_``, ``objective_``, ``status_``, ``kkt_residual_``,
    ``n_iter_`` and the full ``result_``.
    """

    def __init__(self, epsilon=1e-8, theta1=math.pi / 18, theta2=math.pi / 90,
                 max_iter=None, cg_zero_tolerance=1e-14, binding_rule="multiplier",
                 trace=False):
        self.epsilon = epsilon
        self.theta1 = theta1
        self.theta2 = theta2
        self.max_iter = max_iter
        self.cg_zero_tolerance = cg_zero_tolerance
        self.binding_rule = binding_rule
        self.trace = trace

    def _config(self) -> SolverConfig:
        return SolverConfig(
            epsilon=self.epsilon,
            theta1=self.theta1,
            theta2=self.theta2,
            max_outer_iterations=self.max_iter,
            cg_zero_tolerance=self.cg_zero_tolerance,
            binding_rule=self.binding_rule,
            trace_enabled=self.trace,
        )

    def fit(self, H, c=None, start=None):
        H = check_array(H, dtype=np.float64)
        n = H.shape[0]
        if H.shape != (n, n):
            raise ValueError(f"H must be square, got shape {H.shape}")
        c = np.zeros(n) if c is None else check_array(c, ensure_2d=False, dtype=np.float64)
        problem = QPProblem(H, c)
        point = SimplexPoint.uniform(n) if start is None else SimplexPoint(start)
        result = solve(problem, point, self._config())
        self.n_features_in_ = n
        self.problem_ = problem
        self.result_ = result
        self.alpha_ = np.array(result.alpha.alpha)
        self.objective_ = result.objective
        self.status_ = result.status
        self.kkt_residual_ = result.kkt_residual
        self.n_iter_ = result.iterations
        return self


class PartialSignProjector(TransformerMixin, BaseEstimator):
    """Project rows onto ``{x : sum(x) = 0, x[constrained] <= 0}``."""

    def __init__(self, constrained=()):
        self.constrained = constrained

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        self.n_features_in_ = X.shape[1]
        # validates the index set against the width
        ProjectionProblem(np.zeros(self.n_features_in_), self.constrained)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, projector was fitted with {self.n_features_in_}"
            )
        return np.vstack(
            [project_partial_sign(ProjectionProblem(row, self.constrained)).x for row in X]
        )
