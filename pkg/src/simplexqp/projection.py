"""Least-squares projection onto the zero-sum hyperplane with partial sign constraints.

Solves ``min ||x - g||^2`` subject to ``sum(x) = 0`` and ``x[i] <= 0`` for
``i`` in a constrained set ``G``. Sorting ``g`` in descending order lets the
solution be found in one sweep over ``G``: a constrained coordinate whose
value exceeds the running mean of the remaining coordinates is pinned to
zero and dropped from the mean. The sweep stops at the first constrained
coordinate that does not exceed the mean. The sort dominates the cost.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._types import DimensionError, _frozen, as_index_set, as_vector


@dataclass(frozen=True)
class ProjectionProblem:
    g: np.ndarray
    constrained: np.ndarray

    def __post_init__(self):
        g = as_vector(self.g, "g")
        if g.size == 0:
            raise DimensionError("g must be non-empty")
        G = as_index_set(self.constrained, g.size, "constrained")
        object.__setattr__(self, "g", _frozen(g))
        object.__setattr__(self, "constrained", _frozen(G))

    @property
    def n(self) -> int:
        return self.g.shape[0]


@dataclass(frozen=True)
class ProjectionCertificate:
    """Projection ``x`` with the multipliers proving it optimal.

    ``lambda_`` multiplies the sum constraint, ``mu`` the sign constraints
    (zero outside ``G``). ``zero_set`` holds the constrained coordinates the
    sweep pinned to zero and ``mean_free`` is the mean of ``g`` over the rest.
    """

    x: np.ndarray
    lambda_: float
    mu: np.ndarray
    zero_set: np.ndarray
    mean_free: float


def _sweep(g: np.ndarray, constrained: np.ndarray):
    """Run the sorted sweep. Returns the sort order, the sorted positions of
    the constrained set, the number of removed coordinates and the running
    means ``a_0 >= a_1 >= ... >= a_k``."""
    n = g.shape[0]
    # stable sort on -g keeps tied entries in input order
    order = np.argsort(-g, kind="stable")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    pos = np.sort(rank[constrained])
    gs = g[order]
    m = pos.size
    if m == 0:
        return order, pos, 0, np.array([gs.sum() / n])

    vals = gs[pos]
    unconstrained = 0.0
    if m < n:
        keep = np.ones(n, dtype=bool)
        keep[pos] = False
        unconstrained = gs[keep].sum()
    # sum of the constrained entries still present after j removals, summed
    # from the small end: subtracting removed entries from a running total
    # can cancel the remaining mass entirely
    tail = np.append(np.cumsum(vals[::-1])[::-1], 0.0)
    means = (unconstrained + tail) / (n - np.arange(m + 1, dtype=np.float64)).clip(min=1)
    fails = np.flatnonzero(~(vals > means[:-1]))
    k = int(fails[0]) if fails.size else m
    # emptying the free set is unreachable: the last survivor equals its own mean
    k = min(k, n - 1)
    return order, pos, k, means[: k + 1]


def project_partial_sign(problem: ProjectionProblem) -> ProjectionCertificate:
    g = problem.g
    order, pos, k, means = _sweep(g, problem.constrained)
    zeros = np.sort(order[pos[:k]])
    # the sweep's own mean keeps x consistent with its sign decisions
    mean_free = float(means[-1])

    x = g - mean_free
    x[zeros] = 0.0
    mu = np.zeros_like(g)
    mu[zeros] = 2.0 * (g[zeros] - mean_free)
    return ProjectionCertificate(
        x=_frozen(x),
        lambda_=-2.0 * mean_free,
        mu=_frozen(mu),
        zero_set=_frozen(zeros),
        mean_free=mean_free,
    )


def removal_thresholds(problem: ProjectionProblem) -> np.ndarray:
    """Running means visited by the sweep, one per removal plus the initial mean."""
    return _sweep(problem.g, problem.constrained)[3]


def project(g, constrained=()) -> np.ndarray:
    """Convenience wrapper returning only the projected vector."""
    return project_partial_sign(ProjectionProblem(g, constrained)).x


def project_hyperplane(g) -> np.ndarray:
    g = as_vector(g, "g")
    if g.size == 0:
        raise DimensionError("g must be non-empty")
    return g - g.mean()


def verify_projection_kkt(problem: ProjectionProblem, cert: ProjectionCertificate) -> float:
    """Largest violation among the optimality conditions of the projection.

    Checks the sum constraint, primal and dual sign feasibility on ``G``,
    complementary slackness on ``G`` and stationarity
    ``2x - 2g - lambda + mu = 0`` on every coordinate.
    """
    g = problem.g
    x = np.asarray(cert.x, dtype=np.float64)
    mu = np.asarray(cert.mu, dtype=np.float64)
    if x.shape != g.shape or mu.shape != g.shape:
        raise DimensionError("certificate and problem sizes differ")
    G = problem.constrained
    outside = np.ones(g.shape[0], dtype=bool)
    outside[G] = False
    terms = [
        abs(x.sum()),
        float(np.max(np.abs(2 * x - 2 * g - cert.lambda_ + mu))),
        float(np.max(np.abs(mu[outside]), initial=0.0)),
    ]
    if G.size:
        terms += [
            float(np.max(np.maximum(x[G], 0.0))),
            float(np.max(np.maximum(-mu[G], 0.0))),
            float(np.max(np.abs(mu[G] * x[G]))),
        ]
    return max(terms)
