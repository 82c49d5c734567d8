"""Conjugate gradient on the free variables under ``sum(alpha) = 1``.

The residual ``r = H a - c`` is mapped to a zero-sum vector with

    g = (m r_1 - sum(r), r_2 - r_1, ..., r_m - r_1)

which is ``Z Z' r`` for the null-space basis ``Z = [e_i - e_1]``. This is
not the orthogonal projection of ``r`` but it keeps every search direction
on the constraint hyperplane, and ``t = r'g`` equals ``sum((r_i - r_1)^2)``,
so ``t`` vanishes exactly when ``r`` is a constant vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._types import DimensionError, QPProblem, SimplexPoint, _frozen, as_index_set

CONVERGED = "converged"
MAX_ITERATIONS = "max_iterations"
NONPOSITIVE_CURVATURE = "nonpositive_curvature"


@dataclass(frozen=True)
class ReducedQP:
    hessian: np.ndarray
    linear: np.ndarray
    free_indices: np.ndarray

    @property
    def m(self) -> int:
        return self.linear.shape[0]

    def objective(self, a) -> float:
        a = np.asarray(a, dtype=np.float64)
        return float(0.5 * a @ self.hessian @ a - a @ self.linear)

    def scatter(self, a_reduced, n: int) -> np.ndarray:
        out = np.zeros(n)
        out[self.free_indices] = a_reduced
        return out


@dataclass(frozen=True)
class CGOutcome:
    alpha_reduced: np.ndarray
    iterations: int
    final_t: float
    status: str


def reduce_problem(problem: QPProblem, working, alpha) -> tuple[ReducedQP, np.ndarray]:
    """Restrict the problem to coordinates outside ``working``."""
    a = np.asarray(getattr(alpha, "alpha", alpha), dtype=np.float64)
    W = as_index_set(working, problem.n, "working")
    if a.shape != (problem.n,):
        raise DimensionError("alpha and problem sizes differ")
    if np.any(a[W] != 0):
        raise ValueError("working-set coordinates must be zero")
    free = np.setdiff1d(np.arange(problem.n), W)
    if free.size == 0:
        raise ValueError("no free variables")
    H = problem.hessian[np.ix_(free, free)].copy()
    c = problem.linear[free].copy()
    reduced = ReducedQP(_frozen(H), _frozen(c), _frozen(free))
    return reduced, a[free].copy()


def _zero_sum_residual(r: np.ndarray) -> np.ndarray:
    g = r - r[0]
    g[0] = r.shape[0] * r[0] - r.sum()
    return g


def constrained_cg(
    reduced: ReducedQP,
    start,
    zero_tol: float = 1e-14,
    callback: Callable[[dict], None] | None = None,
) -> CGOutcome:
    """Run at most ``m`` CG iterations from ``start``.

    Stops when ``t = r'g <= zero_tol * max(1, ||r||^2)``. Non-positive
    curvature ``p'Hp`` ends the run with the current iterate and status
    ``nonpositive_curvature``. ``callback``, if given, receives ``r``, ``g``,
    ``p`` and ``t`` at the top of every iteration.
    """
    H = reduced.hessian
    a = np.array(start, dtype=np.float64)
    m = reduced.m
    if a.shape != (m,):
        raise DimensionError(f"start has length {a.size}, reduced problem has {m}")
    if abs(a.sum() - 1.0) > 1e-8:
        raise ValueError("start must sum to one")

    r = H @ a - reduced.linear
    g = _zero_sum_residual(r)
    p = -g
    t = float(r @ g)
    iterations = 0
    status = MAX_ITERATIONS
    for _ in range(m):
        t = float(r @ g)
        if callback is not None:
            callback({"r": r.copy(), "g": g.copy(), "p": p.copy(), "t": t})
        if t <= zero_tol * max(1.0, float(r @ r)):
            status = CONVERGED
            break
        Hp = H @ p
        curv = float(p @ Hp)
        if curv <= zero_tol:
            status = NONPOSITIVE_CURVATURE
            break
        step = t / curv
        a = a + step * p
        r = r + step * Hp
        g = _zero_sum_residual(r)
        u = float(r @ g) / t
        p = -g + u * p
        iterations += 1
    else:
        t = float(r @ g)
        if t <= zero_tol * max(1.0, float(r @ r)):
            status = CONVERGED

    return CGOutcome(_frozen(a), iterations, t, status)


def scatter_point(reduced: ReducedQP, a_reduced, n: int) -> SimplexPoint:
    return SimplexPoint.repair(reduced.scatter(a_reduced, n), clip_tol=0.0)
