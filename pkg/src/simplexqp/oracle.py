"""Exhaustive active-set enumeration used as ground truth in tests.

Both solvers here try every candidate zero set and keep those satisfying
the optimality conditions. They are exponential in the problem size and
guarded accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ._types import QPProblem, SimplexPoint, objective
from .projection import ProjectionProblem

PROJECT_GUARD = 20
QP_GUARD = 12
COND_LIMIT = 1e10
NEG_TOL = 1e-12
MULT_TOL = 1e-8


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleSolution:
    x_or_alpha: np.ndarray
    active_set: np.ndarray
    objective: float
    kkt_residual: float


def oracle_project(problem: ProjectionProblem) -> np.ndarray:
    g = problem.g
    G = [int(i) for i in problem.constrained]
    if len(G) > PROJECT_GUARD:
        raise OracleError(f"|G| = {len(G)} exceeds the enumeration guard {PROJECT_GUARD}")
    n = g.size
    scale = max(1.0, float(np.max(np.abs(g))))
    tol = 1e-12 * scale
    best, best_val = None, np.inf
    for size in range(len(G) + 1):
        for S in combinations(G, size):
            free = np.ones(n, dtype=bool)
            free[list(S)] = False
            if not free.any():
                continue
            mean = g[free].mean()
            x = np.where(free, g - mean, 0.0)
            rest = [i for i in G if i not in S]
            if any(x[i] > tol for i in rest):
                continue
            if any(2 * (g[i] - mean) < -tol for i in S):
                continue
            val = float(np.sum((x - g) ** 2))
            if val < best_val:
                best, best_val = x, val
    if best is None:
        raise OracleError("no subset satisfied the optimality conditions")
    return best


def qp_kkt_residual(problem: QPProblem, alpha: np.ndarray) -> float:
    """First-order residual on the simplex with the multiplier ``min(d)``."""
    alpha = np.asarray(alpha, dtype=np.float64)
    d = problem.hessian @ alpha - problem.linear
    lam = d.min()
    support = alpha > 0
    station = float(np.max(np.abs(d[support] - lam), initial=0.0))
    return max(station, abs(alpha.sum() - 1.0), float(np.max(np.maximum(-alpha, 0.0))))


def qp_kkt_candidates(problem: QPProblem, guard: int = QP_GUARD) -> list[OracleSolution]:
    """Every KKT point found by enumerating zero sets, in ascending cardinality.

    For a zero set ``Z`` the free block solves ``H_FF a_F - c_F = lam 1``,
    ``sum(a_F) = 1``. Near-singular blocks are skipped.
    """
    n = problem.n
    if n > guard:
        raise OracleError(f"n = {n} exceeds the enumeration guard {guard}")
    H, c = problem.hessian, problem.linear
    out = []
    idx = np.arange(n)
    for nz in range(n):
        k = n - nz
        frees = np.array(list(combinations(range(n), k)), dtype=np.int64)
        # batched bordered systems [[H_FF, -1], [1', 0]] [a; lam] = [c_F; 1]
        K = np.zeros((len(frees), k + 1, k + 1))
        K[:, :k, :k] = H[frees[:, :, None], frees[:, None, :]]
        K[:, :k, k] = -1.0
        K[:, k, :k] = 1.0
        rhs = np.zeros((len(frees), k + 1))
        rhs[:, :k] = c[frees]
        rhs[:, k] = 1.0
        cond = np.linalg.cond(K)
        ok = np.isfinite(cond) & (cond < COND_LIMIT)
        if not ok.any():
            continue
        sol = np.linalg.solve(K[ok], rhs[ok][..., None])[..., 0]
        for F, s in zip(frees[ok], sol):
            a_F, lam = s[:k], s[k]
            if np.any(a_F < -NEG_TOL):
                continue
            alpha = np.zeros(n)
            alpha[F] = np.maximum(a_F, 0.0)
            Z = np.setdiff1d(idx, F)
            d = H @ alpha - c
            if np.any(d[Z] - lam < -MULT_TOL):
                continue
            try:
                point = SimplexPoint.repair(alpha)
            except ValueError:
                continue
            out.append(
                OracleSolution(
                    x_or_alpha=point.alpha,
                    active_set=Z,
                    objective=objective(problem, point),
                    kkt_residual=qp_kkt_residual(problem, point.alpha),
                )
            )
    return out


def oracle_qp(problem: QPProblem, guard: int = QP_GUARD) -> OracleSolution:
    candidates = qp_kkt_candidates(problem, guard)
    if not candidates:
        raise OracleError("no KKT candidate survived the enumeration")
    best = candidates[0]
    for cand in candidates[1:]:
        if cand.objective < best.objective:
            best = cand
    return best
