"""Exact line search for the quadratic objective along ``alpha - u * p``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._types import QPProblem, SimplexPoint, _frozen

SUM_PRECONDITION_TOL = 1e-10
TIE_RTOL = 1e-14
BLOCK_RTOL = 1e-12


class LineSearchError(RuntimeError):
    """The direction is not a descent direction or the descent is unbounded."""


@dataclass(frozen=True)
class LineSearchResult:
    step: float
    blocking: np.ndarray
    curvature: float
    directional_derivative: float
    u_max: float
    point: SimplexPoint


def max_feasible_step(alpha, p) -> float:
    """Largest ``u`` with ``alpha - u * p >= 0``; ``inf`` when no ``p_i > 0``."""
    a = np.asarray(getattr(alpha, "alpha", alpha), dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    pos = p > 0
    if not pos.any():
        return np.inf
    return float(np.min(a[pos] / p[pos]))


def exact_line_search(problem: QPProblem, alpha, p, d) -> LineSearchResult:
    """Minimize ``q(alpha - u p)`` over ``[0, u_max]``.

    Along the ray the objective is ``q - u d'p + u^2 p'Hp / 2``. With positive
    curvature the step is ``min(d'p / p'Hp, u_max)``; otherwise the step is
    ``u_max``. When the boundary is reached, every coordinate that hits zero
    is written as an exact zero.
    """
    a = np.asarray(getattr(alpha, "alpha", alpha), dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    if not np.any(p):
        raise LineSearchError("zero search direction")
    if abs(p.sum()) > SUM_PRECONDITION_TOL * max(1.0, float(np.abs(p).sum())):
        raise LineSearchError("search direction does not sum to zero")
    # sum(p) = 0, so removing a constant from d leaves d'p unchanged and
    # avoids cancellation against the constant part of the gradient
    moving = p != 0
    slope = float((d[moving] - d[moving].mean()) @ p[moving])
    if not slope > 0:
        raise LineSearchError(f"not a descent direction (d'p = {slope!r})")
    curv = float(p @ problem.hessian @ p)
    u_max = max_feasible_step(a, p)

    if curv > 0:
        u_free = slope / curv
        hits_boundary = u_free >= u_max * (1 - TIE_RTOL)
    else:
        if not np.isfinite(u_max):
            raise LineSearchError("unbounded descent along a zero-sum direction")
        hits_boundary = True

    if hits_boundary:
        step = u_max
        pos = p > 0
        ratios = np.full(a.shape, np.inf)
        ratios[pos] = a[pos] / p[pos]
        blocking = np.flatnonzero(ratios <= u_max * (1 + BLOCK_RTOL))
        new = a - step * p
        new[blocking] = 0.0
    else:
        step = u_free
        blocking = np.zeros(0, dtype=np.int64)
        new = a - step * p

    return LineSearchResult(
        step=float(step),
        blocking=_frozen(blocking.astype(np.int64)),
        curvature=curv,
        directional_derivative=slope,
        u_max=float(u_max),
        point=SimplexPoint.repair(new),
    )
