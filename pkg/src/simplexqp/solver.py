"""Active-set driver for quadratic programs on the standard simplex.

Gradient projection explores the simplex, choosing between the reduced and
the projected direction by the angle between them. Once the working set has
been stable for more than ``n`` steps and the angle is below ``theta2``, a
constrained CG run on the free variables tries to finish the solve. A CG
result that raises the objective or leaves the non-negative orthant is
discarded and CG stays disabled until the working set changes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ._types import QPProblem, SimplexPoint, SolverConfig, gradient, objective, zero_set
from .cg import NONPOSITIVE_CURVATURE, constrained_cg, reduce_problem, scatter_point
from .directions import DirectionPair, compute_directions
from .linesearch import exact_line_search
from .oracle import qp_kkt_residual

logger = logging.getLogger(__name__)

CONVERGED_PROJECTION = "converged_projection"
CONVERGED_CG = "converged_cg"
MAX_ITERATIONS = "max_iterations"


@dataclass
class SolverState:
    alpha: SimplexPoint
    working: np.ndarray
    stable_count: int = 0
    cg_allowed: bool = True
    iteration: int = 0


@dataclass(frozen=True)
class IterationRecord:
    """One gradient-projection step, plus the CG check that followed it.

    ``stable_count``, ``cg_allowed`` and ``check_angle`` are the values the
    CG switch was evaluated on; ``working_set`` is the set after the step.
    """

    iteration: int
    objective: float
    direction_used: str
    angle: float
    step: float
    working_set_size: int
    event: str | None = None
    stable_count: int = 0
    cg_allowed: bool = True
    check_angle: float = float("nan")
    working_set: tuple = ()
    alpha: tuple = ()

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "objective": self.objective,
            "direction_used": self.direction_used,
            "angle": self.angle,
            "step": self.step,
            "working_set_size": self.working_set_size,
            "event": self.event,
            "stable_count": self.stable_count,
            "cg_allowed": self.cg_allowed,
            "check_angle": self.check_angle,
        }


@dataclass(frozen=True)
class SolveResult:
    alpha: SimplexPoint
    objective: float
    status: str
    kkt_residual: float
    iterations: int
    cg_invocations: int
    cg_rejections: int
    trace: list[IterationRecord] | None = field(default=None, repr=False)

    @property
    def converged(self) -> bool:
        return self.status in (CONVERGED_PROJECTION, CONVERGED_CG)


def verify_qp_kkt(problem: QPProblem, alpha) -> float:
    """``max(|d_i - min(d)| on the support, |sum - 1|, max(-alpha_i, 0))``."""
    a = getattr(alpha, "alpha", alpha)
    return qp_kkt_residual(problem, np.asarray(a, dtype=np.float64))


def _directions(problem, state, config) -> tuple[np.ndarray, DirectionPair]:
    d = gradient(problem, state.alpha)
    a = state.alpha.alpha
    free = np.ones(problem.n, dtype=bool)
    free[state.working] = False
    shift = float(d[free].mean()) if config.binding_rule == "multiplier" else 0.0
    return d, compute_directions(d, state.working, a, config.active_tolerance, shift)


def solve(problem: QPProblem, start: SimplexPoint | None = None,
          config: SolverConfig | None = None) -> SolveResult:
    config = config or SolverConfig()
    if start is None:
        start = SimplexPoint.uniform(problem.n)
    elif not isinstance(start, SimplexPoint):
        start = SimplexPoint(start)
    if start.n != problem.n:
        raise ValueError(f"start has length {start.n}, problem has {problem.n}")

    n = problem.n
    limit = config.iteration_limit(n)
    state = SolverState(alpha=start, working=zero_set(start.alpha, config.active_tolerance))
    trace: list[IterationRecord] | None = [] if config.trace_enabled else None
    cg_runs = cg_rejects = 0
    status = MAX_ITERATIONS

    d, dirs = _directions(problem, state, config)
    while True:
        if np.linalg.norm(dirs.projected) < config.epsilon:
            status = CONVERGED_PROJECTION
            break
        if state.iteration >= limit:
            break

        if dirs.angle < config.theta1:
            p, used = dirs.reduced, "reduced"
        else:
            p, used = dirs.projected, "projected"
        ls = exact_line_search(problem, state.alpha, p, d)
        choice_angle = dirs.angle

        old_working = state.working
        state.alpha = ls.point
        state.working = zero_set(state.alpha.alpha, config.active_tolerance)
        state.iteration += 1
        state.stable_count += 1
        if not np.array_equal(state.working, old_working):
            state.stable_count = 0
            state.cg_allowed = True

        d, dirs = _directions(problem, state, config)
        event = None
        check = (state.stable_count, state.cg_allowed, dirs.angle)
        if state.cg_allowed and state.stable_count > n and dirs.angle < config.theta2:
            cg_runs += 1
            event = "cg_attempt"
            reduced, a_free = reduce_problem(problem, state.working, state.alpha)
            out = constrained_cg(reduced, a_free, config.cg_zero_tolerance)
            logger.debug("iteration %d: CG on %d free variables -> %s after %d steps",
                         state.iteration, reduced.m, out.status, out.iterations)
            a_star = out.alpha_reduced
            if (reduced.objective(a_star) > reduced.objective(a_free)
                    or np.any(a_star < 0) or out.status == NONPOSITIVE_CURVATURE):
                cg_rejects += 1
                state.cg_allowed = False
                event = "cg_rejected"
            else:
                candidate = scatter_point(reduced, a_star, n)
                if verify_qp_kkt(problem, candidate) <= 10 * config.epsilon:
                    state.alpha = candidate
                    event = "cg_success"
                    if trace is not None:
                        trace.append(_record(problem, state, used, choice_angle, ls.step,
                                             event, check))
                    status = CONVERGED_CG
                    break
                # accepted but not yet stationary: keep the better point and
                # continue projecting
                state.alpha = candidate
                state.working = zero_set(candidate.alpha, config.active_tolerance)
                state.cg_allowed = False
                event = "cg_nonstationary"
                cg_rejects += 1
                d, dirs = _directions(problem, state, config)

        if trace is not None:
            trace.append(_record(problem, state, used, choice_angle, ls.step, event, check))

    alpha = state.alpha
    return SolveResult(
        alpha=alpha,
        objective=objective(problem, alpha),
        status=status,
        kkt_residual=verify_qp_kkt(problem, alpha),
        iterations=state.iteration,
        cg_invocations=cg_runs,
        cg_rejections=cg_rejects,
        trace=trace,
    )


def _record(problem, state, used, angle, step, event, check) -> IterationRecord:
    return IterationRecord(
        iteration=state.iteration,
        objective=objective(problem, state.alpha),
        direction_used=used,
        angle=angle,
        step=step,
        working_set_size=int(state.working.size),
        event=event,
        stable_count=check[0],
        cg_allowed=check[1],
        check_angle=check[2],
        working_set=tuple(int(i) for i in state.working),
        alpha=tuple(float(v) for v in state.alpha.alpha),
    )
