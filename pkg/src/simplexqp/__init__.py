"""Quadratic programs on the standard simplex.

The solver combines gradient projection (via a sort-based projection onto
the zero-sum hyperplane with partial sign constraints), exact line search
and equality-constrained conjugate gradient.
"""

from ._types import DimensionError, QPProblem, SimplexPoint, SolverConfig, gradient, objective
from .cg import CGOutcome, ReducedQP, constrained_cg, reduce_problem
from .directions import DirectionPair, angle_between, binding_set, compute_directions
from .estimator import PartialSignProjector, SimplexQP
from .linesearch import LineSearchError, LineSearchResult, exact_line_search, max_feasible_step
from .oracle import OracleError, OracleSolution, oracle_project, oracle_qp
from .projection import (
    ProjectionCertificate,
    ProjectionProblem,
    project,
    project_hyperplane,
    project_partial_sign,
    verify_projection_kkt,
)
from .solver import IterationRecord, SolveResult, SolverState, solve, verify_qp_kkt

__all__ = [
    "CGOutcome",
    "DimensionError",
    "DirectionPair",
    "IterationRecord",
    "LineSearchError",
    "LineSearchResult",
    "OracleError",
    "OracleSolution",
    "PartialSignProjector",
    "ProjectionCertificate",
    "ProjectionProblem",
    "QPProblem",
    "ReducedQP",
    "SimplexPoint",
    "SimplexQP",
    "SolveResult",
    "SolverConfig",
    "SolverState",
    "angle_between",
    "binding_set",
    "compute_directions",
    "constrained_cg",
    "exact_line_search",
    "gradient",
    "max_feasible_step",
    "objective",
    "oracle_project",
    "oracle_qp",
    "project",
    "project_hyperplane",
    "project_partial_sign",
    "reduce_problem",
    "solve",
    "verify_projection_kkt",
    "verify_qp_kkt",
]
