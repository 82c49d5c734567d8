"""JSON problem and solution files.

A problem file holds ``n``, ``hessian`` (list of ``n`` rows), ``linear`` and
optionally ``start``. A projection file holds ``g`` and ``constrained``.
Unknown keys are rejected so typos surface immediately.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from ._types import QPProblem, SimplexPoint, SolverConfig
from .projection import ProjectionProblem

PROBLEM_KEYS = {"n", "hessian", "linear", "start"}
PROJECTION_KEYS = {"g", "constrained"}


class FileFormatError(ValueError):
    """Malformed input file; the message names the offending field."""


def _load(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError("top level must be an object")
    return doc


def _check_keys(doc: dict, allowed: set, required: set):
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise FileFormatError(f"unknown field(s): {', '.join(unknown)}")
    missing = sorted(required - set(doc))
    if missing:
        raise FileFormatError(f"missing field(s): {', '.join(missing)}")


def _real_array(value, field: str, shape: tuple) -> np.ndarray:
    try:
        arr = np.array(value, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"field '{field}' must be numeric") from exc
    if arr.shape != shape:
        raise FileFormatError(f"field '{field}' has shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr)):
        raise FileFormatError(f"field '{field}' has non-finite entries")
    return arr


def parse_problem(doc: dict) -> tuple[QPProblem, SimplexPoint]:
    _check_keys(doc, PROBLEM_KEYS, {"n", "hessian", "linear"})
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FileFormatError("field 'n' must be a positive integer")
    H = _real_array(doc["hessian"], "hessian", (n, n))
    c = _real_array(doc["linear"], "linear", (n,))
    problem = QPProblem(H, c)
    if doc.get("start") is None:
        start = SimplexPoint.uniform(n)
    else:
        a = _real_array(doc["start"], "start", (n,))
        try:
            start = SimplexPoint(a)
        except ValueError as exc:
            raise FileFormatError(f"field 'start' is not on the simplex: {exc}") from exc
    return problem, start


def load_problem(path) -> tuple[QPProblem, SimplexPoint]:
    return parse_problem(_load(path))


def parse_projection(doc: dict) -> ProjectionProblem:
    _check_keys(doc, PROJECTION_KEYS, {"g"})
    g = doc["g"]
    if not isinstance(g, list) or not g:
        raise FileFormatError("field 'g' must be a non-empty array")
    g = _real_array(g, "g", (len(g),))
    constrained = doc.get("constrained", [])
    if not isinstance(constrained, list) or not all(
        isinstance(i, int) and not isinstance(i, bool) for i in constrained
    ):
        raise FileFormatError("field 'constrained' must be an array of integers")
    try:
        return ProjectionProblem(g, constrained)
    except (IndexError, ValueError) as exc:
        raise FileFormatError(f"field 'constrained': {exc}") from exc


def load_projection(path) -> ProjectionProblem:
    return parse_projection(_load(path))


def problem_to_dict(problem: QPProblem, start: SimplexPoint | None = None) -> dict:
    doc = {
        "n": problem.n,
        "hessian": problem.hessian.tolist(),
        "linear": problem.linear.tolist(),
    }
    if start is not None:
        doc["start"] = start.alpha.tolist()
    return doc


def config_to_dict(config: SolverConfig) -> dict:
    return {
        "epsilon": config.epsilon,
        "theta1": config.theta1,
        "theta2": config.theta2,
        "max_outer_iterations": config.max_outer_iterations,
        "cg_zero_tolerance": config.cg_zero_tolerance,
        "active_tolerance": config.active_tolerance,
        "binding_rule": config.binding_rule,
    }


def result_to_dict(result, config: SolverConfig | None = None) -> dict:
    doc = {
        "alpha": result.alpha.alpha.tolist(),
        "objective": result.objective,
        "status": result.status,
        "kkt_residual": result.kkt_residual,
        "iterations": result.iterations,
        "cg_invocations": result.cg_invocations,
        "cg_rejections": result.cg_rejections,
    }
    if config is not None:
        doc["config"] = config_to_dict(config)
    if result.trace is not None:
        doc["trace"] = [rec.to_dict() for rec in result.trace]
    return doc


def dumps(doc: dict) -> str:
    """Serialize with shortest round-trip float formatting (``repr``)."""

    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        if isinstance(v, dict):
            return {k: clean(x) for k, x in v.items()}
        if isinstance(v, list):
            return [clean(x) for x in v]
        return v

    return json.dumps(clean(doc), indent=2) + "\n"
