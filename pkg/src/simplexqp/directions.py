"""Reduced and projected gradient directions for a point on the simplex.

Both directions start from the gradient ``d`` with some coordinates masked
to zero: the whole working set for the reduced direction, only its binding
part for the projected direction. The unmasked part is then projected so
that a step ``alpha - u * p`` keeps the coordinate sum and, for small ``u``,
leaves zero coordinates non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._types import _frozen, zero_set
from .projection import ProjectionProblem, project_partial_sign

DEGENERATE_NORM = 1e-12


@dataclass(frozen=True)
class DirectionPair:
    reduced: np.ndarray
    projected: np.ndarray
    angle: float
    binding: np.ndarray


def binding_set(working, d) -> np.ndarray:
    """Working-set positions whose gradient component is non-negative."""
    working = np.asarray(working, dtype=np.int64)
    d = np.asarray(d, dtype=np.float64)
    return working[d[working] >= 0]


def mask_gradient(d, mask) -> np.ndarray:
    out = np.array(d, dtype=np.float64)
    out[np.asarray(mask, dtype=np.int64)] = 0.0
    return out


def project_direction(g, fixed, sign_constrained) -> np.ndarray:
    """Project the coordinates of ``g`` outside ``fixed``; ``fixed`` stays zero.

    Sign constraints apply to ``sign_constrained`` minus ``fixed``.
    """
    g = np.asarray(g, dtype=np.float64)
    n = g.shape[0]
    free = np.ones(n, dtype=bool)
    free[np.asarray(fixed, dtype=np.int64)] = False
    out = np.zeros(n)
    if not free.any():
        return out
    free_idx = np.flatnonzero(free)
    # position of each original index inside the free sub-vector
    local = np.full(n, -1, dtype=np.int64)
    local[free_idx] = np.arange(free_idx.size)
    sc = np.asarray(sign_constrained, dtype=np.int64)
    sub_constrained = local[sc[free[sc]]]
    cert = project_partial_sign(ProjectionProblem(g[free_idx], sub_constrained))
    out[free_idx] = cert.x
    return out


def angle_between(u, v) -> float:
    """Angle in radians; pi when either vector is (numerically) zero."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu < DEGENERATE_NORM or nv < DEGENERATE_NORM:
        return math.pi
    cos = float(u @ v) / (nu * nv)
    return math.acos(min(1.0, max(-1.0, cos)))


def compute_directions(d, working, alpha, active_tolerance: float = 0.0,
                       shift: float = 0.0) -> DirectionPair:
    """Assemble both projected directions and the angle between them.

    ``shift`` is subtracted from ``d`` before the binding test only; the
    projections themselves do not depend on a constant offset of ``d``.
    """
    d = np.asarray(d, dtype=np.float64)
    alpha = getattr(alpha, "alpha", alpha)
    working = np.asarray(working, dtype=np.int64)
    at_zero = zero_set(np.asarray(alpha), active_tolerance)
    binding = binding_set(working, d - shift)
    reduced = project_direction(mask_gradient(d, working), working, at_zero)
    projected = project_direction(mask_gradient(d, binding), binding, at_zero)
    return DirectionPair(
        reduced=_frozen(reduced),
        projected=_frozen(projected),
        angle=angle_between(projected, reduced),
        binding=_frozen(binding),
    )
