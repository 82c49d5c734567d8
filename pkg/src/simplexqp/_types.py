"""Problem and point types shared by every solver stage.

Vectors are float64 numpy arrays and index sets are sorted int64 arrays.
Arrays stored on the frozen dataclasses are marked read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SUM_TOL = 1e-12


class DimensionError(ValueError):
    """Raised when vector, matrix or index-set sizes disagree."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_vector(values, name: str = "vector") -> np.ndarray:
    """Validate a 1-d array of finite floats and return a float64 copy."""
    v = np.array(values, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite values")
    return v


def as_index_set(indices, n: int, name: str = "index set") -> np.ndarray:
    """Validate positions in ``[0, n)`` and return them sorted and unique.

    Duplicates are rejected rather than silently merged.
    """
    idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices)
    if idx.size == 0:
        return np.zeros(0, dtype=np.int64)
    if idx.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional")
    if not np.issubdtype(idx.dtype, np.integer):
        if not np.all(np.equal(np.mod(idx, 1), 0)):
            raise ValueError(f"{name} must contain integers")
    idx = idx.astype(np.int64)
    if idx.min() < 0 or idx.max() >= n:
        raise IndexError(f"{name} has indices outside [0, {n})")
    out = np.unique(idx)
    if out.size != idx.size:
        raise ValueError(f"{name} contains duplicate indices")
    return out


def zero_set(alpha: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Positions where ``alpha`` is zero (``<= tol``; exact zero by default)."""
    return np.flatnonzero(alpha <= tol).astype(np.int64)


@dataclass(frozen=True)
class QPProblem:
    """``q(alpha) = 0.5 alpha' H alpha - alpha' c`` over the standard simplex.

    The Hessian is stored symmetrized as ``(H + H') / 2`` so rounding
    asymmetry in file input is harmless. It need not be positive semidefinite.
    """

    hessian: np.ndarray
    linear: np.ndarray

    def __post_init__(self):
        H = np.array(self.hessian, dtype=np.float64)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise DimensionError(f"hessian must be square, got shape {H.shape}")
        if not np.all(np.isfinite(H)):
            raise ValueError("hessian contains non-finite values")
        c = as_vector(self.linear, "linear")
        if c.shape[0] != H.shape[0]:
            raise DimensionError(
                f"linear has length {c.shape[0]} but hessian is {H.shape[0]}x{H.shape[0]}"
            )
        if H.shape[0] == 0:
            raise DimensionError("problem must have at least one variable")
        H = 0.5 * (H + H.T)
        object.__setattr__(self, "hessian", _frozen(H))
        object.__setattr__(self, "linear", _frozen(c))

    @property
    def n(self) -> int:
        return self.linear.shape[0]


@dataclass(frozen=True)
class SimplexPoint:
    """A point with non-negative components summing to one.

    Construction is strict. Use :meth:`repair` to map a nearly feasible
    vector onto the simplex deterministically.
    """

    alpha: np.ndarray

    def __post_init__(self):
        a = as_vector(self.alpha, "alpha")
        if a.size == 0:
            raise DimensionError("alpha must be non-empty")
        if np.any(a < 0):
            raise ValueError("alpha has negative components")
        if abs(a.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"alpha sums to {a.sum()!r}, not 1")
        object.__setattr__(self, "alpha", _frozen(a))

    @classmethod
    def repair(cls, values, clip_tol: float = 1e-9) -> "SimplexPoint":
        """Clamp negatives no larger than ``clip_tol`` to zero, then rescale.

        Rescaling keeps exact zeros exact. Larger negative entries or a
        non-positive total are rejected.
        """
        a = as_vector(values, "alpha")
        if np.any(a < -clip_tol):
            raise ValueError("alpha has negative components beyond the repair tolerance")
        a = np.where(a < 0, 0.0, a)
        s = a.sum()
        if not s > 0:
            raise ValueError("alpha has no positive mass")
        a = a / s
        if abs(a.sum() - 1.0) > SUM_TOL:
            # one more rescale absorbs the rounding of the first
            a = a / a.sum()
        return cls(a)

    @classmethod
    def uniform(cls, n: int) -> "SimplexPoint":
        return cls(np.full(n, 1.0 / n))

    @property
    def n(self) -> int:
        return self.alpha.shape[0]


@dataclass(frozen=True)
class SolverConfig:
    epsilon: float = 1e-8
    theta1: float = math.pi / 18
    theta2: float = math.pi / 90
    max_outer_iterations: int | None = None  # None means 10 * n + 1000
    cg_zero_tolerance: float = 1e-14
    active_tolerance: float = 0.0
    trace_enabled: bool = False
    binding_rule: str = "multiplier"

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not (0 < self.theta2 <= self.theta1 < math.pi):
            raise ValueError("need 0 < theta2 <= theta1 < pi")
        if self.max_outer_iterations is not None and self.max_outer_iterations < 0:
            raise ValueError("max_outer_iterations must be non-negative")
        if self.cg_zero_tolerance < 0 or self.active_tolerance < 0:
            raise ValueError("tolerances must be non-negative")
        if self.binding_rule not in ("multiplier", "sign"):
            raise ValueError("binding_rule must be 'multiplier' or 'sign'")

    def iteration_limit(self, n: int) -> int:
        if self.max_outer_iterations is None:
            return 10 * n + 1000
        return self.max_outer_iterations


def _alpha_of(point) -> np.ndarray:
    return point.alpha if isinstance(point, SimplexPoint) else np.asarray(point, dtype=np.float64)


def objective(problem: QPProblem, point) -> float:
    """Evaluate ``0.5 a'Ha - a'c``."""
    a = _alpha_of(point)
    if a.shape != (problem.n,):
        raise DimensionError(f"point has length {a.size}, problem has {problem.n}")
    return float(0.5 * a @ problem.hessian @ a - a @ problem.linear)


def gradient(problem: QPProblem, point) -> np.ndarray:
    """``H a - c``."""
    a = _alpha_of(point)
    if a.shape != (problem.n,):
        raise DimensionError(f"point has length {a.size}, problem has {problem.n}")
    return problem.hessian @ a - problem.linear
