"""Solvers for the reconstruction step that turns an algebra increment into
a group transition.

The implicit relation is ``xi = dtau(xi).T @ (Ad_g.T dx)`` with the new
group element ``g_next = g @ tau(xi)``.  On SO(3) it is explicit for all
three packaged retractions; a damped fixed-point solver covers the generic
case (and doubles as an independent cross-check of the explicit forms).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DomainError
from .groups import LieGroupOps
from .retractions import TrivializationSide, cay, exp_so3, unskew

__all__ = [
    "solve_exp",
    "solve_cay",
    "solve_skw",
    "solve_fixed_point",
    "cay_step_norm",
    "skw_step_gamma",
    "ExplicitSo3Solver",
    "FixedPointSolver",
    "solver_by_name",
]

RIGHT = TrivializationSide.RIGHT
LEFT = TrivializationSide.LEFT

FIXED_POINT_TOL = 1e-12
FIXED_POINT_MAX_ITER = 100
QUARTIC_TOL = 1e-14
NEWTON_MAX_ITER = 50


def solve_exp(R: np.ndarray, dx: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Exponential-map step: ``exp(dx) @ R`` (RIGHT) or ``R @ exp(dx)``."""
    step = exp_so3(dx)
    return step @ R if side is RIGHT else R @ step


def cay_step_norm(dx_norm: float) -> float:
    """Single real root of ``m^3 + m - 2*|dx| = 0`` via the Cardano form
    ``m = L - 1/(3L)``, ``L = cbrt(|dx| + sqrt(|dx|^2 + 1/27))``."""
    L = np.cbrt(dx_norm + math.sqrt(dx_norm * dx_norm + 1.0 / 27.0))
    return L - 1.0 / (3.0 * L)


def solve_cay(R: np.ndarray, dx: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Cayley step ``cay(2 lam dx) @ R`` with ``lam = 1/(1 + m^2)`` where
    ``m`` is the real root of the cubic ``m^3 + m = 2 |dx|``."""
    m = cay_step_norm(float(np.linalg.norm(dx)))
    lam = 1.0 / (1.0 + m * m)
    step = cay(2.0 * lam * np.asarray(dx, dtype=float))
    return step @ R if side is RIGHT else R @ step


def skw_step_gamma(dx_norm: float) -> float:
    """Root in [1/2, 2/3] of ``|dx|^2 g^4 - 2 g + 1 = 0``.

    Newton from the safe interior guess 7/12; bisection fallback on
    [1/2, 2/3] if Newton leaves the bracket or stalls.
    """
    s = dx_norm * dx_norm
    if s == 0.0:
        return 0.5

    def q(g):
        return s * g**4 - 2.0 * g + 1.0

    g = 7.0 / 12.0
    for _ in range(NEWTON_MAX_ITER):
        val = q(g)
        if abs(val) < QUARTIC_TOL:
            return g
        dq = 4.0 * s * g**3 - 2.0
        g_new = g - val / dq
        if not (0.5 <= g_new <= 2.0 / 3.0):
            break
        g = g_new
    else:
        if abs(q(g)) < QUARTIC_TOL:
            return g

    # bisection fallback: q(1/2) = s/16 >= 0, q(2/3) = 16s/81 - 1/3 < 0 for s < 27/16
    lo, hi = 0.5, 2.0 / 3.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if q(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    g = 0.5 * (lo + hi)
    if abs(q(g)) > 1e-12:
        raise ConvergenceError(
            f"quartic solve failed at |dx| = {dx_norm:.6f}", residual=abs(q(g))
        )
    return g


def solve_skw(R: np.ndarray, dx: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Inverse-skew-projection step ``unskew(g dx) @ R`` with the quartic
    coefficient ``g`` from :func:`skw_step_gamma`.  Requires ``|dx| < 1``."""
    n = float(np.linalg.norm(dx))
    if n >= 1.0:
        raise DomainError(f"skw solver requires |dx| < 1, got {n:.6f}")
    g = skw_step_gamma(n)
    step = unskew(g * np.asarray(dx, dtype=float))
    return step @ R if side is RIGHT else R @ step


def solve_fixed_point(group: LieGroupOps, g, dx, tol: float = FIXED_POINT_TOL,
                      max_iter: int = FIXED_POINT_MAX_ITER):
    """Generic reconstruction via damped fixed-point iteration.

    Iterates ``xi <- (xi + dtau(xi).T @ eta) / 2`` with ``eta = Ad_g.T dx``,
    starting from ``xi = eta`` (exact for the Euclidean case, first-order
    accurate otherwise).  The averaging halves the oscillatory modes of the
    plain Picard map, whose spectral radius approaches 1 for the Cayley
    tangents at large increments.
    """
    ret = group.retraction
    eta = group.ad_transpose(g, np.asarray(dx, dtype=float))
    xi = eta.copy()
    residual = math.inf
    for _ in range(max_iter):
        fx = ret.dtau(xi).T @ eta
        residual = float(np.linalg.norm(fx - xi))
        if residual < tol:
            return group.compose(g, ret.tau(xi))
        xi = 0.5 * (xi + fx)
    raise ConvergenceError(
        f"reconstruction fixed point did not converge in {max_iter} iterations",
        residual=residual,
    )


class ExplicitSo3Solver:
    """Reconstruction solver wrapping one of the explicit SO(3) steps."""

    _steps = {"exp": solve_exp, "cay": solve_cay, "skw": solve_skw}

    def __init__(self, name: str, side: TrivializationSide = RIGHT):
        if name not in self._steps:
            raise ValueError(f"unknown solver '{name}' (choose from exp, cay, skw)")
        self.name = name
        self.side = side
        self._step = self._steps[name]

    def step(self, g, dx):
        return self._step(g, dx, self.side)

    def __repr__(self):  # pragma: no cover
        return f"<solver {self.name}>"


class FixedPointSolver:
    """Reconstruction solver running the generic fixed-point iteration for
    whatever retraction the group carries."""

    name = "fixed_point"

    def __init__(self, group: LieGroupOps):
        self.group = group

    def step(self, g, dx):
        return solve_fixed_point(self.group, g, dx)


def solver_by_name(name: str) -> ExplicitSo3Solver:
    return ExplicitSo3Solver(name)
