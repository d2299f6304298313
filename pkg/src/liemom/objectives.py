"""Objective functions on SO(3) and R^n with right-trivialized gradients.

Each objective reports, besides ``value`` and ``grad``, the scale ``w``
(``pairing_weight``) relating its gradient to directional derivatives:

    d/dt value(exp(t hat(Theta)) @ R) | t=0  ==  w * dot(grad(R), Theta).

Objectives obtained by *restricting* a matrix-space function to SO(3) carry
their gradient in the skew-matrix (Frobenius) pairing, where
``<hat(a), hat(b)>_F = 2 dot(a, b)``, hence ``w = 2``; objectives composed
with a vector chart of the group use the Euclidean pairing, ``w = 1``.
The distinction only matters to derivative checks: the descent schemes
consume ``grad`` as-is, so ``w`` never enters the dynamics.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .retractions import CAY, EXP, Retraction, exp_so3
from .so3 import hat, skew_part, vee

__all__ = [
    "Objective",
    "rosenbrock_nd",
    "rosenbrock_nd_grad",
    "frobenius_objective",
    "restricted_rosenbrock_objective",
    "retracted_rosenbrock_objective",
    "euclidean_objective",
    "rosenbrock_objective",
    "quadratic_objective",
]


class Objective:
    """Real function on a group with a trivialized gradient.

    ``minimum``/``minimizer`` are the analytic optimum when known (used for
    residue reporting); ``None`` disables reference curves downstream.
    """

    def __init__(self, name, value, grad, minimum=None, minimizer=None,
                 pairing_weight=1.0):
        self.name = name
        self._value = value
        self._grad = grad
        self.minimum = minimum
        self.minimizer = minimizer
        self.pairing_weight = pairing_weight

    def value(self, g) -> float:
        return self._value(g)

    def grad(self, g) -> np.ndarray:
        return self._grad(g)

    def residue(self, g) -> float:
        v = self.value(g)
        return v if self.minimum is None else v - self.minimum

    def __repr__(self):  # pragma: no cover
        return f"<objective {self.name}>"


# ---------------------------------------------------------------------------
# Rosenbrock family on R^n
# ---------------------------------------------------------------------------

def rosenbrock_nd(x: np.ndarray) -> float:
    """sum_i (1 - x_i)^2 + 100 (x_{i+1} - x_i^2)^2, global minimum 0 at
    the all-ones vector."""
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise ValueError("rosenbrock needs dimension >= 2")
    return float(np.sum((1.0 - x[:-1]) ** 2 + 100.0 * (x[1:] - x[:-1] ** 2) ** 2))


def rosenbrock_nd_grad(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise ValueError("rosenbrock needs dimension >= 2")
    g = np.zeros_like(x)
    g[:-1] += -2.0 * (1.0 - x[:-1]) - 400.0 * x[:-1] * (x[1:] - x[:-1] ** 2)
    g[1:] += 200.0 * (x[1:] - x[:-1] ** 2)
    return g


# ---------------------------------------------------------------------------
# SO(3) objectives
# ---------------------------------------------------------------------------

def frobenius_objective() -> Objective:
    """Half squared Frobenius distance to the identity restricted to SO(3):
    ``value(R) = |R - I|_F^2 / 2 = 3 - tr(R)``, minimum 0 at I, maximum 4
    on the trace -1 rotations.  ``grad(R) = vee(skew_part(R))``."""

    def value(R):
        return 3.0 - float(np.trace(R))

    def grad(R):
        return vee(skew_part(R))

    return Objective("frobenius", value, grad, minimum=0.0, minimizer=np.eye(3),
                     pairing_weight=2.0)


def _rros_gradient_matrix(R: np.ndarray) -> np.ndarray:
    # columnwise flattening throughout: entry order a11,a21,a31,a12,...
    A = np.ones((3, 3)) + R - np.eye(3)
    g9 = rosenbrock_nd_grad(A.ravel(order="F"))
    return g9.reshape((3, 3), order="F")


def restricted_rosenbrock_objective() -> Objective:
    """9-dimensional Rosenbrock applied columnwise to ``1 + R - I`` and
    restricted to SO(3); unique global minimum 0 at the identity.

    The right-trivialized gradient is ``vee(skew_part(G @ R.T))`` where
    ``G`` is the columnwise-reshaped Euclidean Rosenbrock gradient at the
    same argument (pinned against directional finite differences in the
    test suite)."""

    def value(R):
        A = np.ones((3, 3)) + R - np.eye(3)
        return rosenbrock_nd(A.ravel(order="F"))

    def grad(R):
        G = _rros_gradient_matrix(R)
        return vee(skew_part(G @ R.T))

    return Objective("rosenbrock9", value, grad, minimum=0.0, minimizer=np.eye(3),
                     pairing_weight=2.0)


def retracted_rosenbrock_objective(ret: Retraction) -> Objective:
    """3-dimensional Rosenbrock composed with the inverse retraction chart:
    ``value(R) = ros(tau_inv(R))``; unique global minimum 0 at
    ``tau(hat((1,1,1)))``.

    Only the exponential and Cayley charts are accepted: the minimizer's
    axis vector has norm sqrt(3) >= 1, outside the unskew chart's domain.
    ``grad(R) = dtau_inv(-Omega) @ ros_grad(Omega)`` with
    ``Omega = tau_inv(R)`` (Euclidean pairing, w = 1).
    """
    if ret.name not in ("exp", "cay"):
        raise DomainError(
            "retracted rosenbrock requires the exp or cay chart: the minimizer "
            "axis (1,1,1) has norm sqrt(3), outside the unskew domain"
        )

    def value(R):
        return rosenbrock_nd(ret.tau_inv(R))

    def grad(R):
        om = ret.tau_inv(R)
        return ret.dtau_inv(-om) @ rosenbrock_nd_grad(om)

    minimizer = ret.tau(np.ones(3))
    return Objective(f"rosenbrock3-{ret.name}", value, grad, minimum=0.0,
                     minimizer=minimizer, pairing_weight=1.0)


# ---------------------------------------------------------------------------
# Euclidean objectives (translation-group runs and reduction tests)
# ---------------------------------------------------------------------------

def euclidean_objective(name, value, grad, minimum=None, minimizer=None) -> Objective:
    """Wrap plain vector-space callables; the trivialized gradient of a
    function on the translation group is its ordinary gradient."""
    return Objective(name, value, grad, minimum=minimum, minimizer=minimizer,
                     pairing_weight=1.0)


def rosenbrock_objective(n: int) -> Objective:
    """n-dimensional Rosenbrock on the translation group."""
    return euclidean_objective(
        f"rosenbrock{n}d", rosenbrock_nd, rosenbrock_nd_grad,
        minimum=0.0, minimizer=np.ones(n),
    )


def quadratic_objective(n: int = 1) -> Objective:
    """``|x|^2 / 2`` on the translation group."""
    return euclidean_objective(
        f"quadratic{n}d",
        lambda x: 0.5 * float(np.asarray(x) @ np.asarray(x)),
        lambda x: np.asarray(x, dtype=float),
        minimum=0.0, minimizer=np.zeros(n),
    )


def directional_derivative(obj: Objective, R: np.ndarray, theta: np.ndarray,
                           h: float = 1e-6) -> float:
    """Central finite difference of ``obj`` along ``exp(t hat(theta)) @ R``.

    Equals ``obj.pairing_weight * dot(obj.grad(R), theta)`` up to O(h^2);
    the derivative checks in the test suite are built on this.
    """
    fp = obj.value(exp_so3(h * theta) @ R)
    fm = obj.value(exp_so3(-h * theta) @ R)
    return (fp - fm) / (2.0 * h)
