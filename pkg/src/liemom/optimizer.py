"""Momentum descent and gradient descent on Lie groups.

The momentum scheme propagates auxiliary algebra vectors ``x, y, z`` and
reconstructs group elements from the increments ``dx_k = x_{k+1} - x_k``:

    y_{k+1} = x_k - eta_k * grad(g_k)
    z_{k+1} = (1 - eps) * x_k + eps * y_{k+1}
    x_{k+1} = y_{k+1} + mu_k * (z_{k+1} - z_k)
    g_{k+1} = solver.step(g_k, x_{k+1} - x_k)

with ``eps = 0`` the classical-momentum (heavy-ball) variant and
``eps = 1`` the accelerated (Nesterov) variant; ``mu == 0`` collapses both
to gradient descent.  Initialization: ``g_1 = g_0``, ``x_0 = x_1 = 0``,
``y_1 = -eta_0 grad(g_0)``, ``z_1 = eps * y_1`` (the gauge ``x_0 = 0`` is a
free choice; the doubled scheme below propagates increments only and is
provably independent of it).
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import ConvergenceError
from .groups import LieGroupOps
from .objectives import Objective

__all__ = [
    "Strategy",
    "strategy_from_lagrangian",
    "MethodKind",
    "Trajectory",
    "run_momentum",
    "run_gd",
    "run_momentum_doubled",
    "recover_increments",
    "del_residuals",
]

# Gram-Schmidt repair cadence for very long runs; retraction updates keep
# iterates orthogonal to round-off over any practical epoch budget below it.
REPAIR_EVERY = 10_000


class Strategy:
    """Momentum/learning-rate coefficient sequences ``(mu_k, eta_k)``."""

    def __init__(self, mu, eta):
        self._mu = mu
        self._eta = eta

    def mu(self, k: int) -> float:
        return float(self._mu(k))

    def eta(self, k: int) -> float:
        return float(self._eta(k))

    @classmethod
    def constant(cls, mu0: float, eta0: float) -> "Strategy":
        if eta0 <= 0.0:
            raise ValueError(f"learning rate must be positive, got {eta0}")
        if mu0 < 0.0:
            raise ValueError(f"momentum coefficient must be >= 0, got {mu0}")
        return cls(lambda k: mu0, lambda k: eta0)

    @classmethod
    def from_sequences(cls, mu_seq, eta_seq) -> "Strategy":
        mu_seq = np.asarray(mu_seq, dtype=float)
        eta_seq = np.asarray(eta_seq, dtype=float)
        if (eta_seq <= 0).any():
            raise ValueError("learning rates must be positive")
        if (mu_seq < 0).any():
            raise ValueError("momentum coefficients must be >= 0")
        return cls(lambda k: mu_seq[k], lambda k: eta_seq[k])


def strategy_from_lagrangian(a, b_minus, b_plus) -> Strategy:
    """Strategy induced by discrete Lagrangian coefficient sequences:
    ``mu_k = a_{k-1} / a_k`` and ``eta_k = (b-_k + b+_k) / a_k``.

    ``mu(0)`` is never consumed by the schemes (the momentum step starts at
    k = 1) and is defined as 1.  An exponentially dilated choice
    ``a_k = rho**-k``, ``b-_k + b+_k = c * a_k`` yields the constant
    strategy ``(rho, c)``.
    """
    a = np.asarray(a, dtype=float)
    b_minus = np.asarray(b_minus, dtype=float)
    b_plus = np.asarray(b_plus, dtype=float)
    if (a <= 0).any():
        raise ValueError("lagrangian coefficients a_k must be positive")
    b_sum = b_minus + b_plus

    def mu(k):
        return 1.0 if k == 0 else a[k - 1] / a[k]

    def eta(k):
        return b_sum[k] / a[k]

    return Strategy(mu, eta)


class MethodKind(enum.Enum):
    GD = "gd"
    PHB = "phb"
    NAG = "nag"

    @property
    def epsilon(self) -> int:
        return 1 if self is MethodKind.NAG else 0

    @property
    def uses_momentum(self) -> bool:
        return self is not MethodKind.GD


class Trajectory:
    """Per-epoch record of a run: group elements, objective values,
    residues (values minus the known minimum when available), and the
    algebra increments ``dx_k`` driving ``g_k -> g_{k+1}`` (the final entry
    is a zero sentinel)."""

    def __init__(self, elements, values, residues, increments):
        self.elements = elements
        self.values = np.asarray(values, dtype=float)
        self.residues = np.asarray(residues, dtype=float)
        self.increments = increments

    def __len__(self):
        return len(self.elements)

    @property
    def final_element(self):
        return self.elements[-1]

    @property
    def final_residue(self) -> float:
        return float(self.residues[-1])


def _finite_or_raise(vec, k):
    if not np.all(np.isfinite(vec)):
        raise ConvergenceError(f"non-finite gradient at step {k}; run aborted")
    return vec


def run_momentum(group: LieGroupOps, obj: Objective, solver, g0, strategy: Strategy,
                 epsilon: int, epochs: int) -> Trajectory:
    """Run the momentum scheme for ``epochs`` steps, returning a trajectory
    of ``epochs + 1`` records (``g_1 = g_0`` repeats the starting point, as
    the scheme is a second-order difference equation warm-started
    stationary)."""
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if epsilon not in (0, 1):
        raise ValueError(f"epsilon must be 0 or 1, got {epsilon}")

    dim = group.algebra_dim
    zeros = np.zeros(dim)

    g = g0
    elements = [g0, g0]
    values = [obj.value(g0)]
    increments = [zeros.copy()]  # dx_0 = 0 realizes g_1 = g_0
    values.append(values[0])

    grad0 = _finite_or_raise(obj.grad(g0), 0)
    x = zeros.copy()
    z_prev = epsilon * (-strategy.eta(0) * grad0)  # z_1

    for k in range(1, epochs):
        grad_k = _finite_or_raise(obj.grad(g), k)
        y = x - strategy.eta(k) * grad_k
        z = (1 - epsilon) * x + epsilon * y
        x_next = y + strategy.mu(k) * (z - z_prev)
        dx = x_next - x
        try:
            g = solver.step(g, dx)
        except Exception as exc:
            raise ConvergenceError(f"reconstruction failed at step {k}: {exc}") from exc
        if (k + 1) % REPAIR_EVERY == 0:
            g = group.repair(g)
        elements.append(g)
        values.append(obj.value(g))
        increments.append(dx)
        x = x_next
        z_prev = z

    increments.append(zeros.copy())
    values = np.asarray(values)
    residues = values if obj.minimum is None else values - obj.minimum
    return Trajectory(elements, values, residues, increments)


def run_gd(group: LieGroupOps, obj: Objective, solver, g0, strategy: Strategy,
           epochs: int) -> Trajectory:
    """Gradient descent: the momentum scheme with ``mu == 0`` (bit-identical
    by construction, since it runs the same code path)."""
    zero_mu = Strategy(lambda k: 0.0, strategy.eta)
    return run_momentum(group, obj, solver, g0, zero_mu, 0, epochs)


def run_momentum_doubled(group: LieGroupOps, obj: Objective, solver, g0,
                         strategy: Strategy, epsilon: int, epochs: int) -> Trajectory:
    """Increment-only form of :func:`run_momentum`: propagates
    ``(dx_k, dz_k)`` and gradient differences instead of the absolute
    vectors ``x, y, z``, so no gauge for ``x_0`` is ever chosen.  Produces
    the same group trajectory up to round-off."""
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if epsilon not in (0, 1):
        raise ValueError(f"epsilon must be 0 or 1, got {epsilon}")

    dim = group.algebra_dim
    zeros = np.zeros(dim)

    elements = [g0, g0]
    values = [obj.value(g0)]
    values.append(values[0])
    increments = [zeros.copy()]

    if epochs >= 2:
        e_prev = strategy.eta(0) * _finite_or_raise(obj.grad(g0), 0)  # eta_0 grad(g_0)
        e_cur = strategy.eta(1) * _finite_or_raise(obj.grad(g0), 1)   # g_1 = g_0
        dz = -epsilon * (e_cur - e_prev)                # dz_1
        dx = -e_cur + strategy.mu(1) * dz               # dx_1
        g = solver.step(g0, dx)
        elements.append(g)
        values.append(obj.value(g))
        increments.append(dx)
        e_prev = e_cur

        for k in range(1, epochs - 1):
            e_cur = strategy.eta(k + 1) * _finite_or_raise(obj.grad(g), k + 1)
            dy = dx - (e_cur - e_prev)
            dz_next = (1 - epsilon) * dx + epsilon * dy
            dx = dy + strategy.mu(k + 1) * dz_next - strategy.mu(k) * dz
            try:
                g = solver.step(g, dx)
            except Exception as exc:
                raise ConvergenceError(
                    f"reconstruction failed at step {k + 1}: {exc}"
                ) from exc
            if (k + 2) % REPAIR_EVERY == 0:
                g = group.repair(g)
            elements.append(g)
            values.append(obj.value(g))
            increments.append(dx)
            dz = dz_next
            e_prev = e_cur

    increments.append(zeros.copy())
    values = np.asarray(values)
    residues = values if obj.minimum is None else values - obj.minimum
    return Trajectory(elements, values, residues, increments)


def recover_increments(group: LieGroupOps, elements) -> list:
    """Rebuild the algebra increments ``dx_k`` from consecutive group
    elements through the reconstruction identity:
    ``dx_k = Ad_{g_k^-1}.T ( dtau_inv(xi_k).T xi_k )`` with
    ``xi_k = tau_inv(g_k^-1 g_{k+1})``."""
    ret = group.retraction
    out = []
    for gk, gk1 in zip(elements[:-1], elements[1:]):
        xi = ret.tau_inv(group.compose(group.inverse(gk), gk1))
        v = ret.dtau_inv(xi).T @ xi
        out.append(group.ad_transpose(group.inverse(gk), v))
    return out


def del_residuals(group: LieGroupOps, obj: Objective, strategy: Strategy,
                  epsilon: int, elements) -> np.ndarray:
    """Norms of the discrete dynamical-equation residual at each interior
    step, with increments recovered from the group elements alone:

        dx_k - mu_k (dx_{k-1} - eps * D[eta grad]) + eta_k grad(g_k)

    where ``D[eta grad] = eta_k grad(g_k) - eta_{k-1} grad(g_{k-1})``.
    A correct solver/optimizer pair drives these to round-off.
    """
    dxs = recover_increments(group, elements)
    grads = [obj.grad(g) for g in elements]
    res = []
    for k in range(1, len(dxs)):
        ek = strategy.eta(k) * grads[k]
        ekm = strategy.eta(k - 1) * grads[k - 1]
        r = dxs[k] - strategy.mu(k) * (dxs[k - 1] - epsilon * (ek - ekm)) + ek
        res.append(np.linalg.norm(r))
    return np.asarray(res)
