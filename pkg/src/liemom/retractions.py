"""Retraction maps on so(3): matrix exponential, Cayley transform, and the
inverse of the skew-symmetric projection, with their trivialized tangents.

Every retraction ``tau`` maps an axis vector ``v`` (identified with the
skew matrix ``hat(v)``) to a rotation, with ``tau(0) = I`` and
``tau(v) @ tau(-v) = I``.  Tangents are materialized as explicit 3x3
matrices; in dimension 3 that is cheap and makes transposes trivial.

Sign convention: ``TrivializationSide.RIGHT`` selects the tangent pulled to
the identity by right translation (the package default everywhere), LEFT by
left translation.  The two differ only in the sign of the odd (``hat``)
term.

Small angles: the trigonometric coefficient quotients lose precision
catastrophically near 0, so below ``SMALL_ANGLE`` they are evaluated by
4-term Taylor series.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DomainError, SingularityError
from .so3 import hat, skew_part, vee

__all__ = [
    "TrivializationSide",
    "Retraction",
    "ExpRetraction",
    "CayleyRetraction",
    "SkewRetraction",
    "IdentityRetraction",
    "EXP",
    "CAY",
    "SKW",
    "exp_so3",
    "log_so3",
    "dexp",
    "dlog",
    "cay",
    "cay_inv",
    "dcay",
    "dcay_inv",
    "unskew",
    "skew_retraction_inv",
    "dunskew",
    "dskew",
    "dunskew_exact",
    "dskew_exact",
    "adjoint_tangent_identity_check",
]

SMALL_ANGLE = 1e-4
# tau_inv of exp and cay blows up as tr(R) -> -1; reject inputs closer than this
TRACE_FLOOR = -1.0 + 1e-9
# cot(w/2) pole at w = 2*pi
DLOG_POLE_MARGIN = 1e-6


class TrivializationSide(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def sign(self) -> float:
        return 1.0 if self is TrivializationSide.RIGHT else -1.0


RIGHT = TrivializationSide.RIGHT
LEFT = TrivializationSide.LEFT


# ---------------------------------------------------------------------------
# scalar coefficients with small-angle series
# ---------------------------------------------------------------------------

def _sinc(w: float) -> float:
    """sin(w) / w."""
    if w < SMALL_ANGLE:
        w2 = w * w
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0 - w2 * w2 * w2 / 5040.0
    return math.sin(w) / w


def _cosc(w: float) -> float:
    """(1 - cos(w)) / w^2."""
    if w < SMALL_ANGLE:
        w2 = w * w
        return 0.5 - w2 / 24.0 + w2 * w2 / 720.0 - w2 * w2 * w2 / 40320.0
    return (1.0 - math.cos(w)) / (w * w)


def _sinc3(w: float) -> float:
    """(w - sin(w)) / w^3."""
    if w < SMALL_ANGLE:
        w2 = w * w
        return 1.0 / 6.0 - w2 / 120.0 + w2 * w2 / 5040.0 - w2 * w2 * w2 / 362880.0
    return (w - math.sin(w)) / (w * w * w)


def _dlog_c2(w: float) -> float:
    """(1 - (w/2) * cot(w/2)) / w^2."""
    if w < SMALL_ANGLE:
        w2 = w * w
        return (
            1.0 / 12.0
            + w2 / 720.0
            + w2 * w2 / 30240.0
            + w2 * w2 * w2 / 1209600.0
        )
    half = 0.5 * w
    return (1.0 - half / math.tan(half)) / (w * w)


# ---------------------------------------------------------------------------
# exponential map
# ---------------------------------------------------------------------------

def exp_so3(v: np.ndarray) -> np.ndarray:
    """Rodrigues formula: ``I + sinc(w) hat(v) + cosc(w) hat(v)^2``."""
    v = np.asarray(v, dtype=float)
    w = float(np.linalg.norm(v))
    H = hat(v)
    return np.eye(3) + _sinc(w) * H + _cosc(w) * (H @ H)


def log_so3(R: np.ndarray) -> np.ndarray:
    """Axis-angle logarithm, valid away from the angle-pi locus.

    Raises :class:`SingularityError` when ``tr(R) <= -1 + 1e-9``, where the
    skew part vanishes and the axis is not recoverable from it.
    """
    tr = float(np.trace(R))
    if tr <= TRACE_FLOOR:
        raise SingularityError(
            f"log undefined near trace -1 (trace = {tr:.12f}); angle-pi rotation"
        )
    c = 0.5 * (tr - 1.0)
    theta = math.acos(min(1.0, max(-1.0, c)))
    sk = vee(skew_part(R))
    if theta < SMALL_ANGLE:
        # acos loses accuracy at 1; first order the log is the skew part
        return sk
    return (theta / math.sin(theta)) * sk


def dexp(v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Trivialized tangent of the exponential,
    ``I +/- cosc(w) hat(v) + sinc3(w) hat(v)^2`` (+ for RIGHT)."""
    v = np.asarray(v, dtype=float)
    w = float(np.linalg.norm(v))
    H = hat(v)
    return np.eye(3) + side.sign * _cosc(w) * H + _sinc3(w) * (H @ H)


def dlog(v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Inverse of :func:`dexp`: ``I -/+ hat(v)/2 + c2(w) hat(v)^2``."""
    v = np.asarray(v, dtype=float)
    w = float(np.linalg.norm(v))
    if w >= 2.0 * math.pi - DLOG_POLE_MARGIN:
        raise DomainError(f"dlog pole: |v| = {w:.9f} too close to 2*pi")
    H = hat(v)
    return np.eye(3) - side.sign * 0.5 * H + _dlog_c2(w) * (H @ H)


# ---------------------------------------------------------------------------
# Cayley transform
# ---------------------------------------------------------------------------

def cay(v: np.ndarray) -> np.ndarray:
    """Cayley transform ``(I - hat(v))^-1 (I + hat(v))`` in closed form:
    ``I + 2 lam (hat(v) + hat(v)^2)`` with ``lam = 1 / (1 + |v|^2)``."""
    v = np.asarray(v, dtype=float)
    lam = 1.0 / (1.0 + float(v @ v))
    H = hat(v)
    return np.eye(3) + 2.0 * lam * (H + H @ H)


def cay_inv(R: np.ndarray) -> np.ndarray:
    """Inverse Cayley transform ``2 / (1 + tr(R)) * vee(skew_part(R))``."""
    tr = float(np.trace(R))
    if tr <= TRACE_FLOOR:
        raise SingularityError(
            f"cay_inv undefined near trace -1 (trace = {tr:.12f})"
        )
    return (2.0 / (1.0 + tr)) * vee(skew_part(R))


def dcay(v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Trivialized tangent of the Cayley transform: ``2 lam (I +/- hat(v))``."""
    v = np.asarray(v, dtype=float)
    lam = 1.0 / (1.0 + float(v @ v))
    return 2.0 * lam * (np.eye(3) + side.sign * hat(v))


def dcay_inv(v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Inverse of :func:`dcay`: ``(I -/+ hat(v) + outer(v, v)) / 2``."""
    v = np.asarray(v, dtype=float)
    return 0.5 * (np.eye(3) - side.sign * hat(v) + np.outer(v, v))


# ---------------------------------------------------------------------------
# inverse skew projection
# ---------------------------------------------------------------------------

def _gamma(v: np.ndarray) -> float:
    s = float(v @ v)
    if s >= 1.0:
        raise DomainError(f"|v| = {math.sqrt(s):.9f} outside the unit ball")
    return 1.0 / (1.0 + math.sqrt(1.0 - s))


def unskew(v: np.ndarray) -> np.ndarray:
    """Rotation whose skew part is ``hat(v)``: ``I + hat(v) + g hat(v)^2``
    with ``1/g = 1 + sqrt(1 - |v|^2)``.  Defined for ``|v| < 1``."""
    v = np.asarray(v, dtype=float)
    g = _gamma(v)
    H = hat(v)
    return np.eye(3) + H + g * (H @ H)


def skew_retraction_inv(R: np.ndarray) -> np.ndarray:
    """Inverse of :func:`unskew`: the skew projection restricted to SO(3),
    returned as an axis vector."""
    x = vee(skew_part(R))
    if float(x @ x) >= 1.0:
        raise DomainError("rotation outside the invertibility patch of unskew")
    return x


def dunskew(v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Tangent companion of :func:`unskew` used by the quartic step solver.

    ``g I +/- g/(3+2g) hat(v) + g^2 (1+g)/(3+2g) hat(v)^2`` with the same
    ``g`` as :func:`unskew`.  Exact matrix inverse of :func:`dskew`.

    This pair is the algebraic companion of the closed-form reconstruction
    step (its transpose identity ``dskew(v).T @ v = (1/g) v`` is what makes
    the step quartic solvable in closed form); it is *not* the derivative
    of ``unskew`` pulled to the identity, which :func:`dunskew_exact`
    provides and which agrees with finite differences.
    """
    v = np.asarray(v, dtype=float)
    g = _gamma(v)
    H = hat(v)
    den = 3.0 + 2.0 * g
    return g * np.eye(3) + side.sign * (g / den) * H + (g * g * (1.0 + g) / den) * (H @ H)


def dskew(v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Inverse of :func:`dunskew`:
    ``(1/g) I -/+ hat(v)/2 - g/2 hat(v)^2``.

    Satisfies ``dskew(v).T @ v == (1 + sqrt(1 - |v|^2)) v``, the relation
    the quartic reconstruction solver is built on.  See :func:`dunskew` for
    how this pair relates to the derivative pair.
    """
    v = np.asarray(v, dtype=float)
    g = _gamma(v)
    H = hat(v)
    return (1.0 / g) * np.eye(3) - side.sign * 0.5 * H - 0.5 * g * (H @ H)


def dunskew_exact(v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Derivative of :func:`unskew` pulled to the identity (matches central
    finite differences of the map): ``g/(1-g) I +/- g hat(v) +
    g^2/(1-g) hat(v)^2``."""
    v = np.asarray(v, dtype=float)
    g = _gamma(v)
    H = hat(v)
    a = g / (1.0 - g)
    return a * np.eye(3) + side.sign * g * H + a * g * (H @ H)


def dskew_exact(v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
    """Inverse of :func:`dunskew_exact`:
    ``sqrt(1 - |v|^2) I -/+ hat(v)/2 - g/2 hat(v)^2``."""
    v = np.asarray(v, dtype=float)
    g = _gamma(v)
    H = hat(v)
    return (
        math.sqrt(1.0 - float(v @ v)) * np.eye(3)
        - side.sign * 0.5 * H
        - 0.5 * g * (H @ H)
    )


# ---------------------------------------------------------------------------
# retraction objects
# ---------------------------------------------------------------------------

class Retraction:
    """Bundle of a retraction with its inverse and trivialized tangents.

    ``domain_radius`` bounds ``|v|`` accepted by ``tau`` (``inf`` when the
    whole algebra is admissible).
    """

    name: str = ""
    domain_radius: float = math.inf

    def tau(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def tau_inv(self, g: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def dtau(self, v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
        raise NotImplementedError

    def dtau_inv(self, v: np.ndarray, side: TrivializationSide = RIGHT) -> np.ndarray:
        raise NotImplementedError

    def __repr__(self):  # pragma: no cover - debugging nicety
        return f"<retraction {self.name}>"


class ExpRetraction(Retraction):
    name = "exp"

    def tau(self, v):
        return exp_so3(v)

    def tau_inv(self, g):
        return log_so3(g)

    def dtau(self, v, side=RIGHT):
        return dexp(v, side)

    def dtau_inv(self, v, side=RIGHT):
        return dlog(v, side)


class CayleyRetraction(Retraction):
    name = "cay"

    def tau(self, v):
        return cay(v)

    def tau_inv(self, g):
        return cay_inv(g)

    def dtau(self, v, side=RIGHT):
        return dcay(v, side)

    def dtau_inv(self, v, side=RIGHT):
        return dcay_inv(v, side)


class SkewRetraction(Retraction):
    """Inverse-skew-projection retraction.

    ``dtau``/``dtau_inv`` expose the solver-companion pair (see
    :func:`dunskew`); the derivative pair lives in
    :func:`dunskew_exact` / :func:`dskew_exact`.
    """

    name = "skw"
    domain_radius = 1.0

    def tau(self, v):
        return unskew(v)

    def tau_inv(self, g):
        return skew_retraction_inv(g)

    def dtau(self, v, side=RIGHT):
        return dunskew(v, side)

    def dtau_inv(self, v, side=RIGHT):
        return dskew(v, side)


class IdentityRetraction(Retraction):
    """Identity chart for abelian vector groups: ``tau(v) = v``."""

    name = "id"

    def __init__(self, dim: int):
        self.dim = dim

    def tau(self, v):
        return np.asarray(v, dtype=float)

    def tau_inv(self, g):
        return np.asarray(g, dtype=float)

    def dtau(self, v, side=RIGHT):
        return np.eye(self.dim)

    def dtau_inv(self, v, side=RIGHT):
        return np.eye(self.dim)


EXP = ExpRetraction()
CAY = CayleyRetraction()
SKW = SkewRetraction()

BY_NAME = {"exp": EXP, "cay": CAY, "skw": SKW}


def adjoint_tangent_identity_check(
    ret: Retraction, v: np.ndarray, tol: float = 1e-10
) -> bool:
    """Check the adjoint relation ``dtau(v) == Ad_{tau(v)} @ dtau(-v)`` and
    its inverse-tangent form ``dtau_inv(v) == dtau_inv(-v) @ Ad_{tau(-v)}``
    (right side).  Exported for diagnostics; holds for any tangent pair that
    is the honest derivative of its retraction."""
    v = np.asarray(v, dtype=float)
    R = ret.tau(v)
    ok_fwd = np.abs(ret.dtau(v) - R @ ret.dtau(-v)).max() <= tol
    ok_inv = np.abs(ret.dtau_inv(v) - ret.dtau_inv(-v) @ ret.tau(-v)).max() <= tol
    return bool(ok_fwd and ok_inv)
