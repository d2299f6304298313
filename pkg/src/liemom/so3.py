"""Fixed-size algebra for R^3, skew-symmetric 3x3 matrices, and rotations.

Vectors are ``numpy`` arrays of shape ``(3,)`` and matrices arrays of shape
``(3, 3)``.  Rotation matrices are plain arrays as well; validation happens
at API boundaries via :func:`check_rotation`, while inner loops deliberately
skip it (retraction-based updates keep iterates orthogonal to round-off).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "hat",
    "vee",
    "skew_part",
    "adjoint_apply",
    "adjoint_transpose_apply",
    "frobenius_inner",
    "is_rotation",
    "check_rotation",
    "rotation_from_matrix",
    "orthonormalize",
    "random_rotation",
    "random_vector",
    "IDENTITY",
]

# Orthogonality / determinant / skewness tolerance at validation boundaries.
ROTATION_TOL = 1e-10
SKEW_TOL = 1e-10

IDENTITY = np.eye(3)


def hat(v: np.ndarray) -> np.ndarray:
    """Skew-symmetric matrix of ``v``, so that ``hat(v) @ w == cross(v, w)``."""
    return np.array(
        [
            [0.0, -v[2], v[1]],
            [v[2], 0.0, -v[0]],
            [-v[1], v[0], 0.0],
        ]
    )


def vee(m: np.ndarray) -> np.ndarray:
    """Inverse of :func:`hat`.  Rejects matrices with a symmetric part
    exceeding ``SKEW_TOL``."""
    sym = np.abs(m + m.T).max()
    if sym > SKEW_TOL:
        raise ValueError(f"matrix is not skew-symmetric (|m + m^T| = {sym:.3e})")
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def skew_part(m: np.ndarray) -> np.ndarray:
    """Skew-symmetric part ``(m - m^T) / 2``."""
    return 0.5 * (m - m.T)


def adjoint_apply(R: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Adjoint action of a rotation on an axis vector: ``R @ v``."""
    return R @ v


def adjoint_transpose_apply(R: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Transpose of the adjoint action: ``R.T @ v``."""
    return R.T @ v


def frobenius_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Entrywise (Frobenius) inner product ``sum(a * b)``."""
    return float(np.sum(a * b))


def is_rotation(m: np.ndarray, tol: float = ROTATION_TOL) -> bool:
    """True if ``m`` is orthogonal with determinant +1 to tolerance."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        return False
    return (
        np.abs(m.T @ m - IDENTITY).max() <= tol
        and abs(np.linalg.det(m) - 1.0) <= tol
    )


def check_rotation(m: np.ndarray, tol: float = ROTATION_TOL) -> np.ndarray:
    """Validate ``m`` as a rotation matrix and return it as a float array."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got shape {m.shape}")
    err = np.abs(m.T @ m - IDENTITY).max()
    if err > tol:
        raise ValueError(f"matrix is not orthogonal (|R^T R - I| = {err:.3e})")
    det = np.linalg.det(m)
    if abs(det - 1.0) > tol:
        raise ValueError(f"matrix has determinant {det:.12f}, expected +1")
    return m


# Alias for call sites that read like a constructor.
rotation_from_matrix = check_rotation


def orthonormalize(m: np.ndarray) -> np.ndarray:
    """Gram-Schmidt repair of a near-rotation.

    Not applied during normal optimization runs; exposed for very long runs
    (> 10^4 steps) where round-off drift could accumulate.
    """
    q = np.empty((3, 3))
    r0 = m[:, 0] / np.linalg.norm(m[:, 0])
    r1 = m[:, 1] - (m[:, 1] @ r0) * r0
    r1 /= np.linalg.norm(r1)
    r2 = np.cross(r0, r1)
    q[:, 0], q[:, 1], q[:, 2] = r0, r1, r2
    return q


def random_vector(rng: np.random.Generator, max_norm: float = np.pi * 0.95) -> np.ndarray:
    """Vector drawn uniformly from the ball of radius ``max_norm``."""
    d = rng.normal(size=3)
    d /= np.linalg.norm(d)
    # cube-root keeps the radial density uniform over the ball volume
    return d * max_norm * rng.uniform() ** (1.0 / 3.0)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Random rotation from exponentiating a vector inside the radius
    0.95*pi ball, which stays inside the injectivity domain of the log."""
    from .retractions import exp_so3

    return exp_so3(random_vector(rng))
