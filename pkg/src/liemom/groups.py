"""Minimal Lie-group abstraction used by the optimizers.

Group elements are opaque to the optimizer: it only composes them, inverts
them, applies the transposed adjoint to algebra vectors, and calls the
bundled retraction.  Two instances are provided: the rotation group with a
chosen retraction, and the abelian translation group of R^n (for which the
momentum schemes collapse to their classical Euclidean forms).
"""

from __future__ import annotations

import numpy as np

from .retractions import CAY, EXP, SKW, IdentityRetraction, Retraction
from .so3 import orthonormalize

__all__ = ["LieGroupOps", "SO3Group", "TranslationGroup", "so3_group", "translation_group"]


class LieGroupOps:
    """Interface consumed by the optimizer and the reconstruction solvers."""

    retraction: Retraction
    algebra_dim: int

    def identity(self):
        raise NotImplementedError

    def compose(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def ad_transpose(self, a, v):
        """Transpose of the adjoint representation of ``a`` applied to ``v``."""
        raise NotImplementedError

    def repair(self, a):
        """Optional drift repair for very long runs; identity by default."""
        return a


class SO3Group(LieGroupOps):
    algebra_dim = 3

    def __init__(self, retraction: Retraction):
        self.retraction = retraction

    def identity(self):
        return np.eye(3)

    def compose(self, a, b):
        return a @ b

    def inverse(self, a):
        return a.T

    def ad_transpose(self, a, v):
        return a.T @ v

    def repair(self, a):
        return orthonormalize(a)


class TranslationGroup(LieGroupOps):
    """R^n with vector addition; the retraction is the identity chart, so
    the reconstruction step is the tautology ``x_next = x + dx``."""

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        self.dim = dim
        self.algebra_dim = dim
        self.retraction = IdentityRetraction(dim)

    def identity(self):
        return np.zeros(self.dim)

    def compose(self, a, b):
        return a + b

    def inverse(self, a):
        return -a

    def ad_transpose(self, a, v):
        return v


def so3_group(retraction: Retraction = EXP) -> SO3Group:
    return SO3Group(retraction)


def translation_group(n: int) -> TranslationGroup:
    return TranslationGroup(n)
