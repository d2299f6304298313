"""Group interface: axioms, adjoint transposes, Euclidean reduction."""

import numpy as np
import pytest

from liemom.groups import so3_group, translation_group
from liemom.retractions import CAY, EXP, SKW

from conftest import sample_rotations


def rot_z(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


class TestSo3Group:
    def test_identity_composition(self, rng):
        grp = so3_group(EXP)
        R = sample_rotations(rng, 1)[0]
        assert np.array_equal(grp.compose(grp.identity(), R), R)

    def test_inverse(self, rng):
        grp = so3_group(EXP)
        for R in sample_rotations(rng, 50):
            assert np.allclose(grp.compose(R, grp.inverse(R)), np.eye(3), atol=1e-12)

    def test_associativity(self, rng):
        grp = so3_group(CAY)
        for _ in range(50):
            a, b, c = sample_rotations(rng, 3)
            lhs = grp.compose(grp.compose(a, b), c)
            rhs = grp.compose(a, grp.compose(b, c))
            assert np.allclose(lhs, rhs, atol=1e-10)

    def test_ad_transpose(self):
        grp = so3_group(EXP)
        out = grp.ad_transpose(rot_z(np.pi / 2), np.array([0.0, 1.0, 0.0]))
        assert np.allclose(out, [1.0, 0.0, 0.0], atol=1e-15)

    def test_ad_transpose_identity(self, rng):
        grp = so3_group(SKW)
        v = rng.normal(size=3)
        assert np.array_equal(grp.ad_transpose(grp.identity(), v), v)

    def test_algebra_dim(self):
        assert so3_group(EXP).algebra_dim == 3


class TestTranslationGroup:
    def test_compose(self):
        grp = translation_group(2)
        assert np.array_equal(
            grp.compose(np.array([1.0, 2.0]), np.array([3.0, 4.0])), [4.0, 6.0]
        )

    def test_abelian(self, rng):
        grp = translation_group(5)
        a, b = rng.normal(size=5), rng.normal(size=5)
        assert np.array_equal(grp.compose(a, b), grp.compose(b, a))

    def test_ad_transpose_trivial(self, rng):
        grp = translation_group(4)
        a, v = rng.normal(size=4), rng.normal(size=4)
        assert np.array_equal(grp.ad_transpose(a, v), v)

    def test_identity_retraction(self, rng):
        grp = translation_group(3)
        v = rng.normal(size=3)
        assert np.array_equal(grp.retraction.tau(v), v)
        assert np.array_equal(grp.retraction.tau_inv(v), v)
        assert np.array_equal(grp.retraction.dtau(v), np.eye(3))
        assert np.array_equal(grp.retraction.dtau_inv(v), np.eye(3))

    def test_group_axioms(self, rng):
        grp = translation_group(3)
        a, b = rng.normal(size=3), rng.normal(size=3)
        assert np.allclose(grp.compose(a, grp.inverse(a)), grp.identity(), atol=1e-15)
        assert np.array_equal(grp.compose(grp.identity(), b), b)

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            translation_group(0)
