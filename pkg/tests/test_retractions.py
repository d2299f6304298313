"""Retraction kernels: round trips, closed-form tangents against the
finite-difference construction, inverse pairing, transpose identities."""

import math

import numpy as np
import pytest

from liemom.errors import DomainError, SingularityError
from liemom.retractions import (
    CAY,
    EXP,
    LEFT,
    RIGHT,
    SKW,
    adjoint_tangent_identity_check,
    cay,
    cay_inv,
    dcay,
    dcay_inv,
    dexp,
    dlog,
    dskew,
    dskew_exact,
    dunskew,
    dunskew_exact,
    exp_so3,
    log_so3,
    skew_retraction_inv,
    unskew,
)
from liemom.so3 import hat, is_rotation, skew_part, vee

from conftest import sample_vectors


def fd_dtau(tau, x, side=RIGHT, h=1e-6):
    """Central-difference trivialized tangent: columns are
    ``vee(D_j tau @ tau(x)^-1)`` (RIGHT) or ``vee(tau(x)^-1 @ D_j tau)``."""
    g = tau(x)
    cols = []
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        diff = (tau(x + e) - tau(x - e)) / (2 * h)
        pulled = diff @ g.T if side is RIGHT else g.T @ diff
        cols.append(vee(skew_part(pulled)))
    return np.column_stack(cols)


# ---------------------------------------------------------------------------
# exponential
# ---------------------------------------------------------------------------

class TestExp:
    def test_zero(self):
        assert np.allclose(exp_so3(np.zeros(3)), np.eye(3), atol=1e-15)

    def test_quarter_turn(self):
        R = exp_so3(np.array([0.0, 0.0, np.pi / 2]))
        expected = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]], dtype=float)
        assert np.allclose(R, expected, atol=1e-15)

    def test_half_turn(self):
        R = exp_so3(np.array([0.0, 0.0, np.pi]))
        assert np.allclose(R, np.diag([-1.0, -1.0, 1.0]), atol=1e-12)
        assert abs(np.trace(R) + 1.0) < 1e-12
        # cross-check: squared Frobenius distance to I at the max locus
        assert abs(0.5 * np.sum((R - np.eye(3)) ** 2) - 4.0) < 1e-12

    def test_produces_rotations(self, rng):
        for v in sample_vectors(rng, 200):
            assert is_rotation(exp_so3(v))

    def test_log_roundtrip(self, rng):
        v = np.array([0.3, -0.2, 0.9])
        assert np.allclose(log_so3(exp_so3(v)), v, atol=1e-12)
        for v in sample_vectors(rng, 200):
            R = exp_so3(v)
            assert np.allclose(exp_so3(log_so3(R)), R, atol=1e-10)
            assert np.linalg.norm(log_so3(R)) < np.pi

    def test_log_identity(self):
        assert np.array_equal(log_so3(np.eye(3)), np.zeros(3))

    def test_log_small_angle(self):
        v = np.array([1e-7, -2e-7, 5e-8])
        assert np.allclose(log_so3(exp_so3(v)), v, atol=1e-15)

    def test_log_rejects_half_turn(self):
        with pytest.raises(SingularityError):
            log_so3(np.diag([-1.0, -1.0, 1.0]))

    def test_agreement_with_scipy(self, rng):
        scipy_linalg = pytest.importorskip("scipy.linalg")
        for v in sample_vectors(rng, 20):
            assert np.allclose(exp_so3(v), scipy_linalg.expm(hat(v)), atol=1e-12)


class TestDexpDlog:
    def test_zero_is_identity(self):
        assert np.allclose(dexp(np.zeros(3)), np.eye(3), atol=1e-15)
        assert np.allclose(dlog(np.zeros(3)), np.eye(3), atol=1e-15)

    def test_inverse_pair(self, rng):
        for v in sample_vectors(rng, 1000):
            for side in (RIGHT, LEFT):
                assert np.allclose(
                    dexp(v, side) @ dlog(v, side), np.eye(3), atol=1e-12
                )

    def test_transpose_identity(self, rng):
        # dlog(v).T @ v == v
        for v in sample_vectors(rng, 1000):
            assert np.allclose(dlog(v).T @ v, v, atol=1e-12)

    @pytest.mark.parametrize("side", [RIGHT, LEFT])
    def test_matches_finite_differences(self, rng, side):
        for v in sample_vectors(rng, 50, max_norm=2.5):
            closed = dexp(v, side)
            approx = fd_dtau(exp_so3, v, side)
            rel = np.abs(closed - approx).max() / np.abs(closed).max()
            assert rel < 1e-5

    def test_small_angle_series_continuity(self):
        # closed form just above the series threshold vs series just below
        for scale in (0.99e-4, 1.01e-4):
            v = np.array([scale, 0.0, 0.0])
            d = dexp(v)
            assert np.allclose(d, np.eye(3) + 0.5 * hat(v), atol=1e-8)

    def test_dlog_pole_rejected(self):
        with pytest.raises(DomainError):
            dlog(np.array([2 * math.pi - 1e-9, 0.0, 0.0]))


# ---------------------------------------------------------------------------
# Cayley
# ---------------------------------------------------------------------------

class TestCayley:
    def test_zero(self):
        assert np.allclose(cay(np.zeros(3)), np.eye(3), atol=1e-15)

    def test_ones_gives_cyclic_permutation(self):
        expected = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float)
        assert np.allclose(cay(np.ones(3)), expected, atol=1e-15)

    def test_e1(self):
        expected = np.array([[1, 0, 0], [0, 0, -1], [0, 1, 0]], dtype=float)
        assert np.allclose(cay(np.array([1.0, 0, 0])), expected, atol=1e-15)

    def test_matches_resolvent_definition(self, rng):
        # closed form == (I - hat(v))^-1 (I + hat(v))
        for v in sample_vectors(rng, 200, max_norm=3.0):
            H = hat(v)
            direct = np.linalg.solve(np.eye(3) - H, np.eye(3) + H)
            assert np.allclose(cay(v), direct, atol=1e-12)

    def test_produces_rotations(self, rng):
        for v in sample_vectors(rng, 200, max_norm=5.0):
            assert is_rotation(cay(v))

    def test_resolvent_identity(self, rng):
        # (I - hat(v))^-1 == I + lam hat(v) + lam hat(v)^2
        for v in sample_vectors(rng, 1000, max_norm=3.0):
            H = hat(v)
            lam = 1.0 / (1.0 + v @ v)
            closed = np.eye(3) + lam * H + lam * H @ H
            assert np.allclose(closed @ (np.eye(3) - H), np.eye(3), atol=1e-12)

    def test_inverse_examples(self):
        assert np.array_equal(cay_inv(np.eye(3)), np.zeros(3))
        perm = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float)
        assert np.allclose(cay_inv(perm), np.ones(3), atol=1e-15)

    def test_inverse_rejects_half_turn(self):
        with pytest.raises(SingularityError):
            cay_inv(np.diag([-1.0, -1.0, 1.0]))

    def test_roundtrip(self, rng):
        for v in sample_vectors(rng, 200, max_norm=4.0):
            assert np.allclose(cay_inv(cay(v)), v, atol=1e-10)
            R = cay(v)
            assert np.allclose(cay(cay_inv(R)), R, atol=1e-10)


class TestDcay:
    def test_zero_values(self):
        assert np.allclose(dcay(np.zeros(3)), 2 * np.eye(3), atol=1e-15)
        assert np.allclose(dcay_inv(np.zeros(3)), 0.5 * np.eye(3), atol=1e-15)

    def test_inverse_pair(self, rng):
        for v in sample_vectors(rng, 1000, max_norm=3.0):
            for side in (RIGHT, LEFT):
                assert np.allclose(
                    dcay(v, side) @ dcay_inv(v, side), np.eye(3), atol=1e-12
                )

    def test_transpose_identity(self, rng):
        # dcay_inv(v).T @ v == (1 + |v|^2)/2 * v
        v = np.ones(3)
        assert np.allclose(dcay_inv(v).T @ v, 2.0 * v, atol=1e-15)
        for v in sample_vectors(rng, 1000, max_norm=3.0):
            expected = 0.5 * (1.0 + v @ v) * v
            assert np.allclose(dcay_inv(v).T @ v, expected, atol=1e-12)

    @pytest.mark.parametrize("side", [RIGHT, LEFT])
    def test_matches_finite_differences(self, rng, side):
        for v in sample_vectors(rng, 50, max_norm=2.0):
            closed = dcay(v, side)
            approx = fd_dtau(cay, v, side)
            rel = np.abs(closed - approx).max() / np.abs(closed).max()
            assert rel < 1e-5


# ---------------------------------------------------------------------------
# inverse skew projection
# ---------------------------------------------------------------------------

class TestUnskew:
    def test_zero(self):
        assert np.allclose(unskew(np.zeros(3)), np.eye(3), atol=1e-15)

    def test_gamma_at_sqrt3_over_2(self):
        # 1/gamma = 1 + sqrt(1 - 3/4) = 3/2 at |v| = sqrt(3)/2
        v = np.array([math.sqrt(3) / 2, 0.0, 0.0])
        R = unskew(v)
        H = hat(v)
        gamma = 2.0 / 3.0
        assert np.allclose(R, np.eye(3) + H + gamma * H @ H, atol=1e-14)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            unskew(np.array([1.2, 0.0, 0.0]))
        with pytest.raises(DomainError):
            unskew(np.array([1.0, 0.0, 0.0]))

    def test_skew_part_inverts(self, rng):
        for v in sample_vectors(rng, 200, max_norm=0.999):
            R = unskew(v)
            assert is_rotation(R)
            assert np.allclose(skew_part(R), hat(v), atol=1e-12)
            assert np.allclose(skew_retraction_inv(R), v, atol=1e-12)

    def test_matches_matrix_sqrt_definition(self, rng):
        # unskew(v) == hat(v) + sqrtm(I + hat(v)^2)
        scipy_linalg = pytest.importorskip("scipy.linalg")
        for v in sample_vectors(rng, 20, max_norm=0.95):
            H = hat(v)
            root = scipy_linalg.sqrtm(np.eye(3) + H @ H).real
            assert np.allclose(unskew(v), H + root, atol=1e-10)

    def test_reflection_through_origin(self, rng):
        for v in sample_vectors(rng, 100, max_norm=0.999):
            assert np.allclose(unskew(v) @ unskew(-v), np.eye(3), atol=1e-10)


class TestSkewTangentPairs:
    """The unskew retraction carries two tangent pairs: the solver pair
    (dunskew/dskew), which the quartic step and the fixed-point solver are
    built on, and the derivative pair (dunskew_exact/dskew_exact), which is
    the honest differential of the map.  They are distinct."""

    def test_solver_pair_values_at_zero(self):
        assert np.allclose(dunskew(np.zeros(3)), 0.5 * np.eye(3), atol=1e-15)
        assert np.allclose(dskew(np.zeros(3)), 2.0 * np.eye(3), atol=1e-15)

    def test_exact_pair_values_at_zero(self):
        assert np.allclose(dunskew_exact(np.zeros(3)), np.eye(3), atol=1e-15)
        assert np.allclose(dskew_exact(np.zeros(3)), np.eye(3), atol=1e-15)

    @pytest.mark.parametrize("pair", [(dunskew, dskew), (dunskew_exact, dskew_exact)])
    def test_pairs_mutually_inverse(self, rng, pair):
        fwd, inv = pair
        for v in sample_vectors(rng, 1000, max_norm=0.999):
            for side in (RIGHT, LEFT):
                assert np.allclose(fwd(v, side) @ inv(v, side), np.eye(3), atol=1e-12)

    def test_solver_pair_transpose_identity(self, rng):
        # dskew(v).T @ v == (1 + sqrt(1 - |v|^2)) v
        for v in sample_vectors(rng, 1000, max_norm=0.999):
            expected = (1.0 + math.sqrt(1.0 - v @ v)) * v
            assert np.allclose(dskew(v).T @ v, expected, atol=1e-12)

    def test_exact_pair_transpose_action(self, rng):
        for v in sample_vectors(rng, 200, max_norm=0.999):
            expected = math.sqrt(1.0 - v @ v) * v
            assert np.allclose(dskew_exact(v).T @ v, expected, atol=1e-12)

    @pytest.mark.parametrize("side", [RIGHT, LEFT])
    def test_exact_pair_matches_finite_differences(self, rng, side):
        for v in sample_vectors(rng, 50, max_norm=0.9):
            closed = dunskew_exact(v, side)
            approx = fd_dtau(unskew, v, side)
            rel = np.abs(closed - approx).max() / np.abs(closed).max()
            assert rel < 1e-5

    def test_solver_pair_is_not_the_derivative(self, rng):
        # documents the split: the solver pair deliberately differs from
        # the finite-difference tangent (already at v = 0, by a factor 2)
        v = np.array([0.3, -0.2, 0.4])
        approx = fd_dtau(unskew, v, RIGHT)
        assert np.abs(dunskew(v) - approx).max() > 0.1


# ---------------------------------------------------------------------------
# shared structure
# ---------------------------------------------------------------------------

class TestAdjointTangentIdentity:
    def test_exp(self, rng):
        for v in sample_vectors(rng, 100, max_norm=2.5):
            assert adjoint_tangent_identity_check(EXP, v)

    def test_cay(self, rng):
        for v in sample_vectors(rng, 100, max_norm=2.5):
            assert adjoint_tangent_identity_check(CAY, v)

    def test_skw_exact_pair_satisfies_it(self, rng):
        # the adjoint relation holds for honest derivatives; check the
        # exact pair directly
        for v in sample_vectors(rng, 100, max_norm=0.9):
            R = unskew(v)
            assert np.abs(dunskew_exact(v) - R @ dunskew_exact(-v)).max() < 1e-10

    def test_skw_solver_pair_fails_it(self, rng):
        # the solver pair is not a derivative, and the adjoint relation
        # does not hold for it; pinned so the split stays visible
        v = np.array([0.3, -0.2, 0.4])
        assert not adjoint_tangent_identity_check(SKW, v)


class TestRetractionObjects:
    @pytest.mark.parametrize("ret,max_norm", [(EXP, 2.5), (CAY, 3.0), (SKW, 0.99)])
    def test_local_inverse_property(self, rng, ret, max_norm):
        for v in sample_vectors(rng, 100, max_norm=max_norm):
            assert np.allclose(ret.tau(v) @ ret.tau(-v), np.eye(3), atol=1e-10)
            assert np.allclose(ret.tau_inv(ret.tau(v)), v, atol=1e-10)

    @pytest.mark.parametrize("ret", [EXP, CAY, SKW])
    def test_tangent_inverse_wiring(self, rng, ret):
        for v in sample_vectors(rng, 50, max_norm=0.9):
            assert np.allclose(
                ret.dtau(v) @ ret.dtau_inv(v), np.eye(3), atol=1e-12
            )
