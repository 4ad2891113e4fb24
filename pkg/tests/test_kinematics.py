"""Quaternion, 3-2-1 Euler and unicycle kinematics."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.errors import KinematicSingularityError, StateCorruptionError
from src.plants.kinematics import (
    error_quaternion,
    euler_kinematics,
    normalize_quaternion,
    quaternion_kinematics,
    quaternion_to_dcm,
    unicycle_kinematics,
)
from src.simulation.integrator import integrate


def _random_unit(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    return q / np.linalg.norm(q)


def _skew(w: np.ndarray) -> np.ndarray:
    return np.array([[0.0, -w[2], w[1]], [w[2], 0.0, -w[0]], [-w[1], w[0], 0.0]])


class TestQuaternionKinematics:
    def test_zero_rate(self):
        np.testing.assert_array_equal(quaternion_kinematics([0.5, 0.5, 0.5, 0.5], np.zeros(3)), np.zeros(4))

    def test_identity_attitude(self):
        q_dot = quaternion_kinematics([0.0, 0.0, 0.0, 1.0], [0.7, 0.0, 0.0])
        np.testing.assert_allclose(q_dot, [0.35, 0.0, 0.0, 0.0])

    def test_flow_is_tangent_to_unit_sphere(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            q = _random_unit(rng)
            q_dot = quaternion_kinematics(q, rng.normal(size=3))
            assert abs(q @ q_dot) <= 1e-12

    def test_rejects_non_unit(self):
        with pytest.raises(StateCorruptionError):
            quaternion_kinematics([0.57, 0.57, 0.57, 0.159], np.zeros(3))

    def test_dcm_rate_matches_body_rate(self):
        rng = np.random.default_rng(1)
        h = 1e-6
        for _ in range(20):
            q = _random_unit(rng)
            w = rng.normal(size=3)
            q_dot = quaternion_kinematics(q, w)
            numeric = (quaternion_to_dcm(q + h * q_dot) - quaternion_to_dcm(q - h * q_dot)) / (2 * h)
            np.testing.assert_allclose(numeric, -_skew(w) @ quaternion_to_dcm(q), atol=1e-7)

    def test_dcm_is_orthonormal(self):
        rng = np.random.default_rng(2)
        c = quaternion_to_dcm(_random_unit(rng))
        np.testing.assert_allclose(c @ c.T, np.eye(3), atol=1e-12)

    def test_normalize(self):
        np.testing.assert_allclose(np.linalg.norm(normalize_quaternion([0.57, 0.57, 0.57, 0.159])), 1.0)
        with pytest.raises(StateCorruptionError):
            normalize_quaternion(np.zeros(4))


class TestErrorQuaternion:
    def test_identity_desired_returns_input(self):
        q = normalize_quaternion([0.57, 0.57, 0.57, 0.159])
        np.testing.assert_allclose(error_quaternion(q, [0.0, 0.0, 0.0, 1.0]), q)

    def test_zero_error_at_desired(self):
        rng = np.random.default_rng(3)
        q = _random_unit(rng)
        qe = error_quaternion(q, q)
        np.testing.assert_allclose(qe[:3], 0.0, atol=1e-12)
        assert abs(qe[3]) == pytest.approx(1.0)

    def test_unit_norm_preserved(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            qe = error_quaternion(_random_unit(rng), _random_unit(rng))
            assert np.linalg.norm(qe) == pytest.approx(1.0, abs=1e-12)


class TestEulerKinematics:
    def test_level_attitude(self):
        np.testing.assert_allclose(euler_kinematics([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]), [0.0, 0.0, 1.0])

    def test_zero_rate(self):
        np.testing.assert_array_equal(euler_kinematics([0.3, 0.2, 0.1], np.zeros(3)), np.zeros(3))

    def test_matches_rotation_sequence_construction(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            psi, theta, phi = rng.uniform(-math.pi, math.pi), rng.uniform(-1.0, 1.0), rng.uniform(-math.pi, math.pi)
            omega = rng.normal(size=3)
            psi_dot, theta_dot, phi_dot = euler_kinematics([psi, theta, phi], omega)

            c, s = math.cos(phi), math.sin(phi)
            r1 = np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])
            c, s = math.cos(theta), math.sin(theta)
            r2 = np.array([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])
            body = np.array([phi_dot, 0.0, 0.0]) + r1 @ np.array([0.0, theta_dot, 0.0]) \
                + r1 @ r2 @ np.array([0.0, 0.0, psi_dot])
            np.testing.assert_allclose(body, omega, atol=1e-10)

    @pytest.mark.parametrize("theta", [math.pi / 2 - 0.005, -(math.pi / 2 - 0.01)])
    def test_singularity_guard(self, theta):
        with pytest.raises(KinematicSingularityError):
            euler_kinematics([0.0, theta, 0.0], [0.0, 1.0, 0.0])

    def test_just_outside_margin_is_allowed(self):
        euler_kinematics([0.0, math.pi / 2 - 0.011, 0.0], [0.0, 1.0, 0.0])


class TestUnicycleKinematics:
    def test_standing_still_turns_in_place(self):
        np.testing.assert_allclose(unicycle_kinematics([1.0, 2.0, 0.4], v=0.0, omega=0.3), [0.0, 0.0, 0.3])

    def test_axis_aligned_motion(self):
        np.testing.assert_allclose(unicycle_kinematics([0.0, 0.0, 0.0], v=1.0, omega=0.0), [1.0, 0.0, 0.0])

    def test_closes_unit_circle(self):
        _, states = integrate(
            lambda t, x: unicycle_kinematics(x, v=1.0, omega=1.0),
            np.zeros(3),
            2 * math.pi,
            2 * math.pi / 6284,
        )
        assert np.hypot(states[-1, 0], states[-1, 1]) <= 1e-6
        radius = np.hypot(states[:, 0], states[:, 1] - 1.0)
        np.testing.assert_allclose(radius, 1.0, atol=1e-9)
