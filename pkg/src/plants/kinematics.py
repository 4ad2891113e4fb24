"""Kinematic propagation: scalar-last quaternions, 3-2-1 Euler angles, planar unicycle pose."""

from __future__ import annotations

import math

import numpy as np

from src.config import NUMERICS
from src.errors import KinematicSingularityError, StateCorruptionError


def _check_unit(q: np.ndarray, name: str, tol: float) -> None:
    norm = float(np.linalg.norm(q))
    if abs(norm - 1.0) > tol:
        raise StateCorruptionError(f"{name} is not a unit quaternion (norm {norm:.12f}, tolerance {tol:g})")


def quaternion_kinematics(
    q: np.ndarray,
    omega: np.ndarray,
    tol: float = NUMERICS.quaternion_tolerance,
) -> np.ndarray:
    """Q_dot = 1/2 E(Q) Omega for Q = [Q1, Q2, Q3, Q4] (scalar last)."""
    q = np.asarray(q, dtype=float)
    _check_unit(q, "attitude quaternion", tol)
    q1, q2, q3, q4 = q
    e = np.array([
        [q4, -q3, q2],
        [q3, q4, -q1],
        [-q2, q1, q4],
        [-q1, -q2, -q3],
    ])
    return 0.5 * e @ np.asarray(omega, dtype=float)


def error_quaternion_matrix(q_desired: np.ndarray) -> np.ndarray:
    q1d, q2d, q3d, q4d = np.asarray(q_desired, dtype=float)
    return np.array([
        [q4d, q3d, -q2d, -q1d],
        [-q3d, q4d, q1d, -q2d],
        [q2d, -q1d, q4d, -q3d],
        [q1d, q2d, q3d, q4d],
    ])


def error_quaternion(
    q: np.ndarray,
    q_desired: np.ndarray,
    tol: float = NUMERICS.quaternion_tolerance,
) -> np.ndarray:
    """Attitude error (Qe1, Qe2, Qe3, Qe4) between the current and desired attitude."""
    q = np.asarray(q, dtype=float)
    q_desired = np.asarray(q_desired, dtype=float)
    _check_unit(q, "attitude quaternion", tol)
    _check_unit(q_desired, "desired quaternion", tol)
    return error_quaternion_matrix(q_desired) @ q


def quaternion_to_dcm(q: np.ndarray) -> np.ndarray:
    """Inertial-to-body direction cosine matrix consistent with quaternion_kinematics."""
    q1, q2, q3, q4 = np.asarray(q, dtype=float)
    return np.array([
        [1 - 2 * (q2 * q2 + q3 * q3), 2 * (q1 * q2 + q3 * q4), 2 * (q1 * q3 - q2 * q4)],
        [2 * (q2 * q1 - q3 * q4), 1 - 2 * (q1 * q1 + q3 * q3), 2 * (q2 * q3 + q1 * q4)],
        [2 * (q3 * q1 + q2 * q4), 2 * (q3 * q2 - q1 * q4), 1 - 2 * (q1 * q1 + q2 * q2)],
    ])


def normalize_quaternion(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    norm = float(np.linalg.norm(q))
    if norm == 0.0 or not math.isfinite(norm):
        raise StateCorruptionError(f"cannot normalize quaternion with norm {norm}")
    return q / norm


def euler_kinematics(
    eta: np.ndarray,
    omega: np.ndarray,
    margin: float = NUMERICS.euler_singularity_margin,
) -> np.ndarray:
    """Rates (psi_dot, theta_dot, phi_dot) of the 3-2-1 sequence eta = (psi, theta, phi)."""
    _, theta, phi = np.asarray(eta, dtype=float)
    if abs(theta) >= math.pi / 2 - margin:
        raise KinematicSingularityError(theta)
    s_phi, c_phi = math.sin(phi), math.cos(phi)
    s_th, c_th = math.sin(theta), math.cos(theta)
    b = np.array([
        [0.0, s_phi, c_phi],
        [0.0, c_phi * c_th, -s_phi * c_th],
        [c_th, s_phi * s_th, c_phi * s_th],
    ])
    return (b @ np.asarray(omega, dtype=float)) / c_th


def unicycle_kinematics(pose: np.ndarray, v: float, omega: float) -> np.ndarray:
    """(x_dot, y_dot, heading_dot) with the heading integrated as a state."""
    heading = float(pose[2])
    return np.array([v * math.cos(heading), v * math.sin(heading), omega])
