"""Satellite with three body-aligned reaction wheels (quaternion attitude)."""

from __future__ import annotations

import numpy as np

from src.models import KinematicKind, SatelliteParams
from src.plants.base import Plant
from src.plants.kinematics import error_quaternion_matrix, normalize_quaternion, quaternion_kinematics


def satellite_drift(p: SatelliteParams, omega: np.ndarray, omega_rw: np.ndarray) -> np.ndarray:
    """Body block -I^-1 (Omega x I Omega + Omega x I_RW Omega_RW + D Omega); wheel block is zero."""
    inertia = np.asarray(p.inertia, dtype=float)
    rw_inertia = np.asarray(p.rw_inertia, dtype=float)
    damping = np.asarray(p.damping, dtype=float)
    omega = np.asarray(omega, dtype=float)
    omega_rw = np.asarray(omega_rw, dtype=float)

    gyroscopic = np.cross(omega, inertia * omega)
    wheel_coupling = np.cross(omega, rw_inertia * omega_rw)
    body = -(gyroscopic + wheel_coupling + damping * omega) / inertia
    return np.concatenate([body, np.zeros(3)])


def satellite_input_map(p: SatelliteParams, tau_rw: np.ndarray) -> np.ndarray:
    """Wheel torque into body and wheel accelerations: [I^-1 tau; -I_RW^-1 tau]."""
    tau_rw = np.asarray(tau_rw, dtype=float)
    return np.concatenate([
        tau_rw / np.asarray(p.inertia, dtype=float),
        -tau_rw / np.asarray(p.rw_inertia, dtype=float),
    ])


def satellite_gains_from_torque(p: SatelliteParams, torque_gain: np.ndarray) -> np.ndarray:
    """Six-channel gain vector produced by a body-torque gain pushed through the input map."""
    return satellite_input_map(p, torque_gain)


def satellite_objective(q: np.ndarray, q_desired: np.ndarray) -> float:
    """J = Qe1^2 + Qe2^2 + Qe3^2 (the scalar part is left out: it is +/-1 at zero error)."""
    qe = error_quaternion_matrix(q_desired) @ np.asarray(q, dtype=float)
    return float(qe[:3] @ qe[:3])


class SatellitePlant(Plant):
    """q_dot = (Omega, Omega_RW); channels 1-3 drive the body, 4-6 the wheels."""

    application = "satellite"
    kind = KinematicKind.QUATERNION
    velocity_labels = ("omega_x", "omega_y", "omega_z", "omega_rw_x", "omega_rw_y", "omega_rw_z")
    kinematic_labels = ("q1", "q2", "q3", "q4")

    def __init__(self, params: SatelliteParams) -> None:
        self.params = params
        self._q_desired = np.asarray(params.q_desired, dtype=float)

    def drift(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        return satellite_drift(self.params, qdot[:3], qdot[3:])

    def kinematics(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        # wheel spin does not move the body attitude
        return quaternion_kinematics(kin, qdot[:3])

    def objective(self, kin: np.ndarray) -> float:
        return satellite_objective(kin, self._q_desired)

    def normalize(self, kin: np.ndarray) -> np.ndarray:
        return normalize_quaternion(kin)
