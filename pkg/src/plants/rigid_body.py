"""Free rigid body with constant diagonal inertia and mass (rotational + translational)."""

from __future__ import annotations

import numpy as np

from src.models import KinematicKind, RigidBodyParams
from src.plants.base import Plant
from src.plants.kinematics import normalize_quaternion, quaternion_kinematics, quaternion_to_dcm
from src.plants.satellite import satellite_objective


def rigid_body_drift(p: RigidBodyParams, omega: np.ndarray, v: np.ndarray) -> np.ndarray:
    """f = [-I^-1 (Omega x I Omega); -M^-1 (Omega x v)]."""
    inertia = np.asarray(p.inertia, dtype=float)
    omega = np.asarray(omega, dtype=float)
    v = np.asarray(v, dtype=float)
    angular = -np.cross(omega, inertia * omega) / inertia
    translational = -np.cross(omega, v) / p.mass
    return np.concatenate([angular, translational])


class RigidBodyPlant(Plant):
    """Generic rigid body: q_dot = (Omega, v), kinematic state (Q, p)."""

    application = "custom-rigid-body"
    kind = KinematicKind.QUATERNION_POSITION
    velocity_labels = ("omega_x", "omega_y", "omega_z", "v_x", "v_y", "v_z")
    kinematic_labels = ("q1", "q2", "q3", "q4", "x", "y", "z")

    def __init__(self, params: RigidBodyParams) -> None:
        self.params = params
        self._q_desired = np.asarray(params.q_desired, dtype=float)
        self._p_desired = np.asarray(params.position_desired, dtype=float)

    def drift(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        return rigid_body_drift(self.params, qdot[:3], qdot[3:])

    def kinematics(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        q = kin[:4]
        q_dot = quaternion_kinematics(q, qdot[:3])
        # body velocity rotated into the inertial frame
        p_dot = quaternion_to_dcm(q).T @ qdot[3:]
        return np.concatenate([q_dot, p_dot])

    def objective(self, kin: np.ndarray) -> float:
        offset = kin[4:] - self._p_desired
        return satellite_objective(kin[:4], self._q_desired) + float(offset @ offset)

    def normalize(self, kin: np.ndarray) -> np.ndarray:
        out = np.array(kin, dtype=float)
        out[:4] = normalize_quaternion(out[:4])
        return out
