"""Quadcopter attitude loop with linear rotational drag (3-2-1 Euler angles)."""

from __future__ import annotations

import math

import numpy as np

from src.config import NUMERICS
from src.models import KinematicKind, QuadcopterParams
from src.plants.base import Plant
from src.plants.kinematics import euler_kinematics


def quad_drift(p: QuadcopterParams, omega: np.ndarray) -> np.ndarray:
    """f = -I^-1 (Omega x I Omega + k_r Omega)."""
    inertia = np.asarray(p.inertia, dtype=float)
    rot_drag = np.asarray(p.rot_drag, dtype=float)
    omega = np.asarray(omega, dtype=float)
    return -(np.cross(omega, inertia * omega) + rot_drag * omega) / inertia


def quad_objective(eta: np.ndarray, eta_desired: np.ndarray) -> float:
    """J = (psi - psi_d)^2 + (theta - theta_d)^2 + (phi - phi_d)^2."""
    err = np.asarray(eta, dtype=float) - np.asarray(eta_desired, dtype=float)
    return float(err @ err)


class QuadcopterPlant(Plant):
    """Attitude only; the translational loop under constant thrust is not integrated."""

    application = "quadcopter"
    kind = KinematicKind.EULER
    velocity_labels = ("omega_x", "omega_y", "omega_z")
    kinematic_labels = ("psi", "theta", "phi")

    def __init__(self, params: QuadcopterParams) -> None:
        self.params = params
        self._eta_desired = np.asarray(params.euler_desired, dtype=float)

    def drift(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        return quad_drift(self.params, qdot)

    def kinematics(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        return euler_kinematics(kin, qdot)

    def objective(self, kin: np.ndarray) -> float:
        return quad_objective(kin, self._eta_desired)

    def diagnostics(self, kin_history: np.ndarray) -> list[str]:
        margin = NUMERICS.euler_singularity_margin
        limit = math.pi / 2 - NUMERICS.euler_warning_factor * margin
        worst = float(np.max(np.abs(kin_history[:, 1]))) if len(kin_history) else 0.0
        if worst >= limit:
            return [f"pitch reached {worst:.4f} rad, within {math.pi / 2 - worst:.4f} rad of the Euler singularity"]
        return []
