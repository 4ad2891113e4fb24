"""Acceleration-controlled unicycle with dissipation (planar source seeking)."""

from __future__ import annotations

import numpy as np

from src.models import KinematicKind, UnicycleParams
from src.plants.base import Plant
from src.plants.kinematics import unicycle_kinematics


def unicycle_drift(p: UnicycleParams, omega: float, v: float) -> np.ndarray:
    """f = (-d_omega * Omega, -d_v * v)."""
    return np.array([-p.d_omega * omega, -p.d_v * v])


def unicycle_objective(pose: np.ndarray, target: np.ndarray) -> float:
    """Squared distance from (x, y) to the target."""
    dx = float(pose[0]) - float(target[0])
    dy = float(pose[1]) - float(target[1])
    return dx * dx + dy * dy


class UnicyclePlant(Plant):
    """q_dot = (Omega, v); pose = (x, y, heading)."""

    application = "unicycle"
    kind = KinematicKind.POSE
    velocity_labels = ("omega", "v")
    kinematic_labels = ("x", "y", "heading")

    def __init__(self, params: UnicycleParams) -> None:
        self.params = params
        self._target = np.asarray(params.target, dtype=float)

    def drift(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        return unicycle_drift(self.params, float(qdot[0]), float(qdot[1]))

    def kinematics(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        return unicycle_kinematics(kin, v=float(qdot[1]), omega=float(qdot[0]))

    def objective(self, kin: np.ndarray) -> float:
        return unicycle_objective(kin, self._target)
