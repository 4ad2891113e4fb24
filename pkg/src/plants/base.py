"""Plant contract (Strategy pattern): drift, kinematic propagation, and objective measurement."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import ClassVar

import numpy as np

from src.models import KinematicKind


class Plant(ABC):
    """Second-order mechanical system q_ddot = f(q, q_dot) + u seen by the ESC-VS loop.

    Generalized coordinates are never materialized; the plant propagates the
    kinematic state its objective reads (quaternion, Euler triple, or pose).
    """

    application: ClassVar[str]
    kind: ClassVar[KinematicKind]
    velocity_labels: ClassVar[tuple[str, ...]]
    kinematic_labels: ClassVar[tuple[str, ...]]

    @property
    def n(self) -> int:
        return len(self.velocity_labels)

    @property
    def m(self) -> int:
        return len(self.kinematic_labels)

    @abstractmethod
    def drift(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        """Uncontrolled acceleration f(q, q_dot), length n."""

    @abstractmethod
    def kinematics(self, kin: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        """Rate of the kinematic state, length m. Linear in q_dot for every plant."""

    @abstractmethod
    def objective(self, kin: np.ndarray) -> float:
        """Measured J; non-negative, zero at the desired configuration."""

    def objective_minimum(self) -> float:
        return 0.0

    def normalize(self, kin: np.ndarray) -> np.ndarray:
        """Project the kinematic state back onto its manifold after an accepted step."""
        return kin

    def diagnostics(self, kin_history: np.ndarray) -> list[str]:
        """Warnings about the visited kinematic states (e.g. near-singular attitudes)."""
        return []
