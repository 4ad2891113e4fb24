"""Pydantic v2 models for controller gains, plant parameters, states, trajectories, and reports."""

from __future__ import annotations

import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import NUMERICS

Vector = tuple[float, ...]
Vector3 = tuple[float, float, float]
Quaternion = tuple[float, float, float, float]


def _all_finite(values: Vector, name: str) -> Vector:
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"{name} must contain only finite numbers")
    return values


def _unit(values: Quaternion, name: str, tol: float) -> Quaternion:
    norm = math.sqrt(sum(v * v for v in values))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"{name} must be a unit quaternion (norm {norm:.9f})")
    return values


class KinematicKind(str, Enum):
    QUATERNION = "quaternion"
    EULER = "euler"
    POSE = "pose"
    QUATERNION_POSITION = "quaternion+position"


# --- Controller ---


class EscVsParams(BaseModel):
    """Gains of the single-perturbation ESC-VS law u = C*u_hat + A*omega*cos(omega*t).

    Signs of A and C are free: the satellite preset uses negative
    wheel-channel gains. Gains already absorb the input matrix B (c_i = c'_i / b_i).
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    a: Vector
    c: Vector
    k: float = Field(ge=0.0)
    omega: float = Field(gt=0.0, alias="omega_rad_per_s")
    hpf_gain: float | None = Field(default=None, gt=0.0, alias="hpf_gain_per_s")

    @field_validator("a", "c")
    @classmethod
    def _finite(cls, v: Vector, info) -> Vector:
        if not v:
            raise ValueError(f"{info.field_name} must not be empty")
        return _all_finite(v, info.field_name)

    @field_validator("k", "omega")
    @classmethod
    def _finite_scalar(cls, v: float, info) -> float:
        if not math.isfinite(v):
            raise ValueError(f"{info.field_name} must be finite")
        return v

    @model_validator(mode="after")
    def _same_length(self) -> EscVsParams:
        if len(self.a) != len(self.c):
            raise ValueError(f"a and c must have the same length ({len(self.a)} != {len(self.c)})")
        return self

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def a_vec(self) -> np.ndarray:
        return np.asarray(self.a, dtype=float)

    @property
    def c_vec(self) -> np.ndarray:
        return np.asarray(self.c, dtype=float)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    @property
    def hpf_enabled(self) -> bool:
        return self.hpf_gain is not None

    def updated(self, **changes: object) -> EscVsParams:
        """Return a validated copy with fields replaced."""
        data = self.model_dump()
        data.update(changes)
        return EscVsParams.model_validate(data)


class ControlSample(BaseModel):
    """Controller output for one evaluation of the closed loop."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    u: np.ndarray
    u_hat_dot: float
    h_dot: float | None = None

    @model_validator(mode="after")
    def _finite(self) -> ControlSample:
        h_ok = self.h_dot is None or math.isfinite(self.h_dot)
        if not np.all(np.isfinite(self.u)) or not math.isfinite(self.u_hat_dot) or not h_ok:
            raise ValueError("control sample is not finite")
        return self


# --- Plants ---


class RigidBodyParams(BaseModel):
    """Constant diagonal inertia and mass of a free rigid body."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    inertia: Vector3 = Field(alias="inertia_kg_m2")
    mass: float = Field(gt=0.0, alias="mass_kg")
    q_desired: Quaternion = (0.0, 0.0, 0.0, 1.0)
    position_desired: Vector3 = Field(default=(0.0, 0.0, 0.0), alias="position_desired_m")

    @field_validator("inertia")
    @classmethod
    def _positive(cls, v: Vector3) -> Vector3:
        if any(not (x > 0.0 and math.isfinite(x)) for x in v):
            raise ValueError("inertia entries must be positive and finite")
        return v

    @field_validator("q_desired")
    @classmethod
    def _unit_desired(cls, v: Quaternion) -> Quaternion:
        return _unit(v, "q_desired", NUMERICS.quaternion_tolerance)


class SatelliteParams(BaseModel):
    """Satellite body with three axis-aligned reaction wheels and linear damping."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    inertia: Vector3 = Field(alias="inertia_kg_m2")
    rw_inertia: Vector3 = Field(alias="rw_inertia_kg_m2")
    damping: Vector3 = Field(alias="damping_n_m_s")
    q_desired: Quaternion

    @field_validator("inertia", "rw_inertia")
    @classmethod
    def _positive(cls, v: Vector3, info) -> Vector3:
        if any(not (x > 0.0 and math.isfinite(x)) for x in v):
            raise ValueError(f"{info.field_name} entries must be positive and finite")
        return v

    @field_validator("damping")
    @classmethod
    def _nonnegative(cls, v: Vector3) -> Vector3:
        if any(not (x >= 0.0 and math.isfinite(x)) for x in v):
            raise ValueError("damping entries must be non-negative and finite")
        return v

    @field_validator("q_desired")
    @classmethod
    def _unit_desired(cls, v: Quaternion) -> Quaternion:
        return _unit(v, "q_desired", NUMERICS.quaternion_tolerance)


class QuadcopterParams(BaseModel):
    """Quadcopter attitude loop: inertia, linear rotational drag, desired 3-2-1 Euler angles."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    inertia: Vector3 = Field(alias="inertia_kg_m2")
    rot_drag: Vector3 = Field(alias="rot_drag_n_m_s")
    euler_desired: Vector3 = Field(default=(0.0, 0.0, 0.0), alias="euler_desired_rad")

    @field_validator("inertia")
    @classmethod
    def _positive(cls, v: Vector3) -> Vector3:
        if any(not (x > 0.0 and math.isfinite(x)) for x in v):
            raise ValueError("inertia entries must be positive and finite")
        return v

    @field_validator("rot_drag")
    @classmethod
    def _nonnegative(cls, v: Vector3) -> Vector3:
        if any(not (x >= 0.0 and math.isfinite(x)) for x in v):
            raise ValueError("rot_drag entries must be non-negative and finite")
        return v


class UnicycleParams(BaseModel):
    """Acceleration-controlled unicycle with linear dissipation."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    d_v: float = Field(ge=0.0, alias="d_v_per_s")
    d_omega: float = Field(ge=0.0, alias="d_omega_per_s")
    target: tuple[float, float] = Field(alias="target_m")


# --- Simulation state and records ---


class SimState(BaseModel):
    """ESC-VS state: generalized velocities, kinematic state, control estimate, optional filter state."""

    model_config = ConfigDict(frozen=True)

    qdot: Vector
    kin: Vector
    u_hat: float = 0.0
    h: float | None = None

    @model_validator(mode="after")
    def _finite(self) -> SimState:
        values = [*self.qdot, *self.kin, self.u_hat]
        if self.h is not None:
            values.append(self.h)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("state entries must be finite")
        return self


class Trajectory(BaseModel):
    """Time-stamped record of a run. Arrays are read-only once built."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    times: np.ndarray
    qdot: np.ndarray
    kin: np.ndarray
    u_hat: np.ndarray
    h: np.ndarray | None = None
    inputs: np.ndarray
    objective: np.ndarray
    velocity_labels: tuple[str, ...]
    kinematic_labels: tuple[str, ...]

    @model_validator(mode="after")
    def _aligned(self) -> Trajectory:
        n = len(self.times)
        arrays = [self.qdot, self.kin, self.u_hat, self.inputs, self.objective]
        if self.h is not None:
            arrays.append(self.h)
        if any(len(arr) != n for arr in arrays):
            raise ValueError("trajectory arrays must have equal length")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("trajectory times must be strictly increasing")
        for arr in [self.times, *arrays]:
            arr.setflags(write=False)
        return self

    def __len__(self) -> int:
        return len(self.times)

    def channels(self) -> dict[str, np.ndarray]:
        """Every recorded channel keyed by its export column name."""
        cols: dict[str, np.ndarray] = {"t": self.times}
        for i, label in enumerate(self.velocity_labels):
            cols[label] = self.qdot[:, i]
        for i, label in enumerate(self.kinematic_labels):
            cols[label] = self.kin[:, i]
        cols["u_hat"] = self.u_hat
        if self.h is not None:
            cols["h"] = self.h
        cols["J"] = self.objective
        for i in range(self.inputs.shape[1]):
            cols[f"u{i + 1}"] = self.inputs[:, i]
        return cols


# --- Reports ---


class ClosenessReport(BaseModel):
    """Sup-norm deviation between the oscillatory loop and its averaged system per frequency."""

    omegas: list[float]
    sup_errors: list[float]
    decay_ratios: list[float]
    channels: str = "kinematic"
    t_final: float = 0.0

    @model_validator(mode="after")
    def _aligned(self) -> ClosenessReport:
        if len(self.omegas) != len(self.sup_errors):
            raise ValueError("omegas and sup_errors must align")
        if len(self.decay_ratios) != max(len(self.omegas) - 1, 0):
            raise ValueError("decay_ratios must have one entry per consecutive pair")
        if any(b <= a for a, b in zip(self.omegas, self.omegas[1:])):
            raise ValueError("omegas must be strictly increasing")
        return self


class RunReport(BaseModel):
    name: str
    application: str
    final_window_mean_j: float = Field(ge=0.0)
    j_initial: float
    max_abs_u_hat: float
    wall_clock_s: float
    step_count: int
    final_time: float
    dt: float
    omega: float
    final_window_kinematics: dict[str, float] = {}
    warnings: list[str] = []


class SweepRow(BaseModel):
    parameter: str
    value: float
    status: str  # "ok" | "failed"
    final_window_mean_j: float | None = None
    max_abs_u_hat: float | None = None
    step_count: int | None = None
    error: str | None = None
