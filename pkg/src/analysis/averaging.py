"""Averaged (omega-free) counterpart of the ESC-VS loop, built by probing the black-box plant.

The drift and objective are only ever evaluated, never expanded: second
velocity-derivatives of the drift and gradients of J come from central
differences, which are exact up to rounding for the quadratic drifts and
objectives used here.
"""

from __future__ import annotations

import numpy as np

from src.config import NUMERICS
from src.errors import ConfigurationError, NonFiniteEvaluationError
from src.models import EscVsParams, SimState, Trajectory
from src.plants.base import Plant
from src.simulation.integrator import Rhs, integrate
from src.simulation.runner import StateLayout, build_trajectory, check_dimensions, projection


def _finite(values: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NonFiniteEvaluationError(f"{what} returned a non-finite value")
    return values


def _velocity_step(qdot: np.ndarray, fd_step: float) -> float:
    return fd_step * max(1.0, float(np.max(np.abs(qdot))) if qdot.size else 1.0)


def m22(
    plant: Plant,
    kin: np.ndarray,
    qdot: np.ndarray,
    a: np.ndarray,
    fd_step: float = NUMERICS.fd_step,
) -> np.ndarray:
    """M22[i, k] = sum_j d^2 f_i / (d qdot_k d qdot_j) * a_j, by mixed central differences."""
    kin = np.asarray(kin, dtype=float)
    qdot = np.asarray(qdot, dtype=float)
    a = np.asarray(a, dtype=float)
    n = plant.n
    norm_a = float(np.linalg.norm(a))
    if norm_a == 0.0:
        return np.zeros((n, n))

    h = _velocity_step(qdot, fd_step)
    along_a = (h / norm_a) * a
    out = np.empty((n, n))
    for k in range(n):
        e_k = np.zeros(n)
        e_k[k] = h
        f_pp = plant.drift(kin, qdot + e_k + along_a)
        f_pm = plant.drift(kin, qdot + e_k - along_a)
        f_mp = plant.drift(kin, qdot - e_k + along_a)
        f_mm = plant.drift(kin, qdot - e_k - along_a)
        out[:, k] = (f_pp - f_pm - f_mp + f_mm) * (norm_a / (4.0 * h * h))
    return _finite(out, "drift")


def m22_action(
    plant: Plant,
    kin: np.ndarray,
    qdot: np.ndarray,
    a: np.ndarray,
    fd_step: float = NUMERICS.fd_step,
) -> np.ndarray:
    """M22 @ a, i.e. the second directional derivative of the drift along a (three evaluations)."""
    kin = np.asarray(kin, dtype=float)
    qdot = np.asarray(qdot, dtype=float)
    a = np.asarray(a, dtype=float)
    norm_a = float(np.linalg.norm(a))
    if norm_a == 0.0:
        return np.zeros(plant.n)
    h = _velocity_step(qdot, fd_step)
    d = (h / norm_a) * a
    f_p = plant.drift(kin, qdot + d)
    f_0 = plant.drift(kin, qdot)
    f_m = plant.drift(kin, qdot - d)
    return _finite((f_p - 2.0 * f_0 + f_m) * (norm_a * norm_a / (h * h)), "drift")


def grad_objective(plant: Plant, kin: np.ndarray, fd_step: float = NUMERICS.fd_step) -> np.ndarray:
    """Central-difference gradient of J with respect to the kinematic coordinates it reads."""
    kin = np.asarray(kin, dtype=float)
    grad = np.empty(kin.size)
    for i in range(kin.size):
        h = fd_step * max(1.0, abs(kin[i]))
        shifted = kin.copy()
        shifted[i] = kin[i] + h
        j_plus = plant.objective(shifted)
        shifted[i] = kin[i] - h
        j_minus = plant.objective(shifted)
        grad[i] = (j_plus - j_minus) / (2.0 * h)
    return _finite(grad, "objective")


def coordinate_gradient(plant: Plant, kin: np.ndarray, fd_step: float = NUMERICS.fd_step) -> np.ndarray:
    """Gradient of J with respect to generalized coordinates (row of length n).

    Entry k is the rate of change of J when the kinematic state is displaced
    along the flow of a unit velocity in channel k.
    """
    kin = np.asarray(kin, dtype=float)
    h = fd_step
    row = np.empty(plant.n)
    for k in range(plant.n):
        unit = np.zeros(plant.n)
        unit[k] = 1.0
        direction = plant.kinematics(kin, unit)
        row[k] = (plant.objective(kin + h * direction) - plant.objective(kin - h * direction)) / (2.0 * h)
    return _finite(row, "objective")


class AveragedSystem:
    """Autonomous averaged field of an ESC-VS loop; only A, C, k (and e) are used, never omega."""

    def __init__(self, plant: Plant, params: EscVsParams, fd_step: float = NUMERICS.fd_step) -> None:
        if params.n != plant.n:
            raise ConfigurationError(f"{plant.application} has {plant.n} velocity channels but gains have {params.n}")
        self.plant = plant
        self.params = params
        self.a = params.a_vec
        self.c = params.c_vec
        self.k = params.k
        self.hpf_gain = params.hpf_gain
        self.fd_step = fd_step
        self.layout = StateLayout(plant.n, plant.m, params.hpf_enabled)


def averaged_rhs(sys: AveragedSystem, state: np.ndarray, t: float) -> np.ndarray:
    """Z(x) + 1/4 [0; M22 A; -2k grad J . A]; t is accepted for solver symmetry and ignored."""
    layout = sys.layout
    plant = sys.plant
    qdot = state[layout.qdot]
    kin = state[layout.kin]
    u_hat = state[layout.u_hat]

    out = np.empty_like(state)
    out[layout.qdot] = (
        plant.drift(kin, qdot) + sys.c * u_hat + 0.25 * m22_action(plant, kin, qdot, sys.a, sys.fd_step)
    )
    out[layout.kin] = plant.kinematics(kin, qdot)
    out[layout.u_hat] = -0.5 * sys.k * float(coordinate_gradient(plant, kin, sys.fd_step) @ sys.a)
    if layout.hpf:
        out[layout.h] = -sys.hpf_gain * state[layout.h] + plant.objective(kin)
    return out


def averaged_field(sys: AveragedSystem) -> Rhs:
    return lambda t, x: averaged_rhs(sys, x, t)


def default_averaged_dt(params: EscVsParams) -> float:
    return params.period / NUMERICS.averaged_steps_per_period


def simulate_averaged(
    sys: AveragedSystem,
    x0: SimState,
    t_final: float,
    dt: float | None = None,
    decimate: int = 1,
) -> Trajectory:
    """Integrate the averaged system from x0 with the same integrator and layout as simulate."""
    check_dimensions(sys.plant, sys.params, x0)
    dt = default_averaged_dt(sys.params) if dt is None else dt
    layout = sys.layout
    times, states = integrate(
        averaged_field(sys),
        layout.pack(x0),
        t_final,
        dt,
        project=projection(sys.plant, layout),
        decimate=decimate,
    )
    inputs = np.outer(states[:, layout.u_hat], sys.c)
    return build_trajectory(sys.plant, layout, times, states, inputs)
