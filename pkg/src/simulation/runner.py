"""ESC-VS closed loop: flat state layout, right-hand side, and trajectory recording."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from pydantic import ValidationError

from src.config import NUMERICS
from src.control.escvs import control_input, control_sample, gain_ordering_warnings
from src.errors import ConfigurationError, IntegrationDivergedError
from src.models import EscVsParams, SimState, Trajectory
from src.plants.base import Plant
from src.simulation.integrator import Rhs, integrate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateLayout:
    """Flat vector x = [q_dot (n), kin (m), u_hat, h?]."""

    n: int
    m: int
    hpf: bool

    @property
    def qdot(self) -> slice:
        return slice(0, self.n)

    @property
    def kin(self) -> slice:
        return slice(self.n, self.n + self.m)

    @property
    def u_hat(self) -> int:
        return self.n + self.m

    @property
    def h(self) -> int:
        return self.n + self.m + 1

    @property
    def size(self) -> int:
        return self.n + self.m + 1 + int(self.hpf)

    def pack(self, state: SimState) -> np.ndarray:
        x = np.zeros(self.size)
        x[self.qdot] = state.qdot
        x[self.kin] = state.kin
        x[self.u_hat] = state.u_hat
        if self.hpf:
            x[self.h] = 0.0 if state.h is None else state.h
        return x

    def unpack(self, x: np.ndarray) -> SimState:
        return SimState(
            qdot=tuple(x[self.qdot]),
            kin=tuple(x[self.kin]),
            u_hat=float(x[self.u_hat]),
            h=float(x[self.h]) if self.hpf else None,
        )


def default_dt(params: EscVsParams) -> float:
    return params.period / NUMERICS.steps_per_period_default


def check_dt(params: EscVsParams, dt: float) -> None:
    limit = params.period / NUMERICS.steps_per_period_min
    if not 0.0 < dt <= limit * (1 + 1e-12):
        raise ConfigurationError(
            f"dt={dt:g} s gives fewer than {NUMERICS.steps_per_period_min} steps per perturbation period "
            f"({params.period:g} s); use dt <= {limit:g}"
        )


def check_dimensions(plant: Plant, params: EscVsParams, x0: SimState) -> None:
    if params.n != plant.n:
        raise ConfigurationError(f"{plant.application} has {plant.n} velocity channels but gains have {params.n}")
    if len(x0.qdot) != plant.n:
        raise ConfigurationError(f"initial velocities need {plant.n} entries, got {len(x0.qdot)}")
    if len(x0.kin) != plant.m:
        raise ConfigurationError(f"initial kinematic state needs {plant.m} entries, got {len(x0.kin)}")
    if x0.h is not None and not params.hpf_enabled:
        raise ConfigurationError("initial filter state h given but hpf_gain is not set")


def projection(plant: Plant, layout: StateLayout):
    def project(x: np.ndarray) -> np.ndarray:
        x[layout.kin] = plant.normalize(x[layout.kin])
        return x

    return project


def closed_loop_rhs(plant: Plant, params: EscVsParams, layout: StateLayout) -> Rhs:
    """d/dt [q_dot, kin, u_hat, h] = [f + C*u_hat + A*w*cos(wt), kinematics, adaptation, filter]."""

    def rhs(t: float, x: np.ndarray) -> np.ndarray:
        qdot = x[layout.qdot]
        kin = x[layout.kin]
        u_hat = float(x[layout.u_hat])
        h = float(x[layout.h]) if layout.hpf else None
        try:
            sample = control_sample(params, plant.objective(kin), u_hat, h, t)
        except ValidationError:
            raise IntegrationDivergedError(t, layout.u_hat) from None

        out = np.empty_like(x)
        out[layout.qdot] = plant.drift(kin, qdot) + sample.u
        out[layout.kin] = plant.kinematics(kin, qdot)
        out[layout.u_hat] = sample.u_hat_dot
        if layout.hpf:
            out[layout.h] = sample.h_dot
        return out

    return rhs


def build_trajectory(
    plant: Plant,
    layout: StateLayout,
    times: np.ndarray,
    states: np.ndarray,
    inputs: np.ndarray,
) -> Trajectory:
    kin = states[:, layout.kin]
    objective = np.array([plant.objective(row) for row in kin])
    return Trajectory(
        times=times,
        qdot=states[:, layout.qdot],
        kin=kin,
        u_hat=states[:, layout.u_hat],
        h=states[:, layout.h] if layout.hpf else None,
        inputs=inputs,
        objective=objective,
        velocity_labels=plant.velocity_labels,
        kinematic_labels=plant.kinematic_labels,
    )


def simulate(
    plant: Plant,
    params: EscVsParams,
    x0: SimState,
    t_final: float,
    dt: float | None = None,
    decimate: int = 1,
) -> Trajectory:
    """Integrate the full oscillatory ESC-VS loop over [0, t_final]."""
    check_dimensions(plant, params, x0)
    dt = default_dt(params) if dt is None else dt
    check_dt(params, dt)
    if not t_final > 0.0:
        raise ConfigurationError(f"t_final must be positive, got {t_final}")

    layout = StateLayout(plant.n, plant.m, params.hpf_enabled)
    logger.debug("simulating %s for %.3f s at dt=%.3e", plant.application, t_final, dt)
    times, states = integrate(
        closed_loop_rhs(plant, params, layout),
        layout.pack(x0),
        t_final,
        dt,
        project=projection(plant, layout),
        decimate=decimate,
    )
    inputs = np.array([control_input(params, u, t) for t, u in zip(times, states[:, layout.u_hat])])
    return build_trajectory(plant, layout, times, states, inputs)


def final_window_mean(values: np.ndarray, fraction: float = NUMERICS.final_window_fraction) -> float:
    """Mean over the last `fraction` of the samples (at least one sample)."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("cannot take the final-window mean of an empty signal")
    count = max(1, math.ceil(fraction * len(values)))
    return float(np.mean(values[-count:], axis=0))


def run_warnings(plant: Plant, params: EscVsParams, dt: float, trajectory: Trajectory) -> list[str]:
    """Non-fatal diagnostics: gain ordering, coarse sampling, near-singular attitudes."""
    warnings = gain_ordering_warnings(params)
    steps_per_period = params.period / dt
    if steps_per_period < NUMERICS.steps_per_period_default * (1 - 1e-9):
        msg = f"only {steps_per_period:.0f} steps per perturbation period (default {NUMERICS.steps_per_period_default})"
        logger.warning(msg)
        warnings.append(msg)
    for msg in plant.diagnostics(trajectory.kin):
        logger.warning(msg)
        warnings.append(msg)
    return warnings
