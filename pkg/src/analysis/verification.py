"""Executable checks of the averaging claims: closeness to the averaged system, Lyapunov descent,
quadratic-velocity drift, and zero-mean perturbation."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from typing import NamedTuple

import numpy as np

from src.config import NUMERICS
from src.errors import ConfigurationError
from src.models import ClosenessReport, EscVsParams, SimState, Trajectory
from src.plants.base import Plant
from src.analysis.averaging import AveragedSystem, simulate_averaged
from src.simulation.integrator import integrate
from src.simulation.runner import check_dimensions, simulate

logger = logging.getLogger(__name__)

CHANNEL_SETS = ("kinematic", "all")


class LyapunovCheck(NamedTuple):
    monotone: bool
    max_increase: float


class ClosenessRun(NamedTuple):
    omega: float
    full: Trajectory
    averaged: Trajectory
    sup_error: float


def _compared(traj: Trajectory, channels: str) -> np.ndarray:
    if channels == "kinematic":
        return traj.kin
    return np.column_stack([traj.qdot, traj.kin, traj.u_hat])


def sup_deviation(full: Trajectory, averaged: Trajectory, channels: str = "kinematic") -> float:
    """max over shared sample times of |x(t) - x_bar(t)| on the selected channels."""
    if channels not in CHANNEL_SETS:
        raise ConfigurationError(f"channels must be one of {CHANNEL_SETS}, got '{channels}'")
    count = min(len(full), len(averaged))
    if not np.allclose(full.times[:count], averaged.times[:count], rtol=0.0, atol=1e-9 * max(1.0, full.times[-1])):
        raise ConfigurationError("full and averaged trajectories are not sampled on the same time grid")
    diff = _compared(full, channels)[:count] - _compared(averaged, channels)[:count]
    return float(np.max(np.linalg.norm(diff, axis=1)))


def compare_at(
    plant: Plant,
    params: EscVsParams,
    x0: SimState,
    t_final: float,
    channels: str = "kinematic",
) -> ClosenessRun:
    """Run the oscillatory loop and the averaged system from the same state at params.omega."""
    dt = params.period / NUMERICS.steps_per_period_default
    stride = NUMERICS.steps_per_period_default // NUMERICS.averaged_steps_per_period
    full = simulate(plant, params, x0, t_final, dt, decimate=stride)
    averaged = simulate_averaged(AveragedSystem(plant, params), x0, t_final, dt * stride)
    return ClosenessRun(params.omega, full, averaged, sup_deviation(full, averaged, channels))


def decay_ratios(errors: Sequence[float]) -> list[float]:
    ratios = []
    for prev, nxt in zip(errors, errors[1:]):
        if prev == 0.0:
            ratios.append(0.0 if nxt == 0.0 else float("inf"))
        else:
            ratios.append(nxt / prev)
    return ratios


def closeness_sweep(
    plant: Plant,
    params: EscVsParams,
    x0: SimState,
    t_final: float,
    omegas: Sequence[float],
    channels: str = "kinematic",
    x0_averaged: SimState | None = None,
    runs: list[ClosenessRun] | None = None,
) -> ClosenessReport:
    """Sup-norm deviation between loop and averaged system for each frequency.

    Pass a list as `runs` to collect the paired trajectories.
    """
    omegas = [float(w) for w in omegas]
    if len(omegas) < 3:
        raise ConfigurationError(f"closeness sweep needs at least 3 frequencies, got {len(omegas)}")
    if any(b <= a for a, b in zip(omegas, omegas[1:])):
        raise ConfigurationError("frequencies must be strictly increasing")
    if x0_averaged is not None and x0_averaged != x0:
        raise ConfigurationError("averaged system must start from the same state as the oscillatory loop")
    check_dimensions(plant, params, x0)

    errors = []
    for omega in omegas:
        run = compare_at(plant, params.updated(omega=omega), x0, t_final, channels)
        logger.info("omega=%g rad/s: sup deviation %.6e", omega, run.sup_error)
        errors.append(run.sup_error)
        if runs is not None:
            runs.append(run)

    return ClosenessReport(
        omegas=omegas,
        sup_errors=errors,
        decay_ratios=decay_ratios(errors),
        channels=channels,
        t_final=t_final,
    )


def lyapunov_values(plant: Plant, kin_history: np.ndarray, j_star: float | None = None) -> np.ndarray:
    """V = J(q) - J(q*) along a sequence of kinematic states."""
    j_star = plant.objective_minimum() if j_star is None else j_star
    return np.array([plant.objective(row) for row in kin_history]) - j_star


def transient_window(params: EscVsParams, t_final: float) -> float:
    """One averaged time constant 1/min|c_i|, capped at a fraction of the run."""
    cap = NUMERICS.lyapunov_window_cap * t_final
    nonzero = [abs(c) for c in params.c if c != 0.0]
    if not nonzero:
        return cap
    return min(1.0 / min(nonzero), cap)


def descent_check(
    times: np.ndarray,
    values: np.ndarray,
    window: float,
    tolerance: float = NUMERICS.lyapunov_tolerance,
) -> LyapunovCheck:
    mask = times >= window
    steps = np.diff(values[mask])
    max_increase = max(0.0, float(np.max(steps))) if steps.size else 0.0
    return LyapunovCheck(max_increase <= tolerance, max_increase)


def lyapunov_check(
    sys: AveragedSystem,
    x0: SimState,
    t_final: float,
    dt: float | None = None,
    tolerance: float = NUMERICS.lyapunov_tolerance,
) -> LyapunovCheck:
    """Whether V = J - J* is nonincreasing along the averaged trajectory after the transient window."""
    traj = simulate_averaged(sys, x0, t_final, dt)
    values = lyapunov_values(sys.plant, traj.kin)
    return descent_check(traj.times, values, transient_window(sys.params, t_final), tolerance)


def third_difference(
    drift: Callable[[np.ndarray], np.ndarray],
    qdot: np.ndarray,
    direction: np.ndarray,
    step: float,
) -> np.ndarray:
    """Third central difference of the drift along a velocity direction; zero for quadratic drifts."""
    qdot = np.asarray(qdot, dtype=float)
    d = step * np.asarray(direction, dtype=float)
    return (drift(qdot + 2 * d) - 2 * drift(qdot + d) + 2 * drift(qdot - d) - drift(qdot - 2 * d)) / (2 * step**3)


def perturbation_period_mean(params: EscVsParams, J: float, steps: int = NUMERICS.steps_per_period_default) -> np.ndarray:
    """Integral over one period of the oscillatory field [A; k*J] * omega*cos(omega*t)."""
    amplitudes = np.append(params.a_vec, params.k * J)
    w = params.omega

    def field(t: float, x: np.ndarray) -> np.ndarray:
        return amplitudes * (w * np.cos(w * t))

    _, states = integrate(field, np.zeros(amplitudes.size), params.period, params.period / steps)
    return states[-1]
