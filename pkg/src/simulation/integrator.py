"""Fixed-step classical Runge-Kutta integration of time-varying vector fields."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np

from src.errors import ConfigurationError, IntegrationDivergedError, KinematicSingularityError

Rhs = Callable[[float, np.ndarray], np.ndarray]
Projection = Callable[[np.ndarray], np.ndarray]


def _stage(rhs: Rhs, t: float, x: np.ndarray) -> np.ndarray:
    try:
        k = np.asarray(rhs(t, x), dtype=float)
    except KinematicSingularityError as exc:
        if exc.t is None:
            raise exc.at(t) from exc
        raise
    finite = np.isfinite(k)
    if not finite.all():
        raise IntegrationDivergedError(t, int(np.flatnonzero(~finite)[0]))
    return k


def rk4_step(rhs: Rhs, state: np.ndarray, t: float, dt: float) -> np.ndarray:
    """One classical RK4 step of x' = rhs(t, x)."""
    if not dt > 0.0:
        raise ConfigurationError(f"dt must be positive, got {dt}")
    state = np.asarray(state, dtype=float)
    half = 0.5 * dt
    k1 = _stage(rhs, t, state)
    k2 = _stage(rhs, t + half, state + half * k1)
    k3 = _stage(rhs, t + half, state + half * k2)
    k4 = _stage(rhs, t + dt, state + dt * k3)
    out = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    finite = np.isfinite(out)
    if not finite.all():
        raise IntegrationDivergedError(t + dt, int(np.flatnonzero(~finite)[0]))
    return out


def step_count(t_final: float, dt: float) -> int:
    """Number of steps needed to cover [0, t_final]; all but the last are uniform."""
    # tolerate t_final being an integer multiple of dt up to rounding
    return max(1, math.ceil(t_final / dt - 1e-9))


def integrate(
    rhs: Rhs,
    x0: np.ndarray,
    t_final: float,
    dt: float,
    *,
    project: Projection | None = None,
    decimate: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate from t = 0 to exactly t_final and return (times, states) sampled every
    `decimate` steps.

    The last step is shortened so it lands on t_final, and it is always recorded.
    `project` is applied after every accepted step (e.g. quaternion renormalization).
    """
    if not t_final > 0.0:
        raise ConfigurationError(f"t_final must be positive, got {t_final}")
    if not dt > 0.0:
        raise ConfigurationError(f"dt must be positive, got {dt}")
    if decimate < 1:
        raise ConfigurationError(f"decimate must be >= 1, got {decimate}")

    steps = step_count(t_final, dt)
    x = np.array(x0, dtype=float)
    if project is not None:
        x = project(x)

    n_records = steps // decimate + 1 + int(steps % decimate != 0)
    times = np.empty(n_records)
    states = np.empty((n_records, x.size))
    times[0] = 0.0
    states[0] = x

    row = 1
    last = steps - 1
    for i in range(steps):
        t = i * dt
        h = t_final - t if i == last else dt
        x = rk4_step(rhs, x, t, h)
        if project is not None:
            x = project(x)
        if i == last or (i + 1) % decimate == 0:
            times[row] = t_final if i == last else (i + 1) * dt
            states[row] = x
            row += 1

    return times[:row], states[:row]
