"""Orchestrator: runs a scenario and produces RunReports, sweeps, and closeness comparisons."""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence

import numpy as np
from pydantic import ValidationError

from src.analysis.averaging import AveragedSystem
from src.analysis.verification import (
    ClosenessRun,
    LyapunovCheck,
    closeness_sweep,
    lyapunov_check,
    perturbation_period_mean,
)
from src.config import NUMERICS, SWEEP_PARAMETERS
from src.errors import ConfigurationError, EscVsError
from src.models import ClosenessReport, EscVsParams, RunReport, SweepRow, Trajectory
from src.scenarios import Scenario
from src.simulation.integrator import step_count
from src.simulation.runner import check_dt, default_dt, final_window_mean, run_warnings, simulate

logger = logging.getLogger(__name__)


def scaled_params(params: EscVsParams, parameter: str, value: float) -> EscVsParams:
    """Controller gains with one sweep parameter applied."""
    try:
        return _scaled(params, parameter, value)
    except ValidationError as exc:
        reasons = "; ".join(e["msg"] for e in exc.errors())
        raise ConfigurationError(f"{parameter}={value:g}: {reasons}") from None


def _scaled(params: EscVsParams, parameter: str, value: float) -> EscVsParams:
    if parameter == "omega":
        return params.updated(omega=value)
    if parameter == "k":
        return params.updated(k=value)
    if parameter == "a_scale":
        return params.updated(a=tuple(value * a for a in params.a))
    if parameter == "c_scale":
        return params.updated(c=tuple(value * c for c in params.c))
    raise ConfigurationError(f"unknown sweep parameter '{parameter}' (choose from {', '.join(SWEEP_PARAMETERS)})")


class Experiment:
    """Run one scenario, optionally overriding its timing and gains."""

    def __init__(self, scenario: Scenario) -> None:
        self.scenario = scenario
        self.plant = scenario.build_plant()
        self.x0 = scenario.initial_state()

    def run(
        self,
        params: EscVsParams | None = None,
        dt: float | None = None,
        t_final: float | None = None,
        decimate: int | None = None,
    ) -> tuple[Trajectory, RunReport]:
        params = self.scenario.controller if params is None else params
        if dt is None and params.omega == self.scenario.controller.omega:
            dt = self.scenario.dt
        dt = default_dt(params) if dt is None else dt
        check_dt(params, dt)
        t_final = self.scenario.t_final if t_final is None else t_final
        decimate = self.scenario.decimate if decimate is None else decimate

        started = time.perf_counter()
        traj = simulate(self.plant, params, self.x0, t_final, dt, decimate=decimate)
        elapsed = time.perf_counter() - started

        report = RunReport(
            name=self.scenario.name,
            application=self.scenario.application,
            final_window_mean_j=final_window_mean(traj.objective),
            j_initial=float(traj.objective[0]),
            max_abs_u_hat=float(np.max(np.abs(traj.u_hat))),
            wall_clock_s=elapsed,
            step_count=step_count(t_final, dt),
            final_time=float(traj.times[-1]),
            dt=dt,
            omega=params.omega,
            final_window_kinematics={
                label: final_window_mean(traj.kin[:, i]) for i, label in enumerate(traj.kinematic_labels)
            },
            warnings=run_warnings(self.plant, params, dt, traj),
        )
        logger.info(
            "%s: final-window J %.4e (J0 %.4e) in %.2f s",
            report.name, report.final_window_mean_j, report.j_initial, elapsed,
        )
        return traj, report

    def sweep(self, parameter: str, values: Sequence[float], t_final: float | None = None) -> list[SweepRow]:
        """One row per value; a failing row is recorded and the sweep continues."""
        if parameter not in SWEEP_PARAMETERS:
            raise ConfigurationError(f"unknown sweep parameter '{parameter}' (choose from {', '.join(SWEEP_PARAMETERS)})")
        if not values:
            raise ConfigurationError("sweep needs at least one value")

        rows: list[SweepRow] = []
        for value in values:
            try:
                params = scaled_params(self.scenario.controller, parameter, float(value))
                _, report = self.run(params=params, t_final=t_final)
            except (EscVsError, ValueError, ArithmeticError) as exc:
                logger.warning("sweep %s=%g failed: %s", parameter, value, exc)
                rows.append(SweepRow(parameter=parameter, value=float(value), status="failed", error=str(exc)))
                continue
            rows.append(SweepRow(
                parameter=parameter,
                value=float(value),
                status="ok",
                final_window_mean_j=report.final_window_mean_j,
                max_abs_u_hat=report.max_abs_u_hat,
                step_count=report.step_count,
            ))
        return rows

    def compare_averaged(
        self,
        omegas: Sequence[float] | None = None,
        t_final: float | None = None,
        channels: str = "kinematic",
        runs: list[ClosenessRun] | None = None,
    ) -> ClosenessReport:
        """Closeness of the oscillatory loop to its averaged system at increasing frequencies."""
        params = self.scenario.controller
        if omegas is None:
            omegas = [params.omega * f for f in NUMERICS.compare_omega_factors]
        if t_final is None:
            t_final = min(self.scenario.t_final, NUMERICS.compare_horizon_s)
        return closeness_sweep(self.plant, params, self.x0, t_final, omegas, channels=channels, runs=runs)

    def lyapunov(self, t_final: float | None = None) -> LyapunovCheck:
        t_final = self.scenario.t_final if t_final is None else t_final
        return lyapunov_check(AveragedSystem(self.plant, self.scenario.controller), self.x0, t_final)

    def perturbation_mean(self) -> float:
        """Largest |integral over one period| of the oscillatory field at the initial objective value."""
        J0 = self.plant.objective(np.asarray(self.x0.kin, dtype=float))
        return float(np.max(np.abs(perturbation_period_mean(self.scenario.controller, J0))))
