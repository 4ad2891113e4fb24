"""Shared plants, gains and scenario files for the test suite."""

from __future__ import annotations

import textwrap

import pytest

from src.models import (
    EscVsParams,
    QuadcopterParams,
    RigidBodyParams,
    SatelliteParams,
    UnicycleParams,
)
from src.plants import QuadcopterPlant, RigidBodyPlant, SatellitePlant, UnicyclePlant

SATELLITE_Q0 = (0.57, 0.57, 0.57, 0.159)


@pytest.fixture
def satellite_params() -> SatelliteParams:
    return SatelliteParams(
        inertia=(1.0, 2.0, 3.0),
        rw_inertia=(0.005, 0.005, 0.005),
        damping=(0.2, 0.4, 0.6),
        q_desired=(0.0, 0.0, 0.0, 1.0),
    )


@pytest.fixture
def quad_params() -> QuadcopterParams:
    return QuadcopterParams(inertia=(0.0075, 0.0075, 0.013), rot_drag=(0.1, 0.1, 0.15))


@pytest.fixture
def unicycle_params() -> UnicycleParams:
    return UnicycleParams(d_v=0.2, d_omega=0.1, target=(1.0, 1.0))


@pytest.fixture
def rigid_params() -> RigidBodyParams:
    return RigidBodyParams(inertia=(1.0, 2.0, 3.0), mass=2.0)


@pytest.fixture
def satellite(satellite_params) -> SatellitePlant:
    return SatellitePlant(satellite_params)


@pytest.fixture
def quadcopter(quad_params) -> QuadcopterPlant:
    return QuadcopterPlant(quad_params)


@pytest.fixture
def unicycle(unicycle_params) -> UnicyclePlant:
    return UnicyclePlant(unicycle_params)


@pytest.fixture
def rigid_body(rigid_params) -> RigidBodyPlant:
    return RigidBodyPlant(rigid_params)


@pytest.fixture
def unicycle_gains() -> EscVsParams:
    return EscVsParams(a=(1e-4, 1e-2), c=(1.0, 6.0), k=5.0, omega=20.0, hpf_gain=1.0)


@pytest.fixture
def write_scenario_file(tmp_path):
    """Write a YAML scenario body to a temporary file and return its path."""

    def _write(body: str, name: str = "scenario.yaml"):
        path = tmp_path / name
        path.write_text(textwrap.dedent(body), encoding="utf-8")
        return path

    return _write


UNICYCLE_YAML = """\
name: short-unicycle
application: unicycle
plant:
  d_v_per_s: 0.2
  d_omega_per_s: 0.1
  target_m: [1.0, 1.0]
controller:
  a: [1.0e-4, 1.0e-2]
  c: [1.0, 6.0]
  k: 5.0
  omega_rad_per_s: 20.0
  hpf_gain_per_s: 1.0
initial:
  velocities: [3.0, 0.0]
  kinematics: [2.0, 2.0, 0.0]
  h: 0.0
t_final_s: 0.5
decimate: 5
"""


@pytest.fixture
def unicycle_yaml() -> str:
    return UNICYCLE_YAML
