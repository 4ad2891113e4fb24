"""Declarative scenarios: YAML schema, validation, bundled presets, and plant construction."""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Annotated, ClassVar, Literal, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, model_validator

from src.config import NUMERICS
from src.errors import ScenarioError
from src.models import (
    EscVsParams,
    QuadcopterParams,
    RigidBodyParams,
    SatelliteParams,
    SimState,
    UnicycleParams,
    Vector,
)
from src.plants import Plant, QuadcopterPlant, RigidBodyPlant, SatellitePlant, UnicyclePlant
from src.simulation.runner import default_dt

PRESET_DIR = Path(__file__).parent / "presets"


class InitialConditions(BaseModel):
    """Initial state in the plant's channel order (see each preset for the layout)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    velocities: Vector
    kinematics: Vector
    u_hat: float = 0.0
    h: float | None = None


class ScenarioBase(BaseModel, ABC):
    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    name: str
    description: str = ""
    controller: EscVsParams
    initial: InitialConditions
    t_final: float = Field(gt=0.0, alias="t_final_s")
    dt: float | None = Field(default=None, gt=0.0, alias="dt_s")
    decimate: int = Field(default=1, ge=1)

    plant_cls: ClassVar[type[Plant]]

    @model_validator(mode="after")
    def _consistent(self) -> ScenarioBase:
        plant_cls = type(self).plant_cls
        n = len(plant_cls.velocity_labels)
        m = len(plant_cls.kinematic_labels)
        if self.controller.n != n:
            raise ValueError(f"controller.a/c need {n} entries for {self.application}, got {self.controller.n}")
        if len(self.initial.velocities) != n:
            raise ValueError(f"initial.velocities needs {n} entries {plant_cls.velocity_labels}")
        if len(self.initial.kinematics) != m:
            raise ValueError(f"initial.kinematics needs {m} entries {plant_cls.kinematic_labels}")
        if self.initial.h is not None and self.controller.hpf_gain is None:
            raise ValueError("initial.h is set but controller.hpf_gain_per_s is missing")
        self._check_kinematics()
        return self

    @abstractmethod
    def _check_kinematics(self) -> None:
        """Raise ValueError if the initial kinematic state is unusable for this plant."""

    @abstractmethod
    def build_plant(self) -> Plant:
        """The plant this scenario simulates."""

    def initial_state(self) -> SimState:
        h = self.initial.h
        if self.controller.hpf_enabled and h is None:
            h = 0.0
        return SimState(
            qdot=self.initial.velocities,
            kin=self.initial.kinematics,
            u_hat=self.initial.u_hat,
            h=h,
        )

    def resolved_dt(self) -> float:
        return self.dt if self.dt is not None else default_dt(self.controller)


def _check_quaternion(values: Vector) -> None:
    norm = math.sqrt(sum(v * v for v in values))
    if abs(norm - 1.0) > NUMERICS.scenario_quaternion_tolerance:
        raise ValueError(f"initial attitude quaternion has norm {norm:.6f}; it must be within "
                         f"{NUMERICS.scenario_quaternion_tolerance:g} of 1")


class SatelliteScenario(ScenarioBase):
    application: Literal["satellite"]
    plant: SatelliteParams
    plant_cls: ClassVar[type[Plant]] = SatellitePlant

    def _check_kinematics(self) -> None:
        _check_quaternion(self.initial.kinematics)

    def build_plant(self) -> Plant:
        return SatellitePlant(self.plant)


class QuadcopterScenario(ScenarioBase):
    application: Literal["quadcopter"]
    plant: QuadcopterParams
    plant_cls: ClassVar[type[Plant]] = QuadcopterPlant

    def _check_kinematics(self) -> None:
        pitch = self.initial.kinematics[1]
        if abs(pitch) >= math.pi / 2 - NUMERICS.euler_singularity_margin:
            raise ValueError(f"initial pitch {pitch} rad is inside the Euler singularity margin")

    def build_plant(self) -> Plant:
        return QuadcopterPlant(self.plant)


class UnicycleScenario(ScenarioBase):
    application: Literal["unicycle"]
    plant: UnicycleParams
    plant_cls: ClassVar[type[Plant]] = UnicyclePlant

    def _check_kinematics(self) -> None:
        # any pose is admissible; heading is unbounded
        pass

    def build_plant(self) -> Plant:
        return UnicyclePlant(self.plant)


class RigidBodyScenario(ScenarioBase):
    application: Literal["custom-rigid-body"]
    plant: RigidBodyParams
    plant_cls: ClassVar[type[Plant]] = RigidBodyPlant

    def _check_kinematics(self) -> None:
        _check_quaternion(self.initial.kinematics[:4])

    def build_plant(self) -> Plant:
        return RigidBodyPlant(self.plant)


Scenario = Annotated[
    Union[SatelliteScenario, QuadcopterScenario, UnicycleScenario, RigidBodyScenario],
    Field(discriminator="application"),
]

_SCENARIO_ADAPTER: TypeAdapter[Scenario] = TypeAdapter(Scenario)


def _field_path(loc: tuple) -> str:
    # drop the union tag pydantic inserts as the first location element
    parts = [str(p) for p in loc]
    if parts and parts[0] in ("satellite", "quadcopter", "unicycle", "custom-rigid-body"):
        parts = parts[1:]
    return ".".join(parts)


def parse_scenario(data: object, source: str = "<scenario>") -> Scenario:
    """Validate an already-parsed mapping into a Scenario."""
    if not isinstance(data, dict):
        raise ScenarioError(f"{source}: top level must be a mapping")
    try:
        return _SCENARIO_ADAPTER.validate_python(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = _field_path(first["loc"]) or None
        if first["type"].startswith("union_tag"):
            field = "application"
        details = "; ".join(f"{_field_path(e['loc']) or '<root>'}: {e['msg']}" for e in exc.errors())
        raise ScenarioError(f"{source}: {details}", field=field) from exc


def available_presets() -> list[str]:
    return sorted(p.stem for p in PRESET_DIR.glob("*.yaml"))


def preset_path(name: str) -> Path:
    path = PRESET_DIR / f"{name}.yaml"
    if not path.is_file():
        raise ScenarioError(f"unknown preset '{name}' (available: {', '.join(available_presets())})", field="name")
    return path


def load_scenario(path: str | Path) -> Scenario:
    """Load a scenario from a YAML file, or a bundled preset by name."""
    path = Path(path)
    if not path.exists() and path.suffix == "" and (PRESET_DIR / f"{path.name}.yaml").is_file():
        path = PRESET_DIR / f"{path.name}.yaml"
    text = path.read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise ScenarioError(f"{path}: YAML parse error: {getattr(exc, 'problem', exc)}", line=line) from exc
    return parse_scenario(data, source=str(path))


def scenario_to_dict(scenario: Scenario) -> dict:
    return scenario.model_dump(mode="json", by_alias=True, exclude_none=True)


def dump_scenario(scenario: Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(scenario), sort_keys=False)


def write_scenario(scenario: Scenario, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dump_scenario(scenario), encoding="utf-8")
    return path
