"""Exception hierarchy shared by the simulator, the analysis layer and the CLI."""

from __future__ import annotations


class EscVsError(Exception):
    """Root of every error raised by this package."""


class ConfigurationError(EscVsError, ValueError):
    """Parameters that cannot produce a valid run (missing HPF gain, coarse dt, bad dimensions)."""


class ScenarioError(ConfigurationError):
    """A scenario file failed to parse or validate."""

    def __init__(self, message: str, *, field: str | None = None, line: int | None = None) -> None:
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class IntegrationDivergedError(EscVsError, ArithmeticError):
    """A Runge-Kutta stage produced a non-finite value."""

    def __init__(self, t: float, component: int) -> None:
        self.t = t
        self.component = component
        super().__init__(f"integration diverged at t={t:.6f} s (state component {component} is not finite)")


class KinematicSingularityError(EscVsError, ArithmeticError):
    """Euler-angle pitch came within the singularity margin of +/- pi/2."""

    def __init__(self, pitch: float, t: float | None = None) -> None:
        self.pitch = pitch
        self.t = t
        when = f" at t={t:.6f} s" if t is not None else ""
        super().__init__(f"Euler pitch {pitch:.6f} rad too close to +/- pi/2{when}")

    def at(self, t: float) -> KinematicSingularityError:
        return KinematicSingularityError(self.pitch, t)


class StateCorruptionError(EscVsError, ValueError):
    """A quaternion drifted off the unit sphere beyond tolerance."""


class NonFiniteEvaluationError(EscVsError, ArithmeticError):
    """A finite-difference evaluation of the drift or objective returned a non-finite value."""
