"""Numerical defaults, acceptance thresholds, and environment-driven settings."""

from dotenv import load_dotenv
from pydantic import BaseModel
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()

# --- Applications ---
APPLICATIONS = ("satellite", "quadcopter", "unicycle", "custom-rigid-body")

# --- Bundled presets ---
PRESET_NAMES = ("satellite-table1", "quadcopter-table2", "unicycle-table3")

# --- Sweepable parameters ---
SWEEP_PARAMETERS = ("omega", "k", "a_scale", "c_scale")

# --- Exit codes ---
EXIT_OK = 0
EXIT_USAGE = 2  # argparse convention
EXIT_VALIDATION = 3
EXIT_NUMERIC = 4
EXIT_IO = 5


class NumericsConfig(BaseModel):
    """Every integration, analysis, and acceptance knob in one place."""

    # Step size
    steps_per_period_default: int = 200  # dt = (2*pi/omega) / 200
    steps_per_period_min: int = 20

    # Quaternion handling
    quaternion_tolerance: float = 1e-6        # kinematics precondition
    quaternion_norm_invariant: float = 1e-9   # after renormalization
    scenario_quaternion_tolerance: float = 1e-3  # preset satellite Q(0) has norm 0.99999

    # Euler singularity guard, |theta| < pi/2 - margin
    euler_singularity_margin: float = 0.01
    euler_warning_factor: float = 5.0

    # Metrics
    final_window_fraction: float = 0.10

    # Averaging
    fd_step: float = 1e-5
    averaged_steps_per_period: int = 20  # averaged field is omega-free and smooth
    lyapunov_tolerance: float = 1e-6
    lyapunov_window_cap: float = 0.05  # fraction of t_final
    compare_omega_factors: tuple[float, ...] = (1.0, 2.0, 4.0)
    compare_horizon_s: float = 10.0  # default compare-averaged run length, capped by t_final

    # Acceptance thresholds (regression values for validate.py)
    j_ratio_max: float = 0.05
    q4_min: float = 0.95
    quat_vector_max: float = 0.1
    euler_angle_max: float = 0.05
    position_tolerance: float = 0.15
    closeness_ratio_low: float = 0.3
    closeness_ratio_high: float = 0.8
    perturbation_mean_max: float = 1e-10


NUMERICS = NumericsConfig()


class Settings(BaseSettings):
    """Process-level settings; ESCVS_OUTPUT_DIR overrides where artifacts are written."""

    model_config = SettingsConfigDict(env_prefix="ESCVS_", env_file=".env", extra="ignore")

    output_dir: str = "results"
    log_level: str = "INFO"


def get_settings() -> Settings:
    return Settings()
