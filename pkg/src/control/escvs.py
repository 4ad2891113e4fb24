"""Single-perturbation ESC-VS law and its adaptation dynamics.

One scalar estimate u_hat is shared by all n channels through C; the only
oscillatory signal is omega*cos(omega*t), injected through A and demodulated
by the learning channel.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from src.errors import ConfigurationError
from src.models import ControlSample, EscVsParams

logger = logging.getLogger(__name__)


def control_input(params: EscVsParams, u_hat: float, t: float) -> np.ndarray:
    """u = C*u_hat + A*omega*cos(omega*t)."""
    w = params.omega
    return params.c_vec * u_hat + params.a_vec * (w * math.cos(w * t))


def adapt(params: EscVsParams, J: float, t: float) -> float:
    """u_hat_dot = k*J*omega*cos(omega*t)."""
    w = params.omega
    return params.k * J * w * math.cos(w * t)


def adapt_hpf(params: EscVsParams, J: float, h: float, t: float) -> tuple[float, float]:
    """High-pass filtered adaptation: (k*(J - e*h)*omega*cos(omega*t), -e*h + J)."""
    if params.hpf_gain is None:
        raise ConfigurationError("adapt_hpf requires hpf_gain (filter gain e) to be set")
    e = params.hpf_gain
    w = params.omega
    return params.k * (J - e * h) * w * math.cos(w * t), -e * h + J


def control_sample(params: EscVsParams, J: float, u_hat: float, h: float | None, t: float) -> ControlSample:
    """Everything the controller contributes to one closed-loop evaluation."""
    u = control_input(params, u_hat, t)
    if params.hpf_enabled:
        if h is None:
            raise ConfigurationError("HPF enabled but the state carries no filter value h")
        u_hat_dot, h_dot = adapt_hpf(params, J, h, t)
        return ControlSample(u=u, u_hat_dot=u_hat_dot, h_dot=h_dot)
    return ControlSample(u=u, u_hat_dot=adapt(params, J, t))


def lump_gains(physical: np.ndarray, b_diag: np.ndarray) -> np.ndarray:
    """Fold a constant diagonal input matrix into the gains: g_i = g'_i / b_i."""
    physical = np.asarray(physical, dtype=float)
    b_diag = np.asarray(b_diag, dtype=float)
    if physical.shape != b_diag.shape:
        raise ConfigurationError(f"gain and input-matrix diagonals differ in shape {physical.shape} vs {b_diag.shape}")
    if np.any(b_diag == 0.0):
        raise ConfigurationError("input-matrix diagonal entries must be nonzero")
    return physical / b_diag


def gain_ordering_warnings(params: EscVsParams) -> list[str]:
    """Channels where |c_i| < |a_i|; the estimate should dominate the vibrational input."""
    warnings: list[str] = []
    for i, (a, c) in enumerate(zip(params.a, params.c)):
        if abs(c) < abs(a):
            msg = f"channel {i + 1}: |c|={abs(c):g} is smaller than |a|={abs(a):g}"
            logger.warning("gain ordering: %s", msg)
            warnings.append(f"gain ordering: {msg}")
    return warnings
