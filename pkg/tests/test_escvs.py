"""Tests for the ESC-VS law, its adaptation dynamics and gain handling."""

from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.analysis.verification import perturbation_period_mean
from src.control.escvs import (
    adapt,
    adapt_hpf,
    control_input,
    control_sample,
    gain_ordering_warnings,
    lump_gains,
)
from src.errors import ConfigurationError
from src.models import EscVsParams


@pytest.fixture
def params() -> EscVsParams:
    return EscVsParams(a=(1.0, 2.0), c=(3.0, -4.0), k=2.0, omega=2.0)


class TestEscVsParams:
    def test_aliases_and_names_both_accepted(self):
        by_alias = EscVsParams.model_validate({"a": [1.0], "c": [2.0], "k": 1.0, "omega_rad_per_s": 5.0})
        by_name = EscVsParams(a=(1.0,), c=(2.0,), k=1.0, omega=5.0)
        assert by_alias == by_name
        assert by_alias.period == pytest.approx(2 * math.pi / 5.0)

    @pytest.mark.parametrize("omega", [0.0, -1.0])
    def test_omega_must_be_positive(self, omega):
        with pytest.raises(ValidationError, match="omega"):
            EscVsParams(a=(1.0,), c=(1.0,), k=1.0, omega=omega)

    def test_k_must_be_non_negative(self):
        with pytest.raises(ValidationError):
            EscVsParams(a=(1.0,), c=(1.0,), k=-0.1, omega=1.0)

    def test_mismatched_lengths(self):
        with pytest.raises(ValidationError, match="same length"):
            EscVsParams(a=(1.0, 2.0), c=(1.0,), k=1.0, omega=1.0)

    def test_empty_gains(self):
        with pytest.raises(ValidationError, match="must not be empty"):
            EscVsParams(a=(), c=(), k=1.0, omega=1.0)

    def test_non_finite_gain(self):
        with pytest.raises(ValidationError, match="finite"):
            EscVsParams(a=(math.inf,), c=(1.0,), k=1.0, omega=1.0)

    def test_hpf_gain_must_be_positive(self):
        with pytest.raises(ValidationError):
            EscVsParams(a=(1.0,), c=(1.0,), k=1.0, omega=1.0, hpf_gain=0.0)

    def test_updated_revalidates(self, params):
        faster = params.updated(omega=4.0)
        assert faster.omega == 4.0
        assert faster.a == params.a
        with pytest.raises(ValidationError):
            params.updated(omega=0.0)

    def test_signed_gains_allowed(self):
        p = EscVsParams(a=(-0.1, 0.1), c=(-810.0, 4.0), k=0.5, omega=30.0)
        np.testing.assert_array_equal(p.c_vec, [-810.0, 4.0])


class TestControlInput:
    def test_at_time_zero(self, params):
        np.testing.assert_allclose(control_input(params, 0.5, 0.0), [3.5, 2.0])

    def test_quarter_period_leaves_estimate_term(self, params):
        t = math.pi / (2 * params.omega)
        np.testing.assert_allclose(control_input(params, 0.5, t), [1.5, -2.0], atol=1e-12)

    def test_zero_estimate_is_pure_vibration(self, params):
        u = control_input(params, 0.0, 0.3)
        np.testing.assert_allclose(u, params.a_vec * params.omega * math.cos(params.omega * 0.3))


class TestAdaptation:
    def test_adapt(self, params):
        assert adapt(params, 1.5, 0.0) == pytest.approx(2.0 * 1.5 * 2.0)

    def test_adapt_is_linear_in_k(self, params):
        doubled = params.updated(k=2 * params.k)
        assert adapt(doubled, 0.7, 0.2) == pytest.approx(2 * adapt(params, 0.7, 0.2))

    def test_adapt_hpf(self):
        p = EscVsParams(a=(1.0,), c=(1.0,), k=2.0, omega=3.0, hpf_gain=0.5)
        u_hat_dot, h_dot = adapt_hpf(p, 1.0, 0.4, 0.0)
        assert u_hat_dot == pytest.approx(4.8)
        assert h_dot == pytest.approx(0.8)

    def test_adapt_hpf_requires_gain(self, params):
        with pytest.raises(ConfigurationError, match="hpf_gain"):
            adapt_hpf(params, 1.0, 0.0, 0.0)

    def test_filter_steady_state_stops_learning(self):
        p = EscVsParams(a=(1.0,), c=(1.0,), k=2.0, omega=3.0, hpf_gain=0.5)
        # h = J / e is the filter's fixed point
        u_hat_dot, h_dot = adapt_hpf(p, 1.0, 2.0, 0.1)
        assert u_hat_dot == pytest.approx(0.0)
        assert h_dot == pytest.approx(0.0)


class TestControlSample:
    def test_without_filter(self, params):
        sample = control_sample(params, J=1.0, u_hat=0.5, h=None, t=0.0)
        np.testing.assert_allclose(sample.u, [3.5, 2.0])
        assert sample.u_hat_dot == pytest.approx(4.0)
        assert sample.h_dot is None

    def test_filter_needs_state(self, unicycle_gains):
        with pytest.raises(ConfigurationError, match="filter value"):
            control_sample(unicycle_gains, J=1.0, u_hat=0.0, h=None, t=0.0)

    def test_with_filter(self, unicycle_gains):
        sample = control_sample(unicycle_gains, J=2.0, u_hat=0.0, h=0.0, t=0.0)
        assert sample.u_hat_dot == pytest.approx(5.0 * 2.0 * 20.0)
        assert sample.h_dot == pytest.approx(2.0)


class TestGains:
    def test_lump_gains(self):
        np.testing.assert_allclose(lump_gains([2.0, 4.0], [0.5, 2.0]), [4.0, 2.0])

    def test_lump_gains_rejects_zero_entry(self):
        with pytest.raises(ConfigurationError, match="nonzero"):
            lump_gains([1.0, 1.0], [1.0, 0.0])

    def test_lump_gains_shape_mismatch(self):
        with pytest.raises(ConfigurationError, match="shape"):
            lump_gains([1.0, 1.0], [1.0])

    def test_gain_ordering(self):
        p = EscVsParams(a=(0.5, -3.0), c=(1.0, 2.0), k=1.0, omega=1.0)
        warnings = gain_ordering_warnings(p)
        assert len(warnings) == 1
        assert "channel 2" in warnings[0]

    def test_gain_ordering_uses_magnitudes(self):
        p = EscVsParams(a=(0.1,), c=(-810.0,), k=1.0, omega=1.0)
        assert gain_ordering_warnings(p) == []


class TestPerturbationMean:
    def test_zero_mean_over_one_period(self, unicycle_gains):
        mean = perturbation_period_mean(unicycle_gains, J=2.0)
        assert mean.shape == (3,)
        assert np.max(np.abs(mean)) <= 1e-10
