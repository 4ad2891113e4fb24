"""End-to-end tests of the escvs command line."""

from __future__ import annotations

import json

import pytest
import yaml

from src.config import EXIT_IO, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION
from src.main import main
from src.scenarios import load_scenario, scenario_to_dict


@pytest.fixture
def scenario_file(write_scenario_file, unicycle_yaml):
    return str(write_scenario_file(unicycle_yaml))


class TestPresetsCommand:
    def test_list(self):
        assert main(["presets", "list"]) == EXIT_OK

    def test_show(self):
        assert main(["presets", "show", "satellite-table1"]) == EXIT_OK

    def test_show_needs_name(self):
        assert main(["presets", "show"]) == EXIT_VALIDATION

    def test_show_unknown(self):
        assert main(["presets", "show", "bicycle"]) == EXIT_VALIDATION


class TestRunCommand:
    def test_writes_trajectory_and_summary(self, scenario_file, tmp_path):
        out = tmp_path / "results"
        assert main(["run", scenario_file, "--out", str(out)]) == EXIT_OK
        assert (out / "short-unicycle_trajectory.csv").is_file()
        summary = json.loads((out / "short-unicycle_summary.json").read_text())
        assert summary["application"] == "unicycle"
        assert summary["final_time"] == pytest.approx(0.5, abs=1e-12)

    def test_output_dir_from_environment(self, scenario_file, tmp_path, monkeypatch):
        monkeypatch.setenv("ESCVS_OUTPUT_DIR", str(tmp_path / "env-out"))
        assert main(["run", scenario_file, "--t-final", "0.1"]) == EXIT_OK
        assert (tmp_path / "env-out" / "short-unicycle_trajectory.csv").is_file()

    def test_invalid_scenario(self, write_scenario_file, unicycle_yaml, tmp_path):
        path = write_scenario_file(unicycle_yaml.replace("omega_rad_per_s: 20.0", "omega_rad_per_s: 0.0"))
        assert main(["run", str(path), "--out", str(tmp_path)]) == EXIT_VALIDATION

    def test_coarse_dt(self, scenario_file, tmp_path):
        assert main(["run", scenario_file, "--dt", "0.1", "--out", str(tmp_path)]) == EXIT_VALIDATION

    def test_missing_file(self, tmp_path):
        assert main(["run", str(tmp_path / "absent.yaml"), "--out", str(tmp_path)]) == EXIT_IO

    def test_euler_singularity(self, tmp_path):
        data = scenario_to_dict(load_scenario("quadcopter-table2"))
        data["initial"]["kinematics"] = [0.0, 1.56, 0.0]
        data["t_final_s"] = 1.0
        path = tmp_path / "steep.yaml"
        path.write_text(yaml.safe_dump(data), encoding="utf-8")
        assert main(["run", str(path), "--out", str(tmp_path)]) == EXIT_NUMERIC


class TestSweepCommand:
    def test_sweep_k(self, scenario_file, tmp_path):
        code = main(["sweep", scenario_file, "--param", "k", "--values", "0,5", "--t-final", "0.2",
                     "--out", str(tmp_path)])
        assert code == EXIT_OK
        lines = (tmp_path / "short-unicycle_sweep_k.csv").read_text().splitlines()
        assert len(lines) == 3

    @pytest.mark.parametrize("values", ["", " , ", "1,two"])
    def test_bad_values_are_usage_errors(self, scenario_file, values):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", scenario_file, "--param", "k", "--values", values])
        assert exc.value.code == EXIT_USAGE

    def test_unknown_parameter_is_usage_error(self, scenario_file):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", scenario_file, "--param", "mass", "--values", "1"])
        assert exc.value.code == EXIT_USAGE


class TestCompareAveragedCommand:
    def test_writes_paired_trajectories(self, scenario_file, tmp_path):
        code = main(["compare-averaged", scenario_file, "--omegas", "20,40,80", "--t-final", "0.2",
                     "--out", str(tmp_path)])
        assert code == EXIT_OK
        assert (tmp_path / "short-unicycle_omega20_full.csv").is_file()
        assert (tmp_path / "short-unicycle_omega80_averaged.csv").is_file()
        report = json.loads((tmp_path / "short-unicycle_closeness.json").read_text())
        assert report["omegas"] == [20.0, 40.0, 80.0]
        assert len(report["decay_ratios"]) == 2

    def test_too_few_frequencies(self, scenario_file, tmp_path):
        code = main(["compare-averaged", scenario_file, "--omegas", "20,40", "--out", str(tmp_path)])
        assert code == EXIT_VALIDATION


def test_no_command_prints_help():
    assert main([]) == EXIT_USAGE
