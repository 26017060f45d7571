import json
import math
from pathlib import Path

import numpy as np
import pytest

from polariton.cli import compare_golden, main, run_scenario, write_csv
from polariton.config import default_config_text, validate_config
from polariton.errors import ConfigError, PhysicsGuardError
from polariton.numerics import TWO_PI

GOLDEN_DIR = Path(__file__).parent / "golden"


class TestValidateConfig:
    def test_minimal_scenario_gets_defaults(self):
        config = validate_config(default_config_text("reproduce_fig2"))
        assert config.scenario == "reproduce_fig2"
        assert config.system.omega_r / TWO_PI == pytest.approx(8e9)
        assert config.system.g / TWO_PI == pytest.approx(4e8)
        assert config.system.delta == 0.0
        assert config.options["resolution"] == 201
        assert config.options["rates"].kappa == pytest.approx(TWO_PI * 8e3)
        assert config.xi == pytest.approx(config.system.g / 20.0)

    def test_missing_scenario_named(self):
        with pytest.raises(ConfigError, match="scenario"):
            validate_config(json.dumps({"units": {"frequency": "Hz"}}))

    def test_unknown_key_rejected(self):
        raw = json.dumps({"units": {"frequency": "Hz"}, "scenario": "spectrum",
                          "specturm": {}})
        with pytest.raises(ConfigError, match="specturm"):
            validate_config(raw)

    def test_wrong_units_rejected(self):
        raw = json.dumps({"units": {"frequency": "rad/s"}, "scenario": "spectrum"})
        with pytest.raises(ConfigError, match="frequency"):
            validate_config(raw)

    def test_strong_drive_guard_names_assumption(self):
        raw = json.dumps({"units": {"frequency": "Hz"}, "scenario": "synthesize",
                          "synthesize": {"xi_over_g": 0.2}})
        with pytest.raises(PhysicsGuardError, match="Omega1, Omega2"):
            validate_config(raw)

    def test_scenario_mismatch_rejected(self):
        raw = json.dumps({"units": {"frequency": "Hz"}, "scenario": "spectrum"})
        with pytest.raises(ConfigError, match="declares"):
            validate_config(raw, scenario="noise_scan")

    def test_unit_round_trip(self):
        values = {"omega_r_hz": 8.123456789012e9, "omega_a_hz": 8.1e9,
                  "g_hz": 3.99999e8, "n_max": 4}
        raw = json.dumps({"units": {"frequency": "Hz"}, "scenario": "spectrum",
                          "system": values})
        config = validate_config(raw)
        assert config.system.omega_r / TWO_PI == pytest.approx(
            values["omega_r_hz"], rel=1e-12)
        assert config.echo["system"]["omega_r_hz"] == values["omega_r_hz"]

    def test_invalid_json_reports_line(self):
        with pytest.raises(ConfigError, match="line"):
            validate_config("{not json")


class TestScenarios:
    def test_spectrum_csv(self, tmp_path):
        config = validate_config(default_config_text("spectrum"))
        report = run_scenario(config, tmp_path)
        csv_path = tmp_path / "spectrum.csv"
        assert csv_path.exists()
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "# schema: polariton.spectrum.v1"
        assert lines[1] == "n,branch,energy_Hz_over_2pi,alpha_rad"
        assert len(lines) == 2 + 10  # five sectors, two branches
        first = lines[2].split(",")
        assert first[0] == "1" and first[1] == "minus"
        assert float(first[2]) == pytest.approx(7.6e9)
        assert float(first[3]) == pytest.approx(math.pi / 4.0)
        assert report["outputs"][0]["sha256"]

    def test_spectrum_matches_golden(self, tmp_path):
        config = validate_config(default_config_text("spectrum"))
        run_scenario(config, tmp_path)
        comparison = compare_golden(tmp_path / "spectrum.csv",
                                    GOLDEN_DIR / "spectrum.csv", tolerance=1e-6)
        assert comparison.passed, comparison.message

    def test_noise_scan_csv_scaling(self, tmp_path):
        config = validate_config(default_config_text("noise_scan"))
        run_scenario(config, tmp_path)
        lines = (tmp_path / "noise_scan.csv").read_text().splitlines()
        assert lines[1] == ("a_x_Hz_over_2pi,method,shift_minus,shift_plus,"
                            "splitting_correction")
        amplitudes, corrections = [], []
        for line in lines[2:]:
            fields = line.split(",")
            if fields[1] == "closed_form":
                amplitudes.append(float(fields[0]))
                corrections.append(float(fields[4]))
        slope = np.polyfit(np.log(amplitudes), np.log(corrections), 1)[0]
        assert slope == pytest.approx(2.0, abs=0.01)

    def test_synth_drive_fragment(self, tmp_path):
        config = validate_config(default_config_text("synthesize"))
        run_scenario(config, tmp_path)
        document = json.loads((tmp_path / "drive_program.json").read_text())
        fragment = document["drive"]
        assert set(fragment) == {"omega1_hz", "omega2_hz", "Omega1_hz",
                                 "Omega2_hz", "phi_rad"}
        assert fragment["omega1_hz"] == pytest.approx(7.6e9)
        assert fragment["omega2_hz"] == pytest.approx(8.4e9)
        assert fragment["Omega1_hz"] / fragment["Omega2_hz"] == pytest.approx(
            1.0 + math.sqrt(2.0), rel=1e-9)
        assert document["pulse_area_rad"] == pytest.approx(TWO_PI)
        assert document["tau_s"] == pytest.approx(50e-9)

    def test_simulate_effective_gate_report(self, tmp_path):
        raw = json.dumps({"units": {"frequency": "Hz"}, "scenario": "simulate_gate",
                          "simulate_gate": {"level": "effective"}})
        config = validate_config(raw)
        run_scenario(config, tmp_path)
        report = json.loads((tmp_path / "gate_report.json").read_text())
        assert report["level"] == "effective"
        assert report["fidelity"] == pytest.approx(1.0, abs=1e-12)
        assert report["leakage"] == 0.0
        assert report["gate"]["theta"] == pytest.approx(math.pi / 4.0)
        assert report["pulse_area"] == pytest.approx(TWO_PI)

    def test_spectrum_determinism(self, tmp_path):
        config = validate_config(default_config_text("spectrum"))
        run_scenario(config, tmp_path / "a")
        run_scenario(config, tmp_path / "b")
        assert (tmp_path / "a/spectrum.csv").read_bytes() \
            == (tmp_path / "b/spectrum.csv").read_bytes()


class TestMainEntryPoint:
    def test_spectrum_exit_zero(self, tmp_path, capsys):
        assert main(["spectrum", "--out", str(tmp_path)]) == 0
        assert "spectrum.csv" in capsys.readouterr().out

    def test_env_var_out_dir(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("POLARITON_OUT_DIR", str(tmp_path / "from_env"))
        assert main(["spectrum"]) == 0
        assert (tmp_path / "from_env" / "spectrum.csv").exists()

    def test_config_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"units": {"frequency": "Hz"},
                                   "scenario": "spectrum", "bogus": 1}))
        assert main(["spectrum", "--config", str(bad), "--out", str(tmp_path)]) == 2
        assert "config error" in capsys.readouterr().err

    def test_physics_guard_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "loud.json"
        bad.write_text(json.dumps({"units": {"frequency": "Hz"},
                                   "scenario": "synthesize",
                                   "synthesize": {"xi_over_g": 0.2}}))
        assert main(["synth", "--config", str(bad), "--out", str(tmp_path)]) == 3
        assert "physics guard" in capsys.readouterr().err

    def test_numerical_guard_exit_code(self, tmp_path, capsys):
        # a 1 ns step cannot resolve GHz carriers: rejected before stepping
        assert main(["fig2", "--out", str(tmp_path), "--dt", "1e-9"]) == 4
        assert "under-resolution" in capsys.readouterr().err

    def test_fig2_matches_golden_and_endpoint(self, tmp_path):
        assert main(["fig2", "--out", str(tmp_path)]) == 0
        produced = tmp_path / "fig2_fidelity.csv"
        comparison = compare_golden(produced, GOLDEN_DIR / "fig2_fidelity.csv",
                                    tolerance=1e-6)
        assert comparison.passed, comparison.message
        last = produced.read_text().splitlines()[-1].split(",")
        assert 0.992 <= float(last[1]) <= 0.998
        assert float(last[2]) >= 0.995
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["scenario"] == "reproduce_fig2"
        assert report["tool_version"]


class TestCompareGolden:
    def test_identical_files_pass(self, tmp_path):
        rows = [(1, "minus", 7.6e9), (1, "plus", 8.4e9)]
        for name in ("a.csv", "b.csv"):
            write_csv(tmp_path / name, "polariton.test.v1", ["n", "branch", "e"], rows)
        comparison = compare_golden(tmp_path / "a.csv", tmp_path / "b.csv", 1e-9)
        assert comparison.passed

    def test_perturbed_value_fails_with_location(self, tmp_path):
        write_csv(tmp_path / "a.csv", "polariton.test.v1", ["n", "e"],
                  [(1, 7.6e9), (2, 8.4e9)])
        write_csv(tmp_path / "b.csv", "polariton.test.v1", ["n", "e"],
                  [(1, 7.6e9), (2, 8.4e9 + 1.0)])
        comparison = compare_golden(tmp_path / "a.csv", tmp_path / "b.csv", 1e-3)
        assert not comparison.passed
        assert "column e" in comparison.message
        assert "row 1" in comparison.message

    def test_schema_mismatch_fails(self, tmp_path):
        write_csv(tmp_path / "a.csv", "polariton.test.v1", ["n"], [(1,)])
        write_csv(tmp_path / "b.csv", "polariton.test.v2", ["n"], [(1,)])
        comparison = compare_golden(tmp_path / "a.csv", tmp_path / "b.csv", 1e-3)
        assert not comparison.passed
        assert "schema" in comparison.message

    def test_check_subcommand_exit_codes(self, tmp_path, capsys):
        write_csv(tmp_path / "a.csv", "polariton.test.v1", ["n"], [(1.0,)])
        write_csv(tmp_path / "b.csv", "polariton.test.v1", ["n"], [(1.5,)])
        assert main(["check", str(tmp_path / "a.csv"), str(tmp_path / "a.csv")]) == 0
        assert main(["check", str(tmp_path / "a.csv"), str(tmp_path / "b.csv"),
                     "--tolerance", "1e-3"]) == 1
