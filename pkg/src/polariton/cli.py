"""Command-line front end: scenarios in, CSV/JSON artifacts out.

Subcommands
-----------
spectrum     dressed-level table (CSV)
noise-scan   quasi-static noise shifts over an amplitude sweep (CSV)
synth        compile gate angles into a two-tone drive program (JSON)
simulate     run one pulse at a chosen fidelity level (JSON report)
fig2         Hadamard fidelity dynamics with/without decoherence (CSV)
check        compare a produced CSV against a golden copy

Common flags: ``--config`` (JSON document, defaults otherwise), ``--out``
(output directory, default from $POLARITON_OUT_DIR or ./out), ``--dt``
(explicit integrator step in seconds).  Every run writes a ``report.json``
listing the resolved config and a sha256 checksum per artifact.

Exit codes: 0 success, 1 golden comparison failed, 2 config error,
3 physics-guard violation, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import ScenarioConfig, default_config_text, validate_config
from .errors import ConfigError, NumericalError, PhysicsGuardError, PolaritonError
from .holonomy import GateSpec, cyclic_check, simulate_gate, synthesize_pulse
from .jc import dressed_levels
from .lindblad import hadamard_experiment
from .noise import noise_scan
from .numerics import TWO_PI, StepPolicy

EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_PHYSICS = 3
EXIT_NUMERICAL = 4

_SCENARIO_FOR_COMMAND = {
    "spectrum": "spectrum",
    "noise-scan": "noise_scan",
    "synth": "synthesize",
    "simulate": "simulate_gate",
    "fig2": "reproduce_fig2",
}


def _format(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_csv(path: Path, schema: str, header: list[str], rows: list[tuple]) -> None:
    lines = [f"# schema: {schema}", ",".join(header)]
    lines.extend(",".join(_format(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_csv(path: Path) -> tuple[str, list[str], list[list[str]]]:
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("# schema:"):
        raise ConfigError(f"{path}: missing schema line")
    schema = lines[0].removeprefix("# schema:").strip()
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:] if line]
    return schema, header, rows


@dataclass
class ColumnDiff:
    column: str
    max_deviation: float
    worst_row: int


@dataclass
class GoldenComparison:
    passed: bool
    message: str
    diffs: list[ColumnDiff]


def compare_golden(produced: Path, golden: Path, tolerance: float) -> GoldenComparison:
    """Column-wise comparison of two CSV artifacts at an absolute tolerance."""
    schema_p, header_p, rows_p = read_csv(produced)
    schema_g, header_g, rows_g = read_csv(golden)
    if schema_p != schema_g or header_p != header_g:
        return GoldenComparison(
            False, f"schema mismatch: {schema_p}/{header_p} vs {schema_g}/{header_g}", [])
    if len(rows_p) != len(rows_g):
        return GoldenComparison(
            False, f"row count {len(rows_p)} differs from golden {len(rows_g)}", [])
    diffs = []
    passed = True
    for j, column in enumerate(header_p):
        worst, worst_row = 0.0, -1
        for i, (rp, rg) in enumerate(zip(rows_p, rows_g)):
            try:
                deviation = abs(float(rp[j]) - float(rg[j]))
            except ValueError:
                deviation = 0.0 if rp[j] == rg[j] else math.inf
            if deviation > worst:
                worst, worst_row = deviation, i
        diffs.append(ColumnDiff(column, worst, worst_row))
        if worst > tolerance:
            passed = False
    message = "pass" if passed else "; ".join(
        f"column {d.column} deviates {d.max_deviation:.3e} at row {d.worst_row}"
        for d in diffs if d.max_deviation > tolerance)
    return GoldenComparison(passed, message, diffs)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run_scenario(config: ScenarioConfig, out_dir: Path,
                 dt: float | None = None,
                 level: str | None = None) -> dict:
    """Execute one scenario and write its artifacts plus a run report."""
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    artifacts: list[Path] = []
    system = config.system
    options = config.options

    if config.scenario == "spectrum":
        rows = [(lvl.n, lvl.branch, lvl.energy / TWO_PI, lvl.mixing_angle)
                for lvl in dressed_levels(system)]
        path = out_dir / "spectrum.csv"
        write_csv(path, "polariton.spectrum.v1",
                  ["n", "branch", "energy_Hz_over_2pi", "alpha_rad"], rows)
        artifacts.append(path)

    elif config.scenario == "noise_scan":
        scan = noise_scan(system, options["amplitudes"],
                          methods=tuple(options["methods"]), axis=options["axis"])
        rows = [(a / TWO_PI, report.method, report.shift_minus / TWO_PI,
                 report.shift_plus / TWO_PI, report.splitting_correction / TWO_PI)
                for a, report in scan]
        path = out_dir / "noise_scan.csv"
        write_csv(path, "polariton.noise_scan.v1",
                  ["a_x_Hz_over_2pi", "method", "shift_minus", "shift_plus",
                   "splitting_correction"], rows)
        artifacts.append(path)

    elif config.scenario == "synthesize":
        spec = GateSpec(theta=options["theta"], phi=options["phi"])
        program = synthesize_pulse(system, spec, config.xi)
        path = out_dir / "drive_program.json"
        path.write_text(json.dumps({
            "schema": "polariton.drive_program.v1",
            "drive": _drive_fragment(program),
            "tau_s": program.tau,
            "pulse_area_rad": cyclic_check(program).area,
        }, indent=2) + "\n", encoding="utf-8")
        artifacts.append(path)

    elif config.scenario == "simulate_gate":
        spec = GateSpec(theta=options["theta"], phi=options["phi"])
        program = synthesize_pulse(system, spec, config.xi)
        run_level = level or options["level"]
        policy = None
        if dt is not None:
            policy = StepPolicy(dt=dt)
        elif "error_budget" in options:
            policy = StepPolicy(error_budget=options["error_budget"])
        result = simulate_gate(system, program, run_level, policy=policy)
        path = out_dir / "gate_report.json"
        path.write_text(json.dumps({
            "schema": "polariton.gate_report.v1",
            "gate": {"theta": spec.theta, "phi": spec.phi},
            "pulse": {**_drive_fragment(program), "tau_s": program.tau},
            "level": result.level,
            "fidelity": result.fidelity,
            "leakage": result.leakage,
            "pulse_area": cyclic_check(program).area,
        }, indent=2) + "\n", encoding="utf-8")
        artifacts.append(path)

    elif config.scenario == "reproduce_fig2":
        policy = StepPolicy(dt=dt) if dt is not None else StepPolicy()
        with_decoherence, without = hadamard_experiment(
            params=system,
            rates=options["rates"],
            xi=config.xi,
            resolution=options["resolution"],
            policy=policy,
            interaction_frame_fidelity=options["interaction_frame_fidelity"],
        )
        rows = list(zip(with_decoherence.abscissa,
                        with_decoherence.fidelity, without.fidelity))
        path = out_dir / "fig2_fidelity.csv"
        write_csv(path, "polariton.fig2.v1",
                  ["xi_t_over_2pi", "fidelity_with_decoherence", "fidelity_without"],
                  rows)
        artifacts.append(path)

    else:
        raise ConfigError(f"unknown scenario {config.scenario!r}")

    report = {
        "schema": "polariton.report.v1",
        "tool_version": __version__,
        "scenario": config.scenario,
        "config": config.echo,
        "wall_time_s": time.perf_counter() - started,
        "outputs": [{"path": str(p), "sha256": _sha256(p)} for p in artifacts],
    }
    (out_dir / "report.json").write_text(json.dumps(report, indent=2) + "\n",
                                         encoding="utf-8")
    return report


def _drive_fragment(program) -> dict:
    drive = program.drive
    return {
        "omega1_hz": drive.omega1 / TWO_PI,
        "omega2_hz": drive.omega2 / TWO_PI,
        "Omega1_hz": drive.Omega1 / TWO_PI,
        "Omega2_hz": drive.Omega2 / TWO_PI,
        "phi_rad": drive.phi,
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polariton",
        description="Polariton-qubit spectrum, noise robustness and holonomic gate toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None,
                        help="JSON scenario config (defaults used otherwise)")
    common.add_argument("--out", type=Path, default=None,
                        help="output directory (default $POLARITON_OUT_DIR or ./out)")
    common.add_argument("--dt", type=float, default=None,
                        help="explicit integrator step in seconds")

    for command in ("spectrum", "noise-scan", "synth", "fig2"):
        sub.add_parser(command, parents=[common])
    simulate = sub.add_parser("simulate", parents=[common])
    simulate.add_argument("--level", choices=("lab", "interaction", "effective"),
                          default=None, help="fidelity level of the simulation")

    check = sub.add_parser("check")
    check.add_argument("produced", type=Path)
    check.add_argument("golden", type=Path)
    check.add_argument("--tolerance", type=float, default=1e-6)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "check":
            comparison = compare_golden(args.produced, args.golden, args.tolerance)
            print(f"check: {comparison.message}")
            return 0 if comparison.passed else EXIT_CHECK_FAILED

        scenario = _SCENARIO_FOR_COMMAND[args.command]
        if args.config is not None:
            raw = args.config.read_text(encoding="utf-8")
        else:
            raw = default_config_text(scenario)
        config = validate_config(raw, scenario=scenario)
        out_dir = args.out or Path(os.environ.get("POLARITON_OUT_DIR", "out"))
        level = getattr(args, "level", None)
        report = run_scenario(config, out_dir, dt=args.dt, level=level)
        for output in report["outputs"]:
            print(f"wrote {output['path']}  sha256={output['sha256'][:16]}...")
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsGuardError as exc:
        print(f"physics guard: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PolaritonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
