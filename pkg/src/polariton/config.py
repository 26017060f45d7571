"""Scenario configuration: JSON schema, defaults, unit normalization.

Configs are JSON documents with an explicit units header.  All frequency
fields carry an ``_hz`` suffix and hold plain cycles-per-second values;
the 2 pi conversion to internal angular frequencies happens exactly once,
here.  Every scenario default is pinned to the benchmark parameter set
(resonant system at 8 GHz, g = omega_r/20, xi = g/20, common 8 kHz rates),
so a bare ``fig2`` invocation runs the headline experiment.

Unknown keys are rejected, and dimensionally valid but physically
inconsistent requests (for example a drive amplitude that breaks the
g >> Omega reduction) fail with a guard error naming the assumption.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from .errors import ConfigError, PhysicsGuardError
from .jc import SystemParams
from .lindblad import DecoherenceRates
from .numerics import TWO_PI

SCENARIOS = ("spectrum", "noise_scan", "synthesize", "simulate_gate", "reproduce_fig2")

DEFAULT_OMEGA_R_HZ = 8.0e9
DEFAULT_G_HZ = DEFAULT_OMEGA_R_HZ / 20.0
DEFAULT_XI_OVER_G = 1.0 / 20.0
DEFAULT_RATE_HZ = 8.0e3
DEFAULT_RESOLUTION = 201

_POSITIVE = {"type": "number", "exclusiveMinimum": 0.0}
_GATE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "theta_rad": {"type": "number", "minimum": 0.0, "maximum": math.pi},
        "phi_rad": {"type": "number", "minimum": 0.0, "exclusiveMaximum": TWO_PI},
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["units", "scenario"],
    "properties": {
        "schema_version": {"const": 1},
        "units": {
            "type": "object",
            "additionalProperties": False,
            "required": ["frequency"],
            "properties": {
                # all *_hz fields are omega / 2 pi; internals are rad/s
                "frequency": {"const": "Hz"},
            },
        },
        "scenario": {"enum": list(SCENARIOS)},
        "system": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "omega_r_hz": _POSITIVE,
                "omega_a_hz": _POSITIVE,
                "g_hz": _POSITIVE,
                "n_max": {"type": "integer", "minimum": 2},
            },
        },
        "spectrum": {
            "type": "object",
            "additionalProperties": False,
            "properties": {},
        },
        "noise_scan": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "amplitudes_hz": {
                    "type": "array", "minItems": 1,
                    "items": {"type": "number", "minimum": 0.0},
                },
                "methods": {
                    "type": "array", "minItems": 1,
                    "items": {"enum": ["series", "closed_form", "approx", "oracle"]},
                },
                "axis": {"enum": ["x", "z"]},
            },
        },
        "synthesize": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "gate": _GATE_SCHEMA,
                "xi_over_g": _POSITIVE,
            },
        },
        "simulate_gate": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "gate": _GATE_SCHEMA,
                "xi_over_g": _POSITIVE,
                "level": {"enum": ["lab", "interaction", "effective"]},
                "error_budget": _POSITIVE,
            },
        },
        "reproduce_fig2": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "resolution": {"type": "integer", "minimum": 2},
                "xi_over_g": _POSITIVE,
                "rates": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "kappa_hz": {"type": "number", "minimum": 0.0},
                        "gamma1_hz": {"type": "number", "minimum": 0.0},
                        "gamma2_hz": {"type": "number", "minimum": 0.0},
                    },
                },
                "interaction_frame_fidelity": {"type": "boolean"},
            },
        },
    },
}

DEFAULT_CONFIG: dict[str, Any] = {
    "schema_version": 1,
    "units": {"frequency": "Hz"},
    "system": {
        "omega_r_hz": DEFAULT_OMEGA_R_HZ,
        "omega_a_hz": DEFAULT_OMEGA_R_HZ,
        "g_hz": DEFAULT_G_HZ,
        "n_max": 5,
    },
    "spectrum": {},
    "noise_scan": {
        "amplitudes_hz": [1e6, 2e6, 5e6, 10e6, 20e6],
        "methods": ["series", "closed_form", "approx", "oracle"],
        "axis": "x",
    },
    "synthesize": {
        "gate": {"theta_rad": math.pi / 4.0, "phi_rad": 0.0},
        "xi_over_g": DEFAULT_XI_OVER_G,
    },
    "simulate_gate": {
        "gate": {"theta_rad": math.pi / 4.0, "phi_rad": 0.0},
        "xi_over_g": DEFAULT_XI_OVER_G,
        "level": "interaction",
    },
    "reproduce_fig2": {
        "resolution": DEFAULT_RESOLUTION,
        "xi_over_g": DEFAULT_XI_OVER_G,
        "rates": {
            "kappa_hz": DEFAULT_RATE_HZ,
            "gamma1_hz": DEFAULT_RATE_HZ,
            "gamma2_hz": DEFAULT_RATE_HZ,
        },
        "interaction_frame_fidelity": True,
    },
}


def _merge_defaults(defaults: dict, overrides: dict) -> dict:
    merged = dict(defaults)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge_defaults(merged[key], value)
        else:
            merged[key] = value
    return merged


@dataclass(frozen=True)
class ScenarioConfig:
    """A validated, fully-resolved scenario: system in rad/s plus options."""

    scenario: str
    system: SystemParams
    options: dict[str, Any]
    echo: dict[str, Any] = field(repr=False)

    @property
    def xi(self) -> float:
        return self.options["xi_over_g"] * self.system.g


def validate_config(raw_text: str, scenario: str | None = None) -> ScenarioConfig:
    """Parse, schema-check and normalize a config document.

    ``scenario`` (when given, e.g. from a CLI subcommand) must agree with
    any scenario named inside the document; a document without one adopts
    it.  Raises :class:`ConfigError` with a field diagnostic on schema
    violations and lets physics guards propagate from the domain types.
    """
    try:
        document = json.loads(raw_text) if raw_text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(document, dict):
        raise ConfigError("config must be a JSON object")
    if scenario is not None:
        declared = document.get("scenario")
        if declared is not None and declared != scenario:
            raise ConfigError(
                f"config declares scenario {declared!r} but {scenario!r} was requested")
        document = {**document, "scenario": scenario}
    if "scenario" not in document:
        raise ConfigError("missing required field: scenario")
    merged = _merge_defaults(DEFAULT_CONFIG, document)
    try:
        jsonschema.validate(merged, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config field {exc.json_path}: {exc.message}") from exc

    sys_block = merged["system"]
    system = SystemParams(
        omega_a=TWO_PI * sys_block["omega_a_hz"],
        omega_r=TWO_PI * sys_block["omega_r_hz"],
        g=TWO_PI * sys_block["g_hz"],
        n_max=sys_block["n_max"],
    )
    name = merged["scenario"]
    options = _normalize_options(name, merged[name])
    echo = {key: merged[key] for key in
            ("schema_version", "units", "system", "scenario", name)}
    return ScenarioConfig(scenario=name, system=system, options=options, echo=echo)


def _normalize_options(name: str, block: dict[str, Any]) -> dict[str, Any]:
    """Convert a scenario block to internal units and types."""
    options = dict(block)
    if "xi_over_g" in block and block["xi_over_g"] > 0.1:
        raise PhysicsGuardError(
            "drive too strong: the two-step rotating-wave reduction needs "
            f"g >> (Omega1, Omega2), so xi_over_g <= 0.1; got {block['xi_over_g']}")
    if name == "noise_scan":
        options["amplitudes"] = [TWO_PI * a for a in block["amplitudes_hz"]]
    if name in ("synthesize", "simulate_gate"):
        gate = block["gate"]
        options["theta"] = gate["theta_rad"]
        options["phi"] = gate["phi_rad"]
    if name == "reproduce_fig2":
        rates = block["rates"]
        options["rates"] = DecoherenceRates(
            kappa=TWO_PI * rates["kappa_hz"],
            gamma1=TWO_PI * rates["gamma1_hz"],
            gamma2=TWO_PI * rates["gamma2_hz"],
        )
    return options


def default_config_text(scenario: str) -> str:
    """A minimal config document selecting one scenario with all defaults."""
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}")
    return json.dumps({"units": {"frequency": "Hz"}, "scenario": scenario})
