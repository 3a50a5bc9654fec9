"""Run configuration: JSON file schema and validation.

The config is a single JSON document validated against a strict schema
(unknown keys rejected) before any computation.  Violated invariants are
reported with the offending JSON path and the invariant by name.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from .errors import ConfigError
from .model import ShellPotential, UnitSystem

__all__ = ["RunConfig", "load_config", "CONFIG_SCHEMA"]

_NUMBER = {"type": "number"}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

_TEST_FUNCTION_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["form"],
    "properties": {
        "form": {"enum": ["exp_decay", "gaussian", "smooth_bump"]},
        "rate": _POSITIVE,
        "width": _POSITIVE,
        "r_max": _POSITIVE,
        "amplitude": _NUMBER,
        "coeffs": {"type": "array", "items": _NUMBER, "minItems": 1},
    },
}

_REGION_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["re_min", "re_max", "im_min", "im_max"],
    "properties": {
        "re_min": _NUMBER, "re_max": _NUMBER,
        "im_min": _NUMBER, "im_max": _NUMBER,
    },
}

_POINT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["re"],
    "properties": {"re": _NUMBER, "im": _NUMBER},
}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["potential"],
    "properties": {
        "potential": {
            "type": "object",
            "additionalProperties": False,
            "required": ["a", "b", "v0"],
            "properties": {"a": _POSITIVE, "b": _POSITIVE, "v0": _NUMBER},
        },
        "units": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"hbar": _POSITIVE, "mass": _POSITIVE},
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "format": {"enum": ["json", "csv"]},
                "path": {"type": "string"},
                "timestamp": {"type": "boolean"},
            },
        },
        "which": {"enum": ["plus", "minus", "both"]},
        "kind": {"enum": ["sw", "plus", "minus"]},
        "region": _REGION_SCHEMA,
        "axis_margin": _POSITIVE,
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "e_min": _POSITIVE,
                "e_max": _POSITIVE,
                "n": {"type": "integer", "minimum": 1},
                "energies": {"type": "array", "items": _POSITIVE, "minItems": 1},
            },
        },
        "test_function": _TEST_FUNCTION_SCHEMA,
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "transform": _POSITIVE,
                "parseval": _POSITIVE,
                "continuation": _POSITIVE,
            },
        },
        "points": {"type": "array", "items": _POINT_SCHEMA, "minItems": 1},
        "radii": {"type": "array", "items": _POSITIVE, "minItems": 1},
        "ray_angles": {"type": "array", "items": _NUMBER, "minItems": 1},
        "time": _NUMBER,
        "input_path": {"type": "string"},
        "hardy": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "case": {"enum": ["pole_below", "pole_above", "poles_both"]},
                "samples_path": {"type": "string"},
                "e_max": _POSITIVE,
                "n": {"type": "integer", "minimum": 1024},
                "threshold": {"type": "number", "exclusiveMinimum": 0,
                              "exclusiveMaximum": 0.5},
            },
        },
        "gamow": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "resonance": _POINT_SCHEMA,
                "search_region": _REGION_SCHEMA,
                "r_limits": {"type": "array", "items": _POSITIVE, "minItems": 3},
            },
        },
        "battery": {
            "type": "array",
            "items": {"enum": [
                "free_particle_identity", "ode_residual", "jost_symmetries",
                "quadrant_census", "parseval", "free_transform_closed_form",
                "non_hardy_blowup", "arc_growth", "gamow_dichotomy",
                "hardy_classifier",
            ]},
        },
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration."""

    potential: ShellPotential
    output_format: str = "json"
    output_path: str | None = None
    timestamp: bool = False
    raw: dict = field(default_factory=dict, compare=False)

    def block(self, name: str, default: Any = None) -> Any:
        return self.raw.get(name, default)


def _validate(doc: dict) -> None:
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = "$" + "".join(
            f"[{p!r}]" if isinstance(p, str) else f"[{p}]" for p in e.absolute_path
        )
        raise ConfigError(f"config schema violation at {path}: {e.message}")


def parse_config(doc: dict) -> RunConfig:
    """Validate a parsed JSON document and build the RunConfig."""
    _validate(doc)
    units_doc = doc.get("units", {})
    units = UnitSystem(
        hbar=float(units_doc.get("hbar", 1.0)),
        mass=float(units_doc.get("mass", 0.5)),
    )
    p = doc["potential"]
    try:
        pot = ShellPotential(a=float(p["a"]), b=float(p["b"]), v0=float(p["v0"]),
                             units=units)
    except ValueError as exc:
        raise ConfigError(f"config invariant violated at $['potential']: {exc}") from exc
    out = doc.get("output", {})
    return RunConfig(
        potential=pot,
        output_format=out.get("format", "json"),
        output_path=out.get("path"),
        timestamp=bool(out.get("timestamp", False)),
        raw=doc,
    )


def load_config(path: str) -> RunConfig:
    """Read, parse, and validate a JSON config file.

    Syntax errors are reported with their line and column.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config is not valid JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    return parse_config(doc)
