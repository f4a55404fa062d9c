"""Scenario configuration: YAML documents with a published JSON Schema.

Reports embed the canonical config hash and base seed so every artifact can
be regenerated exactly.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

import jsonschema
import yaml

from .errors import ConfigurationError

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "profile", "universe_size", "seed"],
    "properties": {
        "version": {"const": 1},
        "profile": {"enum": ["chrome", "firefox", "edge"]},
        "universe_size": {"type": "integer", "minimum": 2},
        "seed": {"type": "integer", "minimum": 0},
        "n": {"type": "integer", "minimum": 1},
        "p_genuine": {"type": "number", "minimum": 0, "maximum": 1},
        "attention": {"enum": ["full", "casual"]},
        "fullscreen_fidelity": {"enum": ["realistic", "crayon"]},
        "policies": {
            "type": "array",
            "minItems": 1,
            "items": {
                "enum": [
                    "oblivious",
                    "padlock_checker",
                    "cert_inspector",
                    "warning_sensitive",
                    "secret_checker",
                ]
            },
        },
        "strategies": {
            "type": "array",
            "minItems": 1,
            "items": {
                "enum": [
                    "plain_phish_page",
                    "fake_dialog_div",
                    "undecorated_popup",
                    "fullscreen_counterfeit",
                    "cookie_as_password",
                    "cert_bearing_mallory",
                    "secret_thief",
                ]
            },
        },
        "policy": {"type": "string"},
        "strategy": {"type": "string"},
        "payoffs": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                name: {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["user", "attacker"],
                    "properties": {
                        "user": {"type": "number"},
                        "attacker": {"type": "number"},
                    },
                }
                for name in (
                    "credentials_to_mallory",
                    "credentials_to_bob",
                    "backaway_from_bob",
                    "backaway_from_mallory",
                )
            },
        },
    },
}

DEFAULTS = {
    "n": 1000,
    "p_genuine": 0.5,
    "attention": "full",
    "fullscreen_fidelity": "realistic",
    "policies": [
        "oblivious",
        "padlock_checker",
        "cert_inspector",
        "warning_sensitive",
        "secret_checker",
    ],
    "strategies": [
        "plain_phish_page",
        "fake_dialog_div",
        "undecorated_popup",
        "fullscreen_counterfeit",
        "cookie_as_password",
        "cert_bearing_mallory",
        "secret_thief",
    ],
    "policy": "secret_checker",
    "strategy": "fake_dialog_div",
}


def validate_scenario(raw: dict) -> list:
    """Return schema diagnostics (empty when valid), each with a JSON path."""
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    return [
        f"{'/'.join(str(p) for p in error.absolute_path) or '<root>'}: {error.message}"
        for error in sorted(validator.iter_errors(raw), key=str)
    ]


def load_scenario(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        raw = yaml.safe_load(handle)
    if not isinstance(raw, dict):
        raise ConfigurationError(f"{path}: scenario config must be a mapping")
    diagnostics = validate_scenario(raw)
    if diagnostics:
        raise ConfigurationError(f"{path}: " + "; ".join(diagnostics))
    merged = dict(DEFAULTS)
    merged.update(raw)
    return merged


def default_scenario() -> dict:
    with resources.files("phishgame.data").joinpath("default_scenario.yaml").open() as handle:
        raw = yaml.safe_load(handle)
    merged = dict(DEFAULTS)
    merged.update(raw)
    return merged


def config_hash(scenario: dict) -> str:
    canonical = json.dumps(scenario, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
