"""Experiment configuration: YAML schema, strict validation, typed access.

Configs are a single YAML document of nested key/value sections.  Validation
is strict: unknown keys anywhere are rejected with the offending path, types
are checked, and command-specific required sections are enforced before any
computation starts (violations are configuration errors, exit code 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Real

import yaml

from .weights import Weight, weight_from_spec

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "COMMANDS"]


class ConfigError(ValueError):
    """Invalid configuration; message carries the offending path."""


_WEIGHT_SCHEMA = {"label": str, "alpha": Real, "beta": Real}

_SCHEMA = {
    "command": str,
    "seed": int,
    "resolution": str,
    "out": str,
    "band": Real,
    "regime": str,
    "space": {"p": Real, "s": Real, "t": Real, "k": int, "weight": _WEIGHT_SCHEMA},
    "gamma": {
        "p": Real, "s0": Real, "s1": Real, "t": Real, "pair_t": Real,
        "weight": _WEIGHT_SCHEMA, "degree": int, "restarts": int,
        "max_sweeps": int, "tol": Real, "kind": str,
    },
    "family": {"mode": str, "degree": int, "count": int, "apex_levels": int,
               "seed": int},
    "symbols": list,
    "symbol_cap": int,
    "bekolle": {"p": Real, "t": Real, "J": int, "weight": _WEIGHT_SCHEMA},
    "bloch": {"sigma": Real},
    "hankel": {"s": Real, "t": Real, "size": int, "weight": _WEIGHT_SCHEMA,
               "dump": bool},
    "cp_check": {"orders": list, "grid": int, "radius": Real},
    "estp": {"cases": list, "radii": list},
}

_SYMBOL_SCHEMA = {"kind": str, "k": int, "depth": int, "gamma": Real,
                  "re": Real, "im": Real, "power": Real, "path": str}

COMMANDS = {
    "bekolle-constant": ("bekolle",),
    "besov-norm": ("space", "symbols"),
    "cb-norm": ("space", "symbols"),
    "bloch-norm": ("bloch", "symbols"),
    "hankel-norm": ("hankel", "symbols"),
    "gamma": ("gamma", "symbols"),
    "equiv-report": ("gamma", "regime", "symbols"),
    "cp-check": (),
    "estp-check": (),
}


def _type_name(expected) -> str:
    return getattr(expected, "__name__", str(expected))


def _validate(node, schema, path: str):
    if isinstance(schema, dict):
        if not isinstance(node, dict):
            raise ConfigError(f"{path or '<root>'}: expected a mapping")
        for key, value in node.items():
            if key not in schema:
                raise ConfigError(f"{path + '.' if path else ''}{key}: unknown key")
            sub = schema[key]
            subpath = f"{path + '.' if path else ''}{key}"
            if isinstance(sub, dict):
                _validate(value, sub, subpath)
            elif sub is list:
                if not isinstance(value, list):
                    raise ConfigError(f"{subpath}: expected a list")
            elif sub is Real:
                if not isinstance(value, Real) or isinstance(value, bool):
                    raise ConfigError(f"{subpath}: expected a number, got {value!r}")
            elif sub is int:
                if not isinstance(value, int) or isinstance(value, bool):
                    raise ConfigError(f"{subpath}: expected an integer, got {value!r}")
            elif not isinstance(value, sub):
                raise ConfigError(
                    f"{subpath}: expected {_type_name(sub)}, got {value!r}")
    else:
        raise ConfigError(f"{path}: malformed schema node")


@dataclass
class ExperimentConfig:
    """Validated configuration with typed accessors and defaults."""

    data: dict = field(default_factory=dict)

    def __post_init__(self):
        _validate(self.data, _SCHEMA, "")
        for i, spec in enumerate(self.data.get("symbols", [])):
            _validate(spec, _SYMBOL_SCHEMA, f"symbols[{i}]")
            if "kind" not in spec:
                raise ConfigError(f"symbols[{i}].kind: required")
        if "regime" in self.data and self.data["regime"] not in (
                "BF", "predualBinf", "BFG"):
            raise ConfigError(
                f"regime: must be one of BF, predualBinf, BFG, got "
                f"{self.data['regime']!r}")
        if "resolution" in self.data and self.data["resolution"] not in (
                "low", "default", "high"):
            raise ConfigError(
                f"resolution: must be low, default or high, got "
                f"{self.data['resolution']!r}")

    def require(self, command: str):
        if command not in COMMANDS:
            raise ConfigError(f"command: unknown command {command!r}")
        for section in COMMANDS[command]:
            if section not in self.data:
                raise ConfigError(f"{section}: required by command {command!r}")

    def get(self, key, default=None):
        return self.data.get(key, default)

    def weight(self, section: str) -> Weight:
        spec = dict(self.data.get(section, {}).get("weight", {"label": "unit"}))
        label = spec.pop("label", "unit")
        try:
            return weight_from_spec(label, **spec)
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"{section}.weight: {exc}") from exc

    @property
    def seed(self) -> int:
        return self.data.get("seed", 11)

    @property
    def resolution(self) -> str:
        return self.data.get("resolution", "default")

    def echo(self) -> str:
        return yaml.safe_dump(self.data, sort_keys=True)


def load_config(path) -> ExperimentConfig:
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("<root>: config must be a mapping")
    return ExperimentConfig(data)
