"""Config file loading.

A config file is a list of dotted ``key = value`` lines::

    rules.interrogation.enabled = false
    rules.content_tampering.action = update
    thresholds.max_auto_stmts = 3
    jobs = 4

Values use TOML syntax (so TOML tables work too), and a value that is not
valid TOML is taken as a bare string.
"""
from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .corpus import Language, Partition
from .detectors import NoiseAction, NoiseCategory, RuleConfig, Thresholds

CONFIG_ENV = "CAT_CONFIG"
FORMATS = ("text", "json", "csv")


class ConfigError(ValueError):
    pass


@dataclass
class CliSettings:
    """CLI-level settings a config file may provide."""

    jobs: int | None = None
    language: Language | None = None
    partition: Partition | None = None
    format: str | None = None


@dataclass
class LoadedConfig:
    rules: RuleConfig = field(default_factory=RuleConfig)
    cli: CliSettings = field(default_factory=CliSettings)


def _flatten(data: Mapping, prefix: str = "") -> dict[str, Any]:
    out = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            out.update(_flatten(value, name + "."))
        else:
            out[name] = value
    return out


def _parse_value(text: str) -> Any:
    try:
        return tomllib.loads(f"v = {text}")["v"]
    except tomllib.TOMLDecodeError:
        return text.strip().strip("\"'")


def parse_config_text(text: str) -> dict[str, Any]:
    """Flatten a config document into ``{dotted.key: value}``."""
    try:
        return _flatten(tomllib.loads(text))
    except tomllib.TOMLDecodeError:
        pass
    out = {}
    for number, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"config line {number}: expected key = value")
        out[key.strip()] = _parse_value(value.strip())
    return out


def _expect(key: str, value: Any, kind: type | tuple) -> Any:
    if isinstance(value, bool) and kind is int:
        raise ConfigError(f"{key}: expected an integer")
    if not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ConfigError(f"{key}: expected {names}, got {value!r}")
    return value


def _str_list(key: str, value: Any) -> tuple[str, ...]:
    if isinstance(value, str):
        value = [v.strip() for v in value.split(",") if v.strip()]
    _expect(key, value, list)
    for item in value:
        _expect(key, item, str)
    return tuple(value)


_THRESHOLD_TYPES = {
    "min_split_subtokens": int,
    "max_auto_stmts": int,
    "codey_line_min": int,
    "nonliteral_ratio": (int, float),
    "underdev_keywords": list,
}


def build_config(values: Mapping[str, Any], base: LoadedConfig | None = None) -> LoadedConfig:
    """Apply flattened config values on top of ``base`` (defaults if None)."""
    base = base or LoadedConfig()
    rules = replace(
        base.rules,
        enabled=dict(base.rules.enabled),
        action_override=dict(base.rules.action_override),
        thresholds=replace(base.rules.thresholds),
    )
    cli = replace(base.cli)
    for key, value in values.items():
        parts = key.split(".")
        try:
            if parts[0] == "rules" and len(parts) == 3:
                category = NoiseCategory(parts[1])
                if parts[2] == "enabled":
                    rules.enabled[category] = _expect(key, value, bool)
                elif parts[2] == "action":
                    rules.action_override[category] = NoiseAction(str(value).lower())
                else:
                    raise KeyError(key)
            elif parts[0] == "thresholds" and len(parts) == 2 and parts[1] in _THRESHOLD_TYPES:
                name = parts[1]
                if name == "underdev_keywords":
                    value = _str_list(key, value)
                else:
                    value = _expect(key, value, _THRESHOLD_TYPES[name])
                    if name == "nonliteral_ratio":
                        value = float(value)
                setattr(rules.thresholds, name, value)
            elif key == "dedup.keep_precedence":
                rules.keep_precedence = tuple(Partition.parse(p) for p in _str_list(key, value))
            elif key == "sentence.abbreviations":
                rules.abbreviations = tuple(a.lower() for a in _str_list(key, value))
            elif key == "sentence.section_markers":
                rules.section_markers = tuple(m.lower() for m in _str_list(key, value))
            elif key == "lexing.java_keywords":
                rules.java_keywords = frozenset(_str_list(key, value))
            elif key == "lexing.python_keywords":
                rules.python_keywords = frozenset(_str_list(key, value))
            elif key == "jobs":
                cli.jobs = _expect(key, value, int)
                if cli.jobs < 1:
                    raise ConfigError("jobs must be >= 1")
            elif key == "language":
                cli.language = Language.parse(value)
            elif key == "partition":
                cli.partition = Partition.parse(value)
            elif key == "format":
                if value not in FORMATS:
                    raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
                cli.format = value
            else:
                raise KeyError(key)
        except KeyError:
            raise ConfigError(f"unknown config key: {key}") from None
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{key}: {exc}") from None
    try:
        rules.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return LoadedConfig(rules, cli)


def load_config(path: str | Path | None = None) -> LoadedConfig:
    """Load ``path``, else the file named by ``CAT_CONFIG``, else defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None
    if path is None:
        return LoadedConfig()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    return build_config(parse_config_text(text))


__all__ = ["ConfigError", "CliSettings", "LoadedConfig", "Thresholds", "build_config", "load_config", "parse_config_text"]
