"""File-based configuration: run configs and slice request documents.

Both are flat ``key = value`` text with optional ``[section]`` headers.
A run config may carry ``[env]``, ``[train]`` and ``[eval]`` sections;
every key is optional and defaults reproduce the reference training run.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import env as envmod
from .agent import TrainConfig
from .analysis import DEFAULT_EVAL_INIT
from .controller import SliceRequest
from .env import EnvConfig


class ConfigError(Exception):
    """Unreadable or invalid configuration input."""


_ENV_FIELDS = {
    "init_low": float, "init_high": float, "action_low": float, "action_high": float,
    "cap": float, "rel_tol": float, "abs_tol": float, "degenerate_eps": float,
}
_TRAIN_FIELDS = {
    "n_skills": int, "episodes": int, "learning_rate": float, "gamma": float,
    "alpha": float, "tau": float, "batch_size": int, "buffer_capacity": int,
    "updates_per_step": int, "warmup_transitions": int, "seed": int, "log_q_floor": float,
}


@dataclass
class RunConfig:
    env: EnvConfig = field(default_factory=EnvConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    eval_init_state: np.ndarray = field(default_factory=lambda: np.array(DEFAULT_EVAL_INIT))


def parse_vector(text: str) -> np.ndarray:
    """Parse "a,b,c,d" into a validated 4-component allocation."""
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(f"expected 4 comma-separated numbers, got {text!r}") from exc
    try:
        return envmod.validate_allocation(values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _read_ini(path, default_section: str) -> configparser.ConfigParser:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    text = path.read_text()
    stripped = text.lstrip()
    if stripped and not stripped.startswith("["):
        text = f"[{default_section}]\n{text}"
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    return parser


def _coerce_section(parser, section: str, fields: dict, path) -> dict:
    if not parser.has_section(section):
        return {}
    kwargs = {}
    for key, raw in parser.items(section):
        if key not in fields:
            raise ConfigError(f"{path}: unknown key {key!r} in [{section}]")
        try:
            kwargs[key] = fields[key](raw)
        except ValueError as exc:
            raise ConfigError(f"{path}: bad value for {key!r}: {raw!r}") from exc
    return kwargs


def load_run_config(path) -> RunConfig:
    parser = _read_ini(path, default_section="train")
    known = {"env", "train", "eval"}
    extra = set(parser.sections()) - known
    if extra:
        raise ConfigError(f"{path}: unknown sections {sorted(extra)}")
    try:
        env_config = EnvConfig(**_coerce_section(parser, "env", _ENV_FIELDS, path))
        train_config = TrainConfig(**_coerce_section(parser, "train", _TRAIN_FIELDS, path))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    run = RunConfig(env=env_config, train=train_config)
    if parser.has_section("eval"):
        for key, raw in parser.items("eval"):
            if key != "init_state":
                raise ConfigError(f"{path}: unknown key {key!r} in [eval]")
            run.eval_init_state = parse_vector(raw)
    return run


def load_request(path) -> SliceRequest:
    """Load a slice request: service_type, minimum, optional maximum / pool_capacity."""
    parser = _read_ini(path, default_section="request")
    sections = parser.sections()
    if sections != ["request"]:
        raise ConfigError(f"{path}: expected a single [request] section, got {sections}")
    items = dict(parser.items("request"))
    known = {"service_type", "minimum", "maximum", "pool_capacity"}
    extra = set(items) - known
    if extra:
        raise ConfigError(f"{path}: unknown request keys {sorted(extra)}")
    if "minimum" not in items:
        raise ConfigError(f"{path}: request is missing 'minimum'")
    kwargs = {
        "service_type": items.get("service_type", "unnamed"),
        "minimum": parse_vector(items["minimum"]),
    }
    if "maximum" in items:
        kwargs["maximum"] = parse_vector(items["maximum"])
    if "pool_capacity" in items:
        kwargs["pool_capacity"] = parse_vector(items["pool_capacity"])
    try:
        return SliceRequest(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
