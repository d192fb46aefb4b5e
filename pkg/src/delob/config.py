"""Flat key=value configuration with command-line overrides.

The file format is one ``key = value`` per line with ``#`` comments; no
nesting. Dedicated flags (``--seed``, ``--format``, ``--out``, ``--mode``)
and repeatable ``--set key=value`` overrides take precedence over the file.
Unknown keys are rejected by name. No environment variables are read.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .model import ModelParams, RegimeInterpretation
from .oracle import SearchBox


class ConfigError(Exception):
    """Invalid configuration; maps to exit status 2."""


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_mode(text: str) -> RegimeInterpretation:
    for mode in RegimeInterpretation:
        if mode.value == text.strip():
            return mode
    choices = ", ".join(m.value for m in RegimeInterpretation)
    raise ValueError(f"expected one of {choices}, got {text!r}")


def _parse_format(text: str) -> str:
    low = text.strip().lower()
    if low not in ("csv", "json"):
        raise ValueError(f"expected csv or json, got {text!r}")
    return low


def _parse_seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise ValueError("seed must fit in 64 unsigned bits")
    return value


def _parse_positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"expected a positive integer, got {value}")
    return value


_KEY_PARSERS = {
    "alpha": float,
    "beta": float,
    "lambda": float,
    "R": float,
    "x_C": float,
    "x_A": float,
    "permissive": _parse_bool,
    "mode": _parse_mode,
    "seed": _parse_seed,
    "draws": _parse_positive_int,
    "format": _parse_format,
    "out": str,
    "p0_min": float,
    "p0_max": float,
    "d_max": float,
    "coarse_points": int,
    "refine_rounds": int,
}

_PARAM_KEYS = {
    "alpha": "alpha",
    "beta": "beta",
    "lambda": "lambda_weight",
    "R": "shock_bound",
    "x_C": "congress_ideal",
    "x_A": "agency_ideal",
    "permissive": "permissive",
}

_BOX_KEYS = ("p0_min", "p0_max", "d_max", "coarse_points", "refine_rounds")


_SWEEPABLE_PARAMS = ("alpha", "beta", "lambda", "R", "x_C", "x_A")


@dataclass(frozen=True)
class SweepSpec:
    """One sweep axis over a model primitive."""

    parameter: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.parameter not in _SWEEPABLE_PARAMS:
            raise ConfigError(
                f"unknown sweep parameter {self.parameter!r}; "
                f"choose from {', '.join(_SWEEPABLE_PARAMS)}"
            )
        if self.start == self.stop:
            raise ConfigError("sweep endpoints must differ")
        if self.steps < 2:
            raise ConfigError("sweep needs at least 2 steps")

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.steps - 1)
        return [self.start + step * i for i in range(self.steps)]


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    mode: RegimeInterpretation
    #: None means "derive the default box from the parameters at use time";
    #: set only when box keys were configured explicitly.
    search: SearchBox | None = None
    seed: int = 42
    draws: int = 10_000
    output_format: str = "json"
    output_path: str | None = None

    def params_record(self) -> dict:
        """Primitives in emission order, under their configuration names."""
        p = self.params
        return {
            "alpha": p.alpha,
            "beta": p.beta,
            "lambda": p.lambda_weight,
            "R": p.shock_bound,
            "x_C": p.congress_ideal,
            "x_A": p.agency_ideal,
        }


def read_config_file(path: str) -> dict[str, str]:
    """Raw key/value pairs from a flat config file."""
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _typed(values: dict[str, str]) -> dict[str, object]:
    typed: dict[str, object] = {}
    for key, raw in values.items():
        if key not in _KEY_PARSERS:
            raise ConfigError(f"unknown configuration key: {key!r}")
        try:
            typed[key] = _KEY_PARSERS[key](raw)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"invalid value for {key!r}: {exc}") from exc
    return typed


def build_config(
    config_path: str | None = None,
    set_overrides: list[str] | None = None,
    **flag_values,
) -> RunConfig:
    """Assemble a RunConfig from file, --set pairs, and dedicated flags."""
    raw: dict[str, str] = {}
    if config_path:
        raw.update(read_config_file(config_path))
    for item in set_overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        raw[key.strip()] = value.strip()
    typed = _typed(raw)
    for key, value in flag_values.items():
        if value is None:
            continue
        try:
            typed[key] = _KEY_PARSERS[key](str(value))
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"invalid value for {key!r}: {exc}") from exc

    param_kwargs = {
        field: typed[key] for key, field in _PARAM_KEYS.items() if key in typed
    }
    try:
        params = ModelParams(**param_kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    box = None
    box_overrides = {key: typed[key] for key in _BOX_KEYS if key in typed}
    if box_overrides:
        try:
            box = replace(SearchBox.for_params(params), **box_overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    return RunConfig(
        params=params,
        mode=typed.get("mode", RegimeInterpretation.FINAL_POLICY_BAND),
        search=box,
        seed=typed.get("seed", 42),
        draws=typed.get("draws", 10_000),
        output_format=typed.get("format", "json"),
        output_path=typed.get("out"),
    )
