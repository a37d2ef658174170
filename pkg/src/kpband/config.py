"""Run configuration: one JSON document, strict keys, flag overrides."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields

from .core import FAMILY_KINDS
from .verify import DEFAULT_TOLERANCES


class ConfigError(ValueError):
    """Invalid configuration; maps to exit code 2."""


@dataclass
class RunConfig:
    family: str = "delta"
    param: float | None = None
    param_range: tuple[float, float, int] | None = None
    matrix: tuple[float, float, float, float] | None = None
    mass: float = 0.5
    spacing: float = 1.0
    window: tuple[float, float] | None = None
    grid: int | None = None
    mode: str = "E"
    points: int = 101
    kscale: str = "linear"
    out: str | None = None
    svg: str | None = None
    fig: str | None = None
    seed: int = 1729
    samples: int = 1000
    strict_missed_bands: bool = False
    tolerances: dict[str, float] = field(default_factory=dict)

    def validate(self) -> None:
        if self.family not in FAMILY_KINDS:
            raise ConfigError(f"unknown family {self.family!r}; expected one of {FAMILY_KINDS}")
        if self.mode not in ("E", "k0"):
            raise ConfigError(f"mode must be 'E' or 'k0', got {self.mode!r}")
        if self.kscale not in ("linear", "log"):
            raise ConfigError(f"kscale must be 'linear' or 'log', got {self.kscale!r}")
        for name in ("mass", "spacing"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be a positive finite number, got {value!r}")
        if self.window is not None and not self.window[0] < self.window[1]:
            raise ConfigError(f"window must satisfy lo < hi, got {self.window}")
        if self.grid is not None and self.grid < 2:
            raise ConfigError(f"grid must be at least 2, got {self.grid}")
        if self.points < 2:
            raise ConfigError(f"points must be at least 2, got {self.points}")
        if self.samples < 1:
            raise ConfigError(f"samples must be at least 1, got {self.samples}")
        if self.param_range is not None:
            lo, hi, n = self.param_range
            if not (lo < hi and n >= 2):
                raise ConfigError(f"param-range must satisfy lo < hi with n >= 2, got {self.param_range}")
        if self.family == "raw" and self.matrix is None and self.param is not None:
            raise ConfigError("raw family takes --matrix, not --param")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")

    def to_dict(self) -> dict:
        out: dict = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = list(value)
            out[f.name] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError(f"config must be a JSON object, got {type(data).__name__}")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        for key, width in (("param_range", 3), ("matrix", 4), ("window", 2)):
            if kwargs.get(key) is not None:
                value = kwargs[key]
                if not isinstance(value, (list, tuple)) or len(value) != width:
                    raise ConfigError(f"{key} must be a sequence of {width} numbers, got {value!r}")
                value = tuple(value)
                if key == "param_range":
                    value = (float(value[0]), float(value[1]), int(value[2]))
                else:
                    value = tuple(float(x) for x in value)
                kwargs[key] = value
        if "tolerances" in kwargs and kwargs["tolerances"] is not None:
            tols = kwargs["tolerances"]
            if not isinstance(tols, dict):
                raise ConfigError(f"tolerances must be an object, got {tols!r}")
            kwargs["tolerances"] = {str(k): float(v) for k, v in tols.items()}
        try:
            cfg = cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        cfg.validate()
        return cfg


def load_config_file(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return RunConfig.from_dict(data)
