"""Simulation configuration and the flat ``key = value`` config format."""
from __future__ import annotations

import math
from dataclasses import dataclass, fields


class ConfigError(ValueError):
    pass


@dataclass
class SimConfig:
    devices: int = 10
    width: float = 100.0
    height: float = 100.0
    positions: list[tuple[float, float]] | None = None
    range: float = 10.0
    period: float = 1.0
    jitter: float = 0.0
    retention: float | None = None
    speed: float = 0.0
    duration: float = 10.0
    seed: int = 0
    connected: bool = False

    def __post_init__(self):
        if self.retention is None:
            self.retention = 2.5 * self.period
        self.validate()

    @property
    def mobile(self) -> bool:
        return self.speed > 0

    def validate(self) -> None:
        if self.positions is not None:
            self.devices = len(self.positions)
        if self.devices < 0:
            raise ConfigError("devices must be non-negative")
        if not self.range > 0:
            raise ConfigError("range must be positive")
        if not self.period > 0:
            raise ConfigError("period must be positive")
        if not 0 <= self.jitter < 1:
            raise ConfigError("jitter must lie in [0, 1)")
        if not self.retention >= self.period:
            raise ConfigError("retention must be at least the period")
        if self.speed < 0:
            raise ConfigError("speed must be non-negative")
        if self.duration < 0 or math.isnan(self.duration):
            raise ConfigError("duration must be non-negative")
        if self.width <= 0 or self.height <= 0:
            raise ConfigError("area sides must be positive")


_FIELD_TYPES = {f.name: f.type for f in fields(SimConfig)}


def _parse_bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_positions(text: str) -> list[tuple[float, float]]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        x, y = chunk.split(",")
        out.append((float(x), float(y)))
    return out


def parse_config_text(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        out[key] = value
    return out


def sim_config_from(items: dict[str, str]) -> tuple[SimConfig, dict[str, str]]:
    """Build a SimConfig from parsed items; unknown keys are returned as extras."""
    kwargs = {}
    extras = {}
    for key, value in items.items():
        if key not in _FIELD_TYPES:
            extras[key] = value
            continue
        try:
            if key == "positions":
                kwargs[key] = _parse_positions(value)
            elif key in ("devices", "seed"):
                kwargs[key] = int(value)
            elif key == "connected":
                kwargs[key] = _parse_bool(value)
            else:
                kwargs[key] = float(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {value!r} ({exc})") from None
    return SimConfig(**kwargs), extras


def load_config(path) -> tuple[SimConfig, dict[str, str]]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return sim_config_from(parse_config_text(text))
