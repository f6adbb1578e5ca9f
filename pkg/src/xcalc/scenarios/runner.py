"""Scenario configuration and execution."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from ..stdlib import load_with_prelude
from ..netsim.config import ConfigError, SimConfig
from ..netsim.engine import SensorPlugin, Simulator, rng_streams
from ..netsim.geometry import place
from ..netsim.trace import Trace
from .metrics import TimeSeries, metric_aproc, metric_truth_fraction
from .programs import (
    MONITORING_SERIES,
    monitoring_source,
    sphere_source,
    tree_source,
)
from .sensors import CriticWindow, OneShotMessages, RandomMessages

log = logging.getLogger(__name__)

SCENARIOS = ("sphere", "tree", "multi", "monitoring")

DEFAULTS = {
    "gen.time": "10",
    "gen.count": "10",
    "gen.prob": "0.05",
    "gen.start": "1",
    "gen.end": "25",
    "tree.warmup": "20",
    "critic.device": "0",
    "critic.start": "20",
    "critic.end": "25",
    "monitor.replicas": "4",
    "monitor.diameter": "1000",
    "monitor.infospeed": "100",
    "monitor.gossip_clock": "false",
    "sample.dt": "0.5",
}


@dataclass
class ScenarioResult:
    trace: Trace
    series: list[TimeSeries]
    plugin: SensorPlugin
    info: dict


def _get(extras: dict, key: str, conv):
    raw = extras.get(key, DEFAULTS.get(key))
    if raw is None:
        return None
    try:
        return conv(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None


def _bool(text: str) -> bool:
    if text.lower() in ("true", "yes", "1", "on"):
        return True
    if text.lower() in ("false", "no", "0", "off"):
        return False
    raise ValueError(text)


def nearest_device(positions: np.ndarray, x: float, y: float) -> int:
    d = ((positions - np.array([x, y])) ** 2).sum(axis=1)
    return int(np.argmin(d))


def run_scenario(name: str, cfg: SimConfig, extras: dict | None = None,
                 source: str | None = None, keep_trees: bool = False) -> ScenarioResult:
    """Run one scenario.

    ``source`` is an XC program evaluated in the stdlib scope that replaces
    the scenario's built-in program; the scenario's sensors are kept.
    """
    extras = dict(extras or {})
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario {name!r} (expected one of {', '.join(SCENARIOS)})")
    dt = _get(extras, "sample.dt", float)
    info: dict = {"scenario": name}

    # same stream the simulator uses, so positions agree
    positions = place(cfg, rng_streams(cfg.seed)[0])

    if name in ("sphere", "tree"):
        src = _get(extras, "gen.from", int)
        dst = _get(extras, "gen.to", int)
        if src is None:
            src = nearest_device(positions, 0.0, 0.0)
        if dst is None:
            dst = nearest_device(positions, cfg.width, cfg.height)
        t = _get(extras, "gen.time", float)
        if name == "tree":
            root = _get(extras, "tree.root", int)
            if root is None:
                root = nearest_device(positions, cfg.width / 2, cfg.height / 2)
            warm = _get(extras, "tree.warmup", float) * cfg.period
            if t < warm:
                log.info("message time moved from %s to %s to let the tree settle", t, warm)
                t = warm
            info["root"] = root
            main = tree_source(root)
        else:
            main = sphere_source()
        info.update({"from": src, "to": dst, "time": t})
        plugin = OneShotMessages([(src, dst, t)])
    elif name == "multi":
        plugin = RandomMessages(cfg.seed, _get(extras, "gen.count", int), _get(extras, "gen.prob", float),
                                _get(extras, "gen.start", float), _get(extras, "gen.end", float))
        main = sphere_source()
    else:
        plugin = CriticWindow(_get(extras, "critic.device", int), _get(extras, "critic.start", float),
                              _get(extras, "critic.end", float))
        replicas = _get(extras, "monitor.replicas", int)
        if replicas < 2:
            raise ConfigError("monitor.replicas must be at least 2")
        diameter = _get(extras, "monitor.diameter", float)
        infospeed = _get(extras, "monitor.infospeed", float)
        if not infospeed > 0:
            raise ConfigError("monitor.infospeed must be positive")
        info.update({"replicas": replicas, "diameter": diameter, "infospeed": infospeed})
        gossip = _get(extras, "monitor.gossip_clock", _bool)
        info["gossip_clock"] = gossip
        main = monitoring_source(replicas, diameter, infospeed)

    main = source if source is not None else main
    loaded = load_with_prelude(main, bool(info.get("gossip_clock", False)))
    if not loaded.ok:
        raise ValueError("; ".join(d.message for d in loaded.diagnostics))
    prog = loaded.parsed
    info["program"] = json.dumps(main)

    sim = Simulator(cfg, prog, plugin, keep_trees=keep_trees)
    trace = sim.run()
    trace.meta.update({k: str(v) for k, v in info.items()})
    if name == "monitoring":
        series = [metric_truth_fraction(trace, i, len(MONITORING_SERIES), cfg.devices,
                                        cfg.duration, dt, s)
                  for i, s in enumerate(MONITORING_SERIES)]
    else:
        series = [metric_aproc(trace, cfg.devices, cfg.duration, dt)]
    if hasattr(plugin, "messages"):
        info["messages"] = list(plugin.messages)
    info["program"] = main
    return ScenarioResult(trace, series, plugin, info)
