"""The simulation loop: schedule, move, gather messages, evaluate, record."""
from __future__ import annotations

import logging
import math

import numpy as np

from ..core.evaluator import SensorState, evaluate
from ..core.syntax import Expr
from ..core.values import NValue, XCError
from .config import SimConfig
from .geometry import RandomWalk, place
from .schedule import Event, schedule
from .trace import Trace

log = logging.getLogger(__name__)

INF = math.inf


class SensorPlugin:
    """Sensors of a scenario.  The default provides none.

    ``scalars`` returns a name -> value map for one event; nvalues in it are
    installed as relational sensors, anything else as a local value.
    """

    def prepare(self, cfg: SimConfig, positions: np.ndarray) -> None:
        pass

    def scalars(self, event: Event) -> dict:
        return {}


def rng_streams(seed: int) -> tuple[np.random.Generator, ...]:
    """Independent generators for placement, schedule and mobility."""
    ss = np.random.SeedSequence(seed)
    return tuple(np.random.default_rng(s) for s in ss.spawn(3))


class MessageStore:
    """Latest tree shared by each device, with its timestamp and event id."""

    def __init__(self):
        self.entries: dict[int, tuple[object, float, int]] = {}

    def put(self, device: int, tree, time: float, event_id: int) -> None:
        self.entries[device] = (tree, time, event_id)

    def gather(self, device: int, nbrs, now: float, retention: float):
        """Trees of live neighbours plus the device's own previous tree."""
        env = {}
        sources = {}
        for m in nbrs:
            hit = self.entries.get(m)
            if hit is not None and now - hit[1] <= retention:
                env[m] = hit[0]
                sources[m] = hit[2]
        own = self.entries.get(device)
        if own is not None:
            env[device] = own[0]
            sources[device] = own[2]
        return env, sources


class Simulator:
    def __init__(self, cfg: SimConfig, program: Expr, plugin: SensorPlugin | None = None,
                 keep_trees: bool = False, debug: bool = False):
        self.cfg = cfg
        self.program = program
        self.plugin = plugin or SensorPlugin()
        self.keep_trees = keep_trees
        self.debug = debug
        place_rng, sched_rng, move_rng = rng_streams(cfg.seed)
        self.positions = place(cfg, place_rng)
        self.events = schedule(cfg, sched_rng)
        self.walk = RandomWalk(cfg, self.positions, move_rng) if cfg.mobile else None
        self.store = MessageStore()
        self.now = 0.0
        self.plugin.prepare(cfg, self.positions.copy())

    def advance(self, t: float) -> None:
        if self.walk is not None and t > self.now:
            self.positions = self.walk.move(self.positions, t - self.now)
        self.now = max(self.now, t)

    def neighbours_of(self, d: int) -> tuple[list[int], np.ndarray]:
        diff = self.positions - self.positions[d]
        dist = np.sqrt((diff * diff).sum(axis=1))
        idx = np.flatnonzero(dist <= self.cfg.range)
        return [int(i) for i in idx if i != d], dist

    def sensors_for(self, ev: Event, env: dict, dist: np.ndarray) -> SensorState:
        d = ev.device
        dists = {m: (0.0 if m == d else float(dist[m])) for m in sorted(env)}
        uids = {m: m for m in sorted(env)}
        x, y = self.positions[d]
        scalar = {"position": (float(x), float(y))}
        relational = {"nbr_dist": NValue(INF, dists), "nbr_uid": NValue(-1, uids)}
        for name, value in self.plugin.scalars(ev).items():
            if isinstance(value, NValue):
                relational[name] = value
            else:
                scalar[name] = value
        return SensorState(time=ev.time, scalar=scalar, relational=relational)

    def run(self) -> Trace:
        cfg = self.cfg
        trace = Trace(trees=[] if self.keep_trees else None)
        for ev in self.events:
            self.advance(ev.time)
            nbrs, dist = self.neighbours_of(ev.device)
            env, sources = self.store.gather(ev.device, nbrs, ev.time, cfg.retention)
            sensors = self.sensors_for(ev, env, dist)
            for m in sorted(sources):
                trace.edges.append((sources[m], ev.id))
            try:
                result, tree = evaluate(ev.device, env, sensors, self.program, self.debug)
                error = None
                self.store.put(ev.device, tree, ev.time, ev.id)
            except XCError as exc:
                log.debug("event %d on device %d failed: %s", ev.id, ev.device, exc)
                result, tree, error = None, None, str(exc)
            trace.events.append(ev)
            trace.sensors.append(sensors)
            trace.results.append(result)
            trace.errors.append(error)
            if self.keep_trees:
                trace.trees.append(tree)
        return trace


def run(cfg: SimConfig, program: Expr, plugin: SensorPlugin | None = None,
        keep_trees: bool = False, debug: bool = False) -> Trace:
    """Simulate ``program`` (annotated and checked) under ``cfg``."""
    return Simulator(cfg, program, plugin, keep_trees, debug).run()
