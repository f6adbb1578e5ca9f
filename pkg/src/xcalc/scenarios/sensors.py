"""Scenario sensor plugins: message generation and criticality."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..netsim.config import SimConfig
from ..netsim.engine import SensorPlugin
from ..netsim.schedule import Event

GEN_TAG = 7


@dataclass(frozen=True)
class Message:
    source: int
    target: int
    payload: int
    created: float

    @property
    def key(self):
        return ((self.source, self.target), (self.payload, self.created))


class OneShotMessages(SensorPlugin):
    """Each request ``(source, target, time)`` is generated at the first
    round of ``source`` at or after ``time``."""

    def __init__(self, requests: list[tuple[int, int, float]]):
        self.requests = list(requests)
        self.pending = list(enumerate(self.requests))
        self.messages: list[Message] = []

    def scalars(self, event: Event) -> dict:
        keys = set()
        keep = []
        for i, (src, dst, t) in self.pending:
            if src == event.device and event.time >= t:
                msg = Message(src, dst, i, event.time)
                self.messages.append(msg)
                keys.add(msg.key)
            else:
                keep.append((i, (src, dst, t)))
        self.pending = keep
        return {"gen": frozenset(keys)}


class RandomMessages(SensorPlugin):
    """``count`` generator devices; each of their rounds in [start, end]
    creates a message with probability ``prob`` to a uniform random target."""

    def __init__(self, seed: int, count: int, prob: float, start: float, end: float):
        self.seed = seed
        self.count = count
        self.prob = prob
        self.start = start
        self.end = end
        self.generators: frozenset[int] = frozenset()
        self.devices = 0
        self.messages: list[Message] = []

    def prepare(self, cfg: SimConfig, positions: np.ndarray) -> None:
        self.devices = cfg.devices
        rng = np.random.default_rng([self.seed, GEN_TAG])
        count = min(self.count, cfg.devices)
        self.generators = frozenset(int(d) for d in rng.choice(cfg.devices, size=count, replace=False))

    def scalars(self, event: Event) -> dict:
        d = event.device
        if d not in self.generators or not (self.start <= event.time <= self.end) or self.devices < 2:
            return {"gen": frozenset()}
        rng = np.random.default_rng([self.seed, GEN_TAG, d, event.round])
        if rng.random() >= self.prob:
            return {"gen": frozenset()}
        target = int(rng.integers(self.devices - 1))
        if target >= d:
            target += 1
        msg = Message(d, target, event.round, event.time)
        self.messages.append(msg)
        return {"gen": frozenset({msg.key})}


class CriticWindow(SensorPlugin):
    """``critic`` holds on one device during a closed time window."""

    def __init__(self, device: int, start: float, end: float):
        self.device = device
        self.start = start
        self.end = end

    def scalars(self, event: Event) -> dict:
        on = event.device == self.device and self.start <= event.time <= self.end
        return {"critic": on}
