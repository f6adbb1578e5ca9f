"""Asynchronous round schedule."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SimConfig


@dataclass(frozen=True)
class Event:
    id: int
    device: int
    time: float
    round: int


def schedule(cfg: SimConfig, rng: np.random.Generator) -> list[Event]:
    """All rounds before ``cfg.duration``, ordered by (time, device).

    Every device fires its first round at time 0; round k+1 follows round k
    after ``period * (1 + U(-jitter, jitter))`` seconds.
    """
    slots = []
    if cfg.duration <= 0:
        return []
    max_rounds = int(math.ceil(cfg.duration / (cfg.period * (1 - cfg.jitter)))) + 1
    for d in range(cfg.devices):
        if cfg.jitter > 0:
            gaps = cfg.period * (1 + rng.uniform(-cfg.jitter, cfg.jitter, size=max_rounds))
        else:
            gaps = np.full(max_rounds, cfg.period)
        t = 0.0
        r = 0
        while t < cfg.duration:
            slots.append((t, d, r))
            r += 1
            t = r * cfg.period if cfg.jitter == 0 else t + float(gaps[r - 1])
    slots.sort()
    return [Event(i, d, t, r) for i, (t, d, r) in enumerate(slots)]
