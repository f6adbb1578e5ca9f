"""Placement, neighbourhoods and random-walk mobility."""
from __future__ import annotations

import math

import numpy as np

from .config import SimConfig

MAX_PLACEMENT_TRIES = 1000


def neighbours(positions: np.ndarray, rng_: float) -> list[set[int]]:
    """Devices within the closed ball of radius ``rng_``, excluding self."""
    pos = np.asarray(positions, dtype=float)
    diff = pos[:, None, :] - pos[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=-1))
    close = dist <= rng_
    np.fill_diagonal(close, False)
    return [set(np.flatnonzero(row).tolist()) for row in close]


def is_connected(positions: np.ndarray, rng_: float) -> bool:
    nbrs = neighbours(positions, rng_)
    if not nbrs:
        return True
    seen = {0}
    todo = [0]
    while todo:
        for m in nbrs[todo.pop()]:
            if m not in seen:
                seen.add(m)
                todo.append(m)
    return len(seen) == len(nbrs)


def place(cfg: SimConfig, rng: np.random.Generator) -> np.ndarray:
    if cfg.positions is not None:
        return np.array(cfg.positions, dtype=float).reshape(-1, 2)
    for _ in range(MAX_PLACEMENT_TRIES):
        pos = rng.uniform((0.0, 0.0), (cfg.width, cfg.height), size=(cfg.devices, 2))
        if not cfg.connected or is_connected(pos, cfg.range):
            return pos
    raise RuntimeError("could not sample a connected placement")


class RandomWalk:
    """Constant-speed walk with headings resampled at the area bounds."""

    def __init__(self, cfg: SimConfig, positions: np.ndarray, rng: np.random.Generator):
        self.speed = cfg.speed
        self.width = cfg.width
        self.height = cfg.height
        self.rng = rng
        self.headings = rng.uniform(0.0, 2 * math.pi, size=len(positions))

    def move(self, positions: np.ndarray, dt: float) -> np.ndarray:
        if self.speed <= 0 or dt <= 0 or len(positions) == 0:
            return positions
        step = self.speed * dt
        pos = positions + step * np.column_stack((np.cos(self.headings), np.sin(self.headings)))
        for axis, bound in ((0, self.width), (1, self.height)):
            low = pos[:, axis] < 0
            high = pos[:, axis] > bound
            pos[low, axis] = -pos[low, axis]
            pos[high, axis] = 2 * bound - pos[high, axis]
            np.clip(pos[:, axis], 0.0, bound, out=pos[:, axis])
            hit = np.flatnonzero(low | high)
            if len(hit):
                fresh = self.rng.uniform(0.0, 2 * math.pi, size=len(hit))
                comp = np.cos(fresh) if axis == 0 else np.sin(fresh)
                inward = np.where(low[hit], 1.0, -1.0)
                flip = comp * inward < 0
                if axis == 0:
                    fresh = np.where(flip, math.pi - fresh, fresh)
                else:
                    fresh = np.where(flip, -fresh, fresh)
                self.headings[hit] = fresh
        return pos


def move(positions: np.ndarray, cfg: SimConfig, dt: float, rng: np.random.Generator,
         walk: RandomWalk | None = None) -> np.ndarray:
    """Advance every device by ``speed * dt`` along its heading."""
    walk = walk or RandomWalk(cfg, positions, rng)
    return walk.move(np.asarray(positions, dtype=float), dt)
