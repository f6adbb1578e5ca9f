"""Fixtures shared by several test modules."""
from __future__ import annotations

import math
import random

from xcalc.core import NValue, SensorState
from xcalc.netsim import SensorPlugin, SimConfig, run
from xcalc.stdlib import load_with_prelude


def program(text: str, gossip_clock: bool = False):
    prog = load_with_prelude(text, gossip_clock)
    assert prog.ok, [d.render() for d in prog.diagnostics]
    return prog.parsed


class FnPlugin(SensorPlugin):
    """Sensors computed by a plain function of the event."""

    def __init__(self, fn):
        self.fn = fn

    def scalars(self, event):
        return self.fn(event)


def simulate(text: str, cfg: SimConfig, sensors=None, **kw):
    return run(cfg, program(text), FnPlugin(sensors) if sensors else None, **kw)


def line(n: int, spacing: float = 1.0) -> list[tuple[float, float]]:
    return [(i * spacing, 0.0) for i in range(n)]


def grid(side: int) -> list[tuple[float, float]]:
    return [(float(x), float(y)) for y in range(side) for x in range(side)]


def last_by_device(trace) -> dict[int, object]:
    out = {}
    for ev in trace.events:
        out[ev.device] = trace.self_result(ev.id)
    return out


def random_config(rnd: random.Random, max_devices: int = 5, max_rounds: int = 6) -> SimConfig:
    n = rnd.randint(1, max_devices)
    rounds = rnd.randint(1, max_rounds)
    period = 1.0
    return SimConfig(
        devices=n,
        width=10.0,
        height=10.0,
        range=rnd.uniform(2.0, 12.0),
        period=period,
        jitter=rnd.choice([0.0, 0.1, 0.5, 0.9]),
        retention=rnd.uniform(1.0, 3.0) * period,
        duration=rounds * period - 1e-9 + (0.5 if rnd.random() < 0.5 else 0.0),
        seed=rnd.randrange(2**31),
    )


class RandomStatuses(SensorPlugin):
    """Random generation sets and random Bool status nvalues per key."""

    def __init__(self, seed: int, keys=("a", "b"), gen_prob: float = 0.3, devices: int = 5):
        self.rnd = random.Random(seed)
        self.keys = keys
        self.gen_prob = gen_prob
        self.devices = devices

    def scalars(self, event):
        out = {"gen": frozenset(k for k in self.keys if self.rnd.random() < self.gen_prob)}
        for k in self.keys:
            ov = {d: self.rnd.random() < 0.6 for d in range(self.devices) if self.rnd.random() < 0.7}
            out[k] = NValue(self.rnd.random() < 0.5, ov)
        return out


STATUS_PROGRAM = 'spawn((k) => pair(k, sense(k)), sense("gen"))'


# -- the two-process event structure drawn in the spawn example figure --

_FIG_DEVICES = [
    # device, events, x offset, spacing
    (1, 3, -0.8, 3.5),
    (2, 5, -0.2, 2.3),
    (3, 4, 0.3, 2.6),
    (4, 6, -0.2, 1.8),
    (5, 3, -0.8, 3.8),
]


def figure_structure():
    """Events (device, index), ordered by drawing abscissa, and their edges.

    Events are placed as in the drawing; an arrow joins two events closer
    than 3.2 units whose abscissas differ by more than 0.8, plus consecutive
    events of a device.  Of two arrows from the same device into one event
    only the later sender is kept.
    """
    pos = {}
    for dev, evs, offx, freq in _FIG_DEVICES:
        for ev in range(1, evs + 1):
            pos[(dev, ev)] = (ev * freq - 1 + 2 * offx, dev * 1.5 - 1)
    arrows = set()
    for a, pa in pos.items():
        for b, pb in pos.items():
            dx, dy = pb[0] - pa[0], pb[1] - pa[1]
            if a != b and math.hypot(dx, dy) < 3.2 and dx > 0.8:
                arrows.add((a, b))
    for dev, ev in pos:
        if (dev, ev + 1) in pos:
            arrows.add(((dev, ev), (dev, ev + 1)))
    latest = {}
    for a, b in arrows:
        slot = (b, a[0])
        if slot not in latest or a[1] > latest[slot][1]:
            latest[slot] = a
    order = sorted(pos, key=lambda n: (pos[n][0], n[0]))
    ids = {n: i for i, n in enumerate(order)}
    edges = sorted((ids[a], ids[b]) for (b, _), a in latest.items())
    return order, ids, edges


# The instance started at (5, 1) reaches events up to two messaging steps
# away, the one started at (2, 1) only one step.
FIGURE_HOPS = {5001: 2, 2001: 1}
FIGURE_GEN = {(5, 1): 5001, (2, 1): 2001}

FIGURE_PROGRAM = """
spawn((k) =>
  val born = contains(sense("gen"), k);
  val depth = exchange(inf, (n) =>
    val x = mux(born, 0, nfold(min, n, self(n)) + 1);
    pair(x, x));
  pair(depth, depth < mux(k == 5001, 2, 1)),
  sense("gen"))
"""


def figure_sensors(order):
    return [SensorState(float(i), {"gen": frozenset({FIGURE_GEN[n]}) if n in FIGURE_GEN else frozenset()})
            for i, n in enumerate(order)]
