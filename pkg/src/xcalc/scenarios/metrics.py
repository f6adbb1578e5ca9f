"""Time series extracted from traces, and their CSV form."""
from __future__ import annotations

import csv
import math
from bisect import bisect_right
from dataclasses import dataclass, field

from ..core.values import FrozenMap
from ..netsim.trace import Trace


@dataclass
class TimeSeries:
    name: str
    times: list[float] = field(default_factory=list)
    values: list[float] = field(default_factory=list)

    def at(self, t: float) -> float:
        i = bisect_right(self.times, t + 1e-9) - 1
        if i < 0:
            raise ValueError(f"no sample at or before {t}")
        return self.values[i]

    def peak(self) -> float:
        return max(self.values, default=0.0)


def sample_times(duration: float, dt: float) -> list[float]:
    if dt <= 0:
        raise ValueError("dt must be positive")
    n = int(math.floor(duration / dt + 1e-9))
    return [k * dt for k in range(n + 1)]


def latest_events(trace: Trace, times: list[float]) -> list[dict[int, int]]:
    """For each sample time, the latest event id per device at or before it."""
    out = []
    latest: dict[int, int] = {}
    i = 0
    evs = trace.events
    for t in times:
        while i < len(evs) and evs[i].time <= t:
            latest[evs[i].device] = i
            i += 1
        out.append(dict(latest))
    return out


def _per_device_mean(trace: Trace, times, devices: int, value) -> list[float]:
    if devices <= 0:
        return [0.0] * len(times)
    out = []
    for snapshot in latest_events(trace, times):
        total = 0.0
        for eid in snapshot.values():
            total += value(eid)
        out.append(total / devices)
    return out


def active_keys(trace: Trace, eid: int) -> list:
    v = trace.self_result(eid)
    return list(v.keys()) if type(v) is FrozenMap else []


def metric_aproc(trace: Trace, devices: int, duration: float, dt: float = 0.5,
                 name: str = "aproc") -> TimeSeries:
    """Average number of active process instances per device over time."""
    times = sample_times(duration, dt)

    def count(eid):
        v = trace.self_result(eid)
        return len(v) if type(v) is FrozenMap else 0

    return TimeSeries(name, times, _per_device_mean(trace, times, devices, count))


def unnest(v, arity: int) -> list:
    """``pair(a, pair(b, c))`` with arity 3 -> ``[a, b, c]``."""
    out = []
    for _ in range(arity - 1):
        out.append(v[0])
        v = v[1]
    out.append(v)
    return out


def metric_truth_fraction(trace: Trace, index: int, arity: int, devices: int,
                          duration: float, dt: float = 0.5, name: str | None = None) -> TimeSeries:
    """Fraction of devices whose latest output component ``index`` is true."""
    times = sample_times(duration, dt)

    def truth(eid):
        v = trace.self_result(eid)
        if v is None:
            return 0.0
        try:
            return 1.0 if unnest(v, arity)[index] is True else 0.0
        except (TypeError, IndexError):
            return 0.0

    return TimeSeries(name or f"p{index}", times, _per_device_mean(trace, times, devices, truth))


def delivery_time(trace: Trace, key, target: int) -> float | None:
    """Time of the first event of ``target`` running instance ``key``."""
    for ev in trace.events:
        if ev.device != target:
            continue
        v = trace.self_result(ev.id)
        if type(v) is FrozenMap and key in v:
            return ev.time
    return None


def mean_series(runs: list[list[TimeSeries]]) -> list[TimeSeries]:
    """Pointwise mean of equally shaped series lists."""
    if not runs:
        return []
    out = []
    for j, first in enumerate(runs[0]):
        n = min(len(r[j].values) for r in runs)
        vals = [sum(r[j].values[i] for r in runs) / len(runs) for i in range(n)]
        out.append(TimeSeries(first.name, first.times[:n], vals))
    return out


def format_csv(series: list[TimeSeries]) -> str:
    if series:
        n = len(series[0].times)
        if any(len(s.times) != n or len(s.values) != n for s in series):
            raise ValueError("series must have equal lengths")
    rows = ["time," + ",".join(s.name for s in series) if series else "time"]
    for i, t in enumerate(series[0].times if series else []):
        rows.append(",".join([repr(float(t))] + [repr(float(s.values[i])) for s in series]))
    return "\n".join(rows) + "\n"


def export_csv(series: list[TimeSeries], path) -> None:
    text = format_csv(series)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def read_csv(path) -> list[TimeSeries]:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    series = [TimeSeries(name) for name in header[1:]]
    for row in rows[1:]:
        t = float(row[0])
        for s, cell in zip(series, row[1:]):
            s.times.append(t)
            s.values.append(float(cell))
    return series
