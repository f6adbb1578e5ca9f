"""Recorded event structures: the in-memory trace, its text format and validator."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from ..core.evaluator import SensorState
from ..core.values import NValue, format_nvalue
from .encoding import decode_sensors, encode_sensors
from .schedule import Event

HEADER = "#trace v1"
ERROR_PREFIX = "!error "


class TraceFormatError(ValueError):
    pass


@dataclass
class Trace:
    """Events with their causal edges, sensor snapshots and results.

    ``results[i]`` is the result nvalue of event ``i`` or ``None`` if the
    evaluation failed, in which case ``errors[i]`` holds the message.  A trace
    read back from text only carries the ``summaries``.
    """

    events: list[Event] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)
    sensors: list[SensorState] = field(default_factory=list)
    results: list[NValue | None] = field(default_factory=list)
    errors: list[str | None] = field(default_factory=list)
    trees: list | None = None
    meta: dict[str, str] = field(default_factory=dict)
    _summaries: list[str] | None = None

    def __len__(self):
        return len(self.events)

    @property
    def summaries(self) -> list[str]:
        if self._summaries is not None:
            return self._summaries
        return [summary(r, e) for r, e in zip(self.results, self.errors)]

    def predecessors(self) -> list[list[int]]:
        preds: list[list[int]] = [[] for _ in self.events]
        for s, d in self.edges:
            preds[d].append(s)
        return preds

    def self_result(self, i: int):
        r = self.results[i]
        return None if r is None else r.get(self.events[i].device)

    def by_device(self) -> dict[int, list[int]]:
        out = defaultdict(list)
        for ev in self.events:
            out[ev.device].append(ev.id)
        return dict(out)


def summary(result: NValue | None, error: str | None) -> str:
    if result is None:
        return ERROR_PREFIX + (error or "evaluation failed").replace("\n", " ")
    return format_nvalue(result).replace("\n", " ")


def format_trace(trace: Trace) -> str:
    lines = [HEADER]
    for k, v in sorted(trace.meta.items()):
        lines.append(f"#meta {k}={v}")
    for ev, s in zip(trace.events, trace.summaries):
        lines.append(f"{ev.id} {ev.device} {ev.time!r} {ev.round} {s}")
    lines.append("#edges")
    for s, d in trace.edges:
        lines.append(f"{s} {d}")
    if trace.sensors:
        lines.append("#sensors")
        for ev, sn in zip(trace.events, trace.sensors):
            lines.append(f"{ev.id} {encode_sensors(sn)}")
    return "\n".join(lines) + "\n"


def write_trace(trace: Trace, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_trace(trace))


def parse_trace(text: str) -> Trace:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise TraceFormatError("missing '#trace v1' header")
    trace = Trace(_summaries=[])
    section = "events"
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        try:
            if line.startswith("#meta "):
                k, _, v = line[6:].partition("=")
                trace.meta[k] = v
            elif line == "#edges":
                section = "edges"
            elif line == "#sensors":
                section = "sensors"
            elif section == "events":
                eid, dev, time, rnd, rest = (line.split(" ", 4) + [""])[:5]
                if int(eid) != len(trace.events):
                    raise TraceFormatError(f"line {lineno}: event ids must be consecutive")
                trace.events.append(Event(int(eid), int(dev), float(time), int(rnd)))
                trace._summaries.append(rest)
            elif section == "edges":
                s, d = line.split()
                trace.edges.append((int(s), int(d)))
            else:
                eid, body = line.split(" ", 1)
                if int(eid) != len(trace.sensors):
                    raise TraceFormatError(f"line {lineno}: sensor ids must be consecutive")
                trace.sensors.append(decode_sensors(body))
        except TraceFormatError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise TraceFormatError(f"line {lineno}: malformed ({exc})") from None
    n = len(trace.events)
    for s, d in trace.edges:
        if not (0 <= s < n and 0 <= d < n):
            raise TraceFormatError(f"edge {s} {d} refers to an unknown event")
    if trace.sensors and len(trace.sensors) != n:
        raise TraceFormatError("sensor section does not cover every event")
    return trace


def read_trace(path) -> Trace:
    with open(path, encoding="utf-8") as fh:
        return parse_trace(fh.read())


def validate_structure(trace: Trace) -> list[str]:
    """Check the event-structure constraints; returns a list of violations.

    The messaging relation must be acyclic, every event has at most one
    predecessor per device, and every event has a finite causal past (which
    holds for any finite acyclic structure).  Per-device times must also be
    strictly increasing.
    """
    problems = []
    n = len(trace.events)
    preds = [[] for _ in range(n)]
    succs = [[] for _ in range(n)]
    for s, d in trace.edges:
        if not (0 <= s < n and 0 <= d < n):
            problems.append(f"edge {s}->{d} refers to an unknown event")
            continue
        preds[d].append(s)
        succs[s].append(d)
    for i, ps in enumerate(preds):
        devs = [trace.events[p].device for p in ps]
        if len(devs) != len(set(devs)):
            problems.append(f"event {i} has two predecessors on the same device")
    indeg = [len(p) for p in preds]
    todo = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    while todo:
        i = todo.pop()
        seen += 1
        for j in succs[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                todo.append(j)
    if seen != n:
        problems.append("messaging relation has a cycle")
    last: dict[int, float] = {}
    for ev in trace.events:
        if ev.device in last and not ev.time > last[ev.device]:
            problems.append(f"event {ev.id}: device {ev.device} time does not increase")
        last[ev.device] = ev.time
    return problems
