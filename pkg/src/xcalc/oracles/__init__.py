"""Brute-force reference implementations, used by the tests only."""
from __future__ import annotations

import heapq
import math
from typing import Callable, Hashable, Iterable, Sequence

from ..core.evaluator import SensorState, evaluate
from ..core.syntax import Expr
from ..core.values import NValue, XCError


def topological_order(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Kahn's algorithm over events ``0..n-1``; raises ValueError on a cycle."""
    succs: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for s, d in edges:
        succs[s].append(d)
        indeg[d] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in succs[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    if len(order) != n:
        raise ValueError("event structure is cyclic")
    return order


def oracle_membership(
    devices: Sequence[int],
    edges: Iterable[tuple[int, int]],
    generate: Callable[[int], Iterable[Hashable]],
    status: Callable[[Hashable, int], NValue],
    order: Sequence[int] | None = None,
) -> dict[tuple[Hashable, int], bool]:
    """Process membership by induction over the messaging relation.

    ``devices[e]`` is the device of event ``e``; ``generate(e)`` the keys
    created at ``e``; ``status(k, e)`` the status nvalue of instance ``k`` at
    an event where it is active.  An instance is active at ``e`` if ``e``
    generates it, or if some predecessor ``e'`` has it active and its status
    maps the device of ``e`` to true.  Returns the table restricted to true
    entries: absent pairs are inactive.
    """
    edges = list(edges)
    n = len(devices)
    preds: list[list[int]] = [[] for _ in range(n)]
    for s, d in edges:
        preds[d].append(s)
    if order is None:
        order = topological_order(n, edges)
    active: dict[int, set] = {}
    statuses: dict[tuple[Hashable, int], NValue] = {}
    table: dict[tuple[Hashable, int], bool] = {}
    for e in order:
        keys = set(generate(e))
        for p in preds[e]:
            if p not in active:
                raise ValueError("order is not topological")
            for k in active[p]:
                if statuses[(k, p)].get(devices[e]) is True:
                    keys.add(k)
        active[e] = keys
        for k in keys:
            statuses[(k, e)] = status(k, e)
            table[(k, e)] = True
    return table


def oracle_shortest_paths(
    n: int, weighted_edges: Iterable[tuple[int, int, float]], sources: Iterable[int]
) -> list[float]:
    """Multi-source Dijkstra over an undirected weighted graph."""
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for a, b, w in weighted_edges:
        adj[a].append((b, w))
        adj[b].append((a, w))
    dist = [math.inf] * n
    heap = []
    for s in sources:
        dist[s] = 0.0
        heap.append((0.0, s))
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def oracle_denotational(
    devices: Sequence[int],
    edges: Iterable[tuple[int, int]],
    sensors: Sequence[SensorState],
    program: Expr,
) -> list[tuple[NValue | None, str | None]]:
    """Evaluate ``program`` on every event of a structure.

    The environment of event ``e`` maps the device of every ``e' -> e`` to the
    value tree produced at ``e'``.  Failed evaluations yield ``(None, msg)``
    and contribute nothing to later environments.
    """
    edges = list(edges)
    n = len(devices)
    preds: list[list[int]] = [[] for _ in range(n)]
    for s, d in edges:
        preds[d].append(s)
    trees: dict[int, object] = {}
    out: list[tuple[NValue | None, str | None]] = [(None, None)] * n
    for e in topological_order(n, edges):
        env = {devices[p]: trees[p] for p in preds[e] if p in trees}
        try:
            w, t = evaluate(devices[e], env, sensors[e], program)
        except XCError as exc:
            out[e] = (None, str(exc))
            continue
        trees[e] = t
        out[e] = (w, None)
    return out
