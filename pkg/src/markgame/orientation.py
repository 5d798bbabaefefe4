"""Edge orientations with bounded out-degree.

An orientation in which every vertex has out-degree at most d certifies
col_ve <= d + 2.  The minimal such d is found by binary search on a
max-flow feasibility check (each edge must be assigned to one endpoint,
endpoints accept at most d edges), which also yields a witness
orientation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class OrientationError(ValueError):
    pass


@dataclass(frozen=True)
class Orientation:
    """Witness orientation: edge index -> (tail, head); ``d`` = max out-degree."""

    directions: tuple[tuple[int, int], ...]
    d: int

    def out_degrees(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for tail, _ in self.directions:
            out[tail] = out.get(tail, 0) + 1
        return out


class _Flow:
    """Plain BFS augmenting-path max flow on a small dense-ish network."""

    def __init__(self, n: int):
        self.n = n
        self.cap: list[dict[int, int]] = [dict() for _ in range(n)]

    def add(self, u: int, v: int, c: int) -> None:
        self.cap[u][v] = self.cap[u].get(v, 0) + c
        self.cap[v].setdefault(u, 0)

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            parent = [-1] * self.n
            parent[s] = s
            q = deque([s])
            while q and parent[t] == -1:
                u = q.popleft()
                for v, c in self.cap[u].items():
                    if c > 0 and parent[v] == -1:
                        parent[v] = u
                        q.append(v)
            if parent[t] == -1:
                return total
            # the unit-capacity source arcs make each augmentation 1
            v = t
            while v != s:
                u = parent[v]
                self.cap[u][v] -= 1
                self.cap[v][u] += 1
                v = u
            total += 1


def _orient_with_bound(graph, d: int):
    """Orientation with all out-degrees <= d, or None when infeasible."""
    m = len(graph.edges)
    n = len(graph.vertex_ids)
    if m == 0:
        return []
    # nodes: 0 source, 1..m edge nodes, m+1..m+n vertex nodes, m+n+1 sink
    src, snk = 0, m + n + 1
    net = _Flow(m + n + 2)
    vnode = {vid: m + 1 + i for i, vid in enumerate(graph.vertex_ids)}
    for i, (u, v) in enumerate(graph.edges):
        net.add(src, 1 + i, 1)
        net.add(1 + i, vnode[u], 1)
        net.add(1 + i, vnode[v], 1)
    for vid in graph.vertex_ids:
        net.add(vnode[vid], snk, d)
    if net.max_flow(src, snk) != m:
        return None
    directions = []
    for i, (u, v) in enumerate(graph.edges):
        # the saturated edge->vertex arc names the tail (the vertex whose
        # out-degree budget pays for this edge)
        if net.cap[1 + i][vnode[u]] == 0:
            directions.append((u, v))
        else:
            directions.append((v, u))
    return directions


def orientation_bound(graph) -> Orientation:
    """Minimal-d orientation via binary search on the feasibility check."""
    lo, hi = 0, max(graph.max_degree, 0)
    best = _orient_with_bound(graph, hi)
    if best is None:  # cannot happen: d = max degree is always feasible
        raise OrientationError("no orientation found at the degree bound")
    while lo < hi:
        mid = (lo + hi) // 2
        attempt = _orient_with_bound(graph, mid)
        if attempt is None:
            lo = mid + 1
        else:
            best, hi = attempt, mid
    return Orientation(tuple(best), hi)
