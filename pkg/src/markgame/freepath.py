"""Free-path detection and Bob's forcing walk.

An n-free path is a path v0..vk (k >= 2) whose first and last edges are
marked, whose interior vertices are unmarked, and where every interior
vertex has at least n+1 incident edges outside the path with at least n of
them marked.  From any position containing one with Bob to move, the
forcing walk below pushes the final score to n+3: on a length-2 path the
middle vertex already carries n+2 marked edges and one more incident edge
is available; on longer paths Bob marks the second path edge, after which
either Alice spends her turn on v1 (leaving a shorter n-free path) or the
length-2 prefix stays live and Bob finishes next turn.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .engine import BOB, EDGE, GameState, Move
from .strategies import Strategy, _greedy_bob_move


@dataclass(frozen=True)
class FreePath:
    """Vertex sequence of an n-free path; length is the edge count."""

    vertices: tuple[int, ...]
    n: int

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def find_free_paths(
    state: GameState, n: int, max_len: Optional[int] = None
) -> list[FreePath]:
    """All n-free paths up to ``max_len`` edges, in lexicographic order.

    Paths are reported once (the lexicographically smaller of the two
    traversal directions).
    """
    g = state.graph
    cap = max_len if max_len is not None else len(g.vertices)
    results: set[tuple[int, ...]] = set()

    def interior_ok(vid: int, prev: int, nxt: int) -> bool:
        if state.vertex_marked(vid):
            return False
        e_prev = g.edge_index(prev, vid)
        e_next = g.edge_index(vid, nxt)
        outside = [e for e in g.incident_edges(vid) if e not in (e_prev, e_next)]
        if len(outside) < n + 1:
            return False
        return sum(1 for e in outside if state.edge_marked(e)) >= n

    def extend(path: list[int], in_path: set[int]) -> None:
        last = path[-1]
        for w in g.neighbors(last):
            if w in in_path:
                continue
            if not interior_ok(last, path[-2], w):
                continue
            eidx = g.edge_index(last, w)
            path.append(w)
            in_path.add(w)
            if state.edge_marked(eidx):
                seq = tuple(path)
                results.add(min(seq, seq[::-1]))
            if len(path) - 1 < cap:
                extend(path, in_path)
            in_path.discard(w)
            path.pop()

    for eidx in range(len(g.edges)):
        if not state.edge_marked(eidx):
            continue
        a, b = g.edges[eidx]
        for v0, v1 in ((a, b), (b, a)):
            extend([v0, v1], {v0, v1})

    return [FreePath(seq, n) for seq in sorted(results)]


def bob_free_path(n: int) -> Strategy:
    """Bob strategy walking down the shortest available n-free path.

    With no n-free path on the board it falls back to the greedy edge.
    """

    def choose(state: GameState) -> Optional[Move]:
        g = state.graph
        paths = find_free_paths(state, n)
        if paths:
            path = min(paths, key=lambda p: (p.length, p.vertices))
            seq = path.vertices
            if path.length == 2:
                v1 = seq[1]
                unmarked_at_v1 = sorted(
                    e for e in g.incident_edges(v1) if not state.edge_marked(e)
                )
                if unmarked_at_v1:
                    return Move(BOB, EDGE, unmarked_at_v1[0])
            else:
                e12 = g.edge_index(seq[1], seq[2])
                if not state.edge_marked(e12):
                    return Move(BOB, EDGE, e12)
        return _greedy_bob_move(state)

    return Strategy(BOB, "freepath", {"n": n}, choose)
