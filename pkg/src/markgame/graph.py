"""Embedded planar graphs with explicit bounded faces.

Vertices carry 2D coordinates, but coordinates are export/UI metadata only:
no geometric predicate is ever consulted by game logic.  The bounded face
set is supplied explicitly (generators emit it, imported graphs declare it);
no face tracing from the embedding is performed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """A graph description violates a structural invariant."""


@dataclass(frozen=True)
class Vertex:
    id: int
    x: float
    y: float


@dataclass(frozen=True)
class Face:
    """A bounded face, given as its boundary cycle of vertex ids."""

    id: int
    cycle: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cycle)


class PlanarGraph:
    """Immutable embedded planar graph.

    Edges are stored as sorted ``(u, v)`` id pairs in lexicographic order;
    the position of a pair in :attr:`edges` is the edge's canonical index,
    used everywhere an edge needs a single-integer id (move tokens, bitsets,
    JSON ``e:<idx>`` references).
    """

    __slots__ = (
        "vertices",
        "edges",
        "faces",
        "vertex_ids",
        "_vertex_pos",
        "_edge_index",
        "_incident",
        "_neighbors",
        "_vertex_faces",
        "_face_edges",
        "_inc_mask",
    )

    def __init__(
        self,
        vertices: Sequence[Vertex],
        edges: Sequence[tuple[int, int]],
        faces: Sequence[Face],
    ):
        self.vertices: dict[int, Vertex] = {v.id: v for v in sorted(vertices, key=lambda v: v.id)}
        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        self.faces: dict[int, Face] = {f.id: f for f in sorted(faces, key=lambda f: f.id)}
        self.vertex_ids: tuple[int, ...] = tuple(self.vertices)
        self._vertex_pos = {vid: i for i, vid in enumerate(self.vertex_ids)}
        self._edge_index = {pair: i for i, pair in enumerate(self.edges)}
        incident: dict[int, list[int]] = {vid: [] for vid in self.vertex_ids}
        neighbors: dict[int, list[int]] = {vid: [] for vid in self.vertex_ids}
        for i, (u, v) in enumerate(self.edges):
            incident[u].append(i)
            incident[v].append(i)
            neighbors[u].append(v)
            neighbors[v].append(u)
        self._incident = {vid: tuple(ix) for vid, ix in incident.items()}
        self._neighbors = {vid: tuple(sorted(ns)) for vid, ns in neighbors.items()}
        vertex_faces: dict[int, list[int]] = {vid: [] for vid in self.vertex_ids}
        face_edges: dict[int, tuple[int, ...]] = {}
        for f in self.faces.values():
            for vid in f.cycle:
                vertex_faces[vid].append(f.id)
            face_edges[f.id] = tuple(
                self._edge_index[_norm(f.cycle[i], f.cycle[(i + 1) % len(f.cycle)])]
                for i in range(len(f.cycle))
            )
        self._vertex_faces = {vid: tuple(fs) for vid, fs in vertex_faces.items()}
        self._face_edges = face_edges
        self._inc_mask = {
            vid: _mask(ix) for vid, ix in self._incident.items()
        }

    # -- basic queries -------------------------------------------------

    def degree(self, vid: int) -> int:
        return len(self._incident[vid])

    def incident_edges(self, vid: int) -> tuple[int, ...]:
        """Canonical indexes of the edges incident to ``vid``."""
        return self._incident[vid]

    def neighbors(self, vid: int) -> tuple[int, ...]:
        return self._neighbors[vid]

    def edge_index(self, u: int, v: int) -> int:
        return self._edge_index[_norm(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edge_index

    def faces_at(self, vid: int) -> tuple[int, ...]:
        return self._vertex_faces[vid]

    def face_edges(self, fid: int) -> tuple[int, ...]:
        """Canonical indexes of the boundary edges of face ``fid``."""
        return self._face_edges[fid]

    def vertex_pos(self, vid: int) -> int:
        """Bit position of ``vid`` in vertex bitsets."""
        return self._vertex_pos[vid]

    def incidence_mask(self, vid: int) -> int:
        """Edge-index bitmask of the edges incident to ``vid``."""
        return self._inc_mask[vid]

    @property
    def max_degree(self) -> int:
        return max((len(ix) for ix in self._incident.values()), default=0)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertex_ids[0]}
        stack = [self.vertex_ids[0]]
        while stack:
            for w in self._neighbors[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def __repr__(self) -> str:  # pragma: no cover
        return f"PlanarGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, |F|={len(self.faces)})"


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _mask(indexes: Iterable[int]) -> int:
    m = 0
    for i in indexes:
        m |= 1 << i
    return m


def build_graph(
    vertices: Iterable[tuple[int, float, float] | Vertex],
    edges: Iterable[tuple[int, int]],
    faces: Iterable[tuple[int, Sequence[int]] | Face] = (),
    complete_faces: bool = True,
) -> PlanarGraph:
    """Validate a vertex/edge/face description and return a PlanarGraph.

    ``complete_faces`` declares that ``faces`` is the full bounded face set;
    for connected graphs this enables the Euler check
    ``|V| - |E| + (|F| + 1) = 2``.

    Raises :class:`GraphError` on duplicate ids, dangling or degenerate
    edges, bad face cycles, or an Euler-check failure.
    """
    vlist: list[Vertex] = []
    seen_ids: set[int] = set()
    for item in vertices:
        v = item if isinstance(item, Vertex) else Vertex(*item)
        if v.id in seen_ids:
            raise GraphError(f"duplicate vertex id {v.id}")
        if not (math.isfinite(v.x) and math.isfinite(v.y)):
            raise GraphError(f"non-finite coordinates on vertex {v.id}")
        seen_ids.add(v.id)
        vlist.append(v)

    epairs: list[tuple[int, int]] = []
    eseen: set[tuple[int, int]] = set()
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if u not in seen_ids or v not in seen_ids:
            raise GraphError(f"edge ({u}, {v}) references a missing vertex")
        p = _norm(u, v)
        if p in eseen:
            raise GraphError(f"duplicate edge {p}")
        eseen.add(p)
        epairs.append(p)
    epairs.sort()

    flist: list[Face] = []
    fseen: set[int] = set()
    for item in faces:
        f = item if isinstance(item, Face) else Face(item[0], tuple(item[1]))
        if f.id in fseen:
            raise GraphError(f"duplicate face id {f.id}")
        fseen.add(f.id)
        if len(f.cycle) < 3:
            raise GraphError(f"face {f.id} is not a cycle of length >= 3")
        if len(set(f.cycle)) != len(f.cycle):
            raise GraphError(f"face {f.id} repeats a vertex")
        for i, vid in enumerate(f.cycle):
            w = f.cycle[(i + 1) % len(f.cycle)]
            if _norm(vid, w) not in eseen:
                raise GraphError(f"face {f.id} uses missing edge ({vid}, {w})")
        flist.append(f)

    g = PlanarGraph(vlist, epairs, flist)
    if complete_faces and vlist and g.is_connected():
        if len(g.vertices) - len(g.edges) + (len(g.faces) + 1) != 2:
            raise GraphError(
                "Euler check failed: "
                f"|V|={len(g.vertices)}, |E|={len(g.edges)}, bounded faces={len(g.faces)}"
            )
    return g


def interior_vertices(graph: PlanarGraph) -> frozenset[int]:
    """Vertices not incident to the unbounded face.

    A vertex is interior exactly when its incident bounded faces close up
    around it, i.e. their count equals its degree (and the degree is at
    least 3, ruling out isolated and path-end vertices).
    """
    return frozenset(
        vid
        for vid in graph.vertex_ids
        if graph.degree(vid) >= 3 and len(graph.faces_at(vid)) == graph.degree(vid)
    )


def is_subgraph(small: PlanarGraph, big: PlanarGraph) -> bool:
    """True when ``small``'s vertex ids and edge pairs are subsets of ``big``'s."""
    if not set(small.vertices) <= set(big.vertices):
        return False
    return set(small.edges) <= set(big.edges)
