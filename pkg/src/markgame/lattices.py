"""Finite windows of the triangulated lattices, with their marking schemes.

Window policy: a window is the union of whole gray triangles (plus every
white face all of whose edges are present).  Every edge therefore lies on
exactly one gray triangle by construction, so the five validator
conditions hold verbatim on the finite window and strategies need no
boundary special-casing.

Vertex and face ids are stable functions of lattice coordinates (a signed
Cantor pairing), so a window is a subgraph of every larger window and
hexagonal windows share vertex ids with triangular ones.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .graph import Face, PlanarGraph, Vertex, build_graph, interior_vertices
from .scheme import GRAY, WHITE, MarkingScheme, validate_theorem_conditions


class LatticeError(ValueError):
    """Bad window parameters or an invalid centering request."""


# Interior-vertex degree multisets that identify each lattice family.
FAMILY_FINGERPRINTS: dict[str, frozenset[int]] = {
    "T": frozenset({6}),
    "R": frozenset({4, 8}),
    "C": frozenset({4, 6, 8}),
    "H": frozenset({3}),
    "T-prime": frozenset({3, 12}),
}


@dataclass(frozen=True)
class LatticeBundle:
    """A generated window: graph, optional scheme, family tag, parameters."""

    graph: PlanarGraph
    scheme: Optional[MarkingScheme]
    family: str
    params: dict = field(default_factory=dict)

    def fingerprint(self) -> frozenset[int]:
        """Degree multiset (as a set of values) of the interior vertices."""
        return frozenset(self.graph.degree(v) for v in interior_vertices(self.graph))

    def fingerprint_matches(self) -> bool:
        """Interior degrees are a subset of the family's known degree set.

        Small windows may lack interior vertices entirely; that counts as
        a (vacuous) match.  Families without a registered fingerprint
        always match.
        """
        expected = FAMILY_FINGERPRINTS.get(self.family)
        if expected is None:
            return True
        return self.fingerprint() <= expected


def _znat(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def _pair(a: int, b: int) -> int:
    """Injective (signed int, signed int) -> nonneg int; stable vertex ids."""
    na, nb = _znat(a), _znat(b)
    s = na + nb
    return s * (s + 1) // 2 + nb


_SQ3_2 = math.sqrt(3) / 2


def tri_vid(u: int, v: int) -> int:
    """Canonical id of the triangular-lattice point (u, v)."""
    return _pair(u, v)


def _tri_xy(u: int, v: int) -> tuple[float, float]:
    return (u * _SQ3_2, v + u / 2)


def _assemble(
    grays: list[tuple[int, tuple[int, ...], int]],
    white_candidates: list[tuple[int, tuple[int, ...]]],
    coords: dict[int, tuple[float, float]],
) -> tuple[PlanarGraph, MarkingScheme]:
    """Build the union of the gray triangles plus enclosed white faces."""
    edges: set[tuple[int, int]] = set()
    for _, cycle, _ in grays:
        for i in range(len(cycle)):
            a, b = cycle[i], cycle[(i + 1) % len(cycle)]
            edges.add((a, b) if a < b else (b, a))
    vids = {v for e in edges for v in e}

    faces: list[Face] = [Face(fid, cycle) for fid, cycle, _ in grays]
    face_color = {fid: GRAY for fid, _, _ in grays}
    marked = {fid: mark for fid, _, mark in grays}
    for fid, cycle in white_candidates:
        ok = True
        for i in range(len(cycle)):
            a, b = cycle[i], cycle[(i + 1) % len(cycle)]
            if ((a, b) if a < b else (b, a)) not in edges:
                ok = False
                break
        if ok:
            faces.append(Face(fid, cycle))
            face_color[fid] = WHITE

    graph = build_graph(
        [Vertex(vid, *coords[vid]) for vid in sorted(vids)],
        sorted(edges),
        sorted(faces, key=lambda f: f.id),
    )
    return graph, MarkingScheme(face_color=face_color, marked_angle=marked)


def gen_triangular(rows: int, cols: int) -> LatticeBundle:
    """Window of the regular triangular lattice, rows x cols gray triangles.

    Gray triangles point right; the marked angle of each is its rightmost
    vertex (the apex).
    """
    if rows < 1 or cols < 1:
        raise LatticeError("window too small: need rows >= 1 and cols >= 1")
    coords: dict[int, tuple[float, float]] = {}

    def vid(u: int, v: int) -> int:
        i = tri_vid(u, v)
        coords[i] = _tri_xy(u, v)
        return i

    grays = []
    for u in range(cols):
        for v in range(rows):
            cycle = (vid(u, v), vid(u + 1, v), vid(u, v + 1))
            grays.append((2 * _pair(u, v), cycle, vid(u + 1, v)))
    whites = []
    for u in range(1, cols + 1):
        for v in range(rows):
            cycle = (vid(u, v), vid(u, v + 1), vid(u - 1, v + 1))
            whites.append((2 * _pair(u, v) + 1, cycle))

    graph, scheme = _assemble(grays, whites, coords)
    return LatticeBundle(graph, scheme, "T", {"rows": rows, "cols": cols})


def gen_hexagonal(rows: int, cols: int) -> LatticeBundle:
    """Honeycomb window of rows x cols hexagons (no scheme; degree <= 3).

    Hexagon centers sit on the deleted sublattice of the triangular
    lattice, so the remaining vertices keep their triangular-lattice ids
    and every hexagonal window is a subgraph of a large enough triangular
    window.
    """
    if rows < 1 or cols < 1:
        raise LatticeError("window too small: need rows >= 1 and cols >= 1")
    coords: dict[int, tuple[float, float]] = {}

    def vid(u: int, v: int) -> int:
        i = tri_vid(u, v)
        coords[i] = _tri_xy(u, v)
        return i

    faces: list[Face] = []
    edges: set[tuple[int, int]] = set()
    for i in range(cols):
        for j in range(rows):
            cu, cv = 1 + 2 * i + j, 1 - i + j
            ring = [
                vid(cu + 1, cv),
                vid(cu, cv + 1),
                vid(cu - 1, cv + 1),
                vid(cu - 1, cv),
                vid(cu, cv - 1),
                vid(cu + 1, cv - 1),
            ]
            faces.append(Face(_pair(cu, cv), tuple(ring)))
            for k in range(6):
                a, b = ring[k], ring[(k + 1) % 6]
                edges.add((a, b) if a < b else (b, a))

    vids = {v for e in edges for v in e}
    graph = build_graph(
        [Vertex(v, *coords[v]) for v in sorted(vids)],
        sorted(edges),
        sorted(faces, key=lambda f: f.id),
    )
    return LatticeBundle(graph, None, "H", {"rows": rows, "cols": cols})


def gen_centered_square(rows: int, cols: int) -> LatticeBundle:
    """Window of the centered square lattice (rows x cols cells).

    Cells checkerboard between two orientations: even-parity cells gray
    their bottom/top triangles (marked at the right corner), odd-parity
    cells gray their left/right triangles (marked at the top corner).
    Boundary edges without a gray owner are trimmed with their white face.
    """
    if rows < 1 or cols < 1:
        raise LatticeError("window too small: need rows >= 1 and cols >= 1")
    coords: dict[int, tuple[float, float]] = {}

    def corner(i: int, j: int) -> int:
        v = 2 * _pair(i, j)
        coords[v] = (float(i), float(j))
        return v

    def center(i: int, j: int) -> int:
        v = 2 * _pair(i, j) + 1
        coords[v] = (i + 0.5, j + 0.5)
        return v

    grays = []
    whites = []
    for i in range(cols):
        for j in range(rows):
            bl, br = corner(i, j), corner(i + 1, j)
            tl, tr = corner(i, j + 1), corner(i + 1, j + 1)
            c = center(i, j)
            base = 4 * _pair(i, j)
            bottom = (base + 0, (bl, br, c))
            right = (base + 1, (br, tr, c))
            top = (base + 2, (tr, tl, c))
            left = (base + 3, (tl, bl, c))
            if (i + j) % 2 == 0:
                grays.append((*bottom, br))
                grays.append((*top, tr))
                whites.extend([right, left])
            else:
                grays.append((*left, tl))
                grays.append((*right, tr))
                whites.extend([bottom, top])

    graph, scheme = _assemble(grays, whites, coords)
    return LatticeBundle(graph, scheme, "R", {"rows": rows, "cols": cols})


_OCT_A = 1 + math.sqrt(2)
_OCT_H = math.sqrt(2) / 2
_DIA_OFFSETS = ((_OCT_H, 0.0), (0.0, _OCT_H), (-_OCT_H, 0.0), (0.0, -_OCT_H))


def gen_square_octagon(rows: int, cols: int) -> LatticeBundle:
    """Window of the centered square-octagon lattice (rows x cols octagons).

    Octagons checkerboard between two types: even parity grays the four
    corner-edge triangles (left-side ones marked at the center, right-side
    ones at their vertex on the right vertical edge); odd parity grays the
    four axis-edge triangles (left/right marked at the center, top/bottom
    at their right vertex).  Each square takes the phase its upper-right
    octagon forces, marked at its top/right (or bottom/right) corner.
    """
    if rows < 1 or cols < 1:
        raise LatticeError("window too small: need rows >= 1 and cols >= 1")
    coords: dict[int, tuple[float, float]] = {}

    def dvid(i: int, j: int, k: int) -> int:
        vid = 6 * _pair(i, j) + k
        dx, dy = _DIA_OFFSETS[k]
        coords[vid] = (i * _OCT_A + dx, j * _OCT_A + dy)
        return vid

    def octc(i: int, j: int) -> int:
        vid = 6 * _pair(i, j) + 4
        coords[vid] = ((i + 0.5) * _OCT_A, (j + 0.5) * _OCT_A)
        return vid

    def diac(i: int, j: int) -> int:
        vid = 6 * _pair(i, j) + 5
        coords[vid] = (i * _OCT_A, j * _OCT_A)
        return vid

    R, T, L, B = 0, 1, 2, 3
    grays = []
    whites = []

    for i in range(cols):
        for j in range(rows):
            ct = octc(i, j)
            ring = (
                dvid(i + 1, j, T),
                dvid(i + 1, j + 1, B),
                dvid(i + 1, j + 1, L),
                dvid(i, j + 1, R),
                dvid(i, j + 1, B),
                dvid(i, j, T),
                dvid(i, j, R),
                dvid(i + 1, j, L),
            )
            base = 12 * _pair(i, j)
            tris = [
                (base + k, (ring[k], ring[(k + 1) % 8], ct)) for k in range(8)
            ]
            # k: 0 right, 1 upper-right, 2 top, 3 upper-left,
            #    4 left, 5 lower-left, 6 bottom, 7 lower-right
            if (i + j) % 2 == 0:
                marks = {1: ring[1], 3: ct, 5: ct, 7: ring[0]}
            else:
                marks = {0: ct, 2: ring[2], 4: ct, 6: ring[7]}
            for k, tri in enumerate(tris):
                if k in marks:
                    grays.append((*tri, marks[k]))
                else:
                    whites.append(tri)

    for i in range(cols + 1):
        for j in range(rows + 1):
            cd = diac(i, j)
            r, t, l, b = (dvid(i, j, k) for k in (R, T, L, B))
            base = 12 * _pair(i, j)
            ur = (base + 8, (r, t, cd))
            ul = (base + 9, (t, l, cd))
            ll = (base + 10, (l, b, cd))
            lr = (base + 11, (b, r, cd))
            if (i + j) % 2 == 0:
                grays.append((*ul, t))
                grays.append((*lr, r))
                whites.extend([ur, ll])
            else:
                grays.append((*ll, b))
                grays.append((*ur, r))
                whites.extend([ul, lr])

    graph, scheme = _assemble(grays, whites, coords)
    return LatticeBundle(graph, scheme, "C", {"rows": rows, "cols": cols})


def add_centers(bundle: LatticeBundle, which: str = "all") -> LatticeBundle:
    """Insert a center vertex into selected triangular faces.

    ``which`` is ``"all"`` (every face, which must all be triangles),
    ``"gray"`` (the scheme's gray triangles), or ``"triangular"`` (every
    triangular face, silently skipping larger ones).  Each center gets
    three spoke edges and the face splits into three; the original graph
    is exactly the induced subgraph on the original vertex set.  The
    result carries no scheme.
    """
    graph = bundle.graph
    if which == "all":
        selected = sorted(graph.faces)
        bad = [f for f in selected if len(graph.faces[f]) != 3]
        if bad:
            raise LatticeError(f"non-triangular face selected: {bad[0]}")
    elif which == "gray":
        if bundle.scheme is None:
            raise LatticeError("gray centering needs a scheme")
        selected = sorted(bundle.scheme.gray_faces)
    elif which == "triangular":
        selected = sorted(f for f in graph.faces if len(graph.faces[f]) == 3)
    else:
        raise LatticeError(f"unknown centering mode {which!r}")

    vertices = list(graph.vertices.values())
    edges = list(graph.edges)
    faces: list[Face] = [f for f in graph.faces.values() if f.id not in set(selected)]
    next_vid = max(graph.vertices, default=-1) + 1
    next_fid = max(graph.faces, default=-1) + 1
    for fid in selected:
        cycle = graph.faces[fid].cycle
        cx = sum(graph.vertices[v].x for v in cycle) / len(cycle)
        cy = sum(graph.vertices[v].y for v in cycle) / len(cycle)
        m = next_vid
        next_vid += 1
        vertices.append(Vertex(m, cx, cy))
        for v in cycle:
            edges.append((v, m) if v < m else (m, v))
        for k in range(len(cycle)):
            faces.append(Face(next_fid, (cycle[k], cycle[(k + 1) % len(cycle)], m)))
            next_fid += 1

    new_graph = build_graph(vertices, sorted(edges), sorted(faces, key=lambda f: f.id))
    family = "T-prime" if (bundle.family == "T" and which == "all") else f"D-of-{bundle.family}"
    params = dict(bundle.params)
    params["which"] = which
    return LatticeBundle(new_graph, None, family, params)


def gen_apollonian(insertions: int, seed: int = 0) -> LatticeBundle:
    """Apollonian network grown from a triangle by seeded face insertion.

    Each step picks a bounded face uniformly at random (Mersenne-Twister
    generator seeded with ``seed``, one ``randrange`` call per step) and
    joins a new centroid vertex to its three corners, so runs replicate
    exactly for a fixed seed.  |E| = 3|V| - 6 throughout.
    """
    if insertions < 0:
        raise LatticeError("insertions must be >= 0")
    rng = random.Random(seed)
    coords: dict[int, tuple[float, float]] = {
        0: (0.0, 0.0),
        1: (1.0, 0.0),
        2: (0.5, math.sqrt(3) / 2),
    }
    edges: list[tuple[int, int]] = [(0, 1), (0, 2), (1, 2)]
    faces: list[tuple[int, tuple[int, int, int]]] = [(0, (0, 1, 2))]
    next_fid = 1
    for step in range(insertions):
        idx = rng.randrange(len(faces))
        _, (a, b, c) = faces[idx]
        m = 3 + step
        coords[m] = (
            (coords[a][0] + coords[b][0] + coords[c][0]) / 3,
            (coords[a][1] + coords[b][1] + coords[c][1]) / 3,
        )
        for v in (a, b, c):
            edges.append((v, m))
        faces[idx] = (next_fid, (a, b, m))
        faces.append((next_fid + 1, (b, c, m)))
        faces.append((next_fid + 2, (c, a, m)))
        next_fid += 3

    graph = build_graph(
        [Vertex(v, *coords[v]) for v in sorted(coords)],
        sorted((min(e), max(e)) for e in edges),
        sorted((Face(fid, cyc) for fid, cyc in faces), key=lambda f: f.id),
    )
    return LatticeBundle(graph, None, "apollonian", {"insertions": insertions, "seed": seed})


GENERATORS: dict[str, Callable[..., LatticeBundle]] = {
    "T": gen_triangular,
    "R": gen_centered_square,
    "C": gen_square_octagon,
    "H": gen_hexagonal,
}


def generate(family: str, **params) -> LatticeBundle:
    """Dispatch by family tag; see the individual generators."""
    if family == "apollonian":
        return gen_apollonian(params.get("insertions", 0), params.get("seed", 0))
    if family in GENERATORS:
        return GENERATORS[family](params.get("rows", 1), params.get("cols", 1))
    raise LatticeError(f"unknown family {family!r}")


def check_bundle(bundle: LatticeBundle) -> None:
    """Assert the bundle invariants (used by generator tests)."""
    if bundle.scheme is not None:
        report = validate_theorem_conditions(bundle.graph, bundle.scheme)
        if not report.passed:
            raise LatticeError(f"bundle scheme invalid: {report.to_dict()}")
    if not bundle.fingerprint_matches():
        raise LatticeError(
            f"fingerprint {set(bundle.fingerprint())} does not match family {bundle.family}"
        )
