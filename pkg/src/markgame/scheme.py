"""Face 2-colorings, angle markings, and the five-condition validator.

The conditions checked by :func:`validate_theorem_conditions` are the
hypotheses under which the angle strategy caps the final score at 3:

1. every bounded face is colored gray or white, properly (faces sharing an
   edge get different colors),
2. every gray face is a triangle,
3. every edge lies on exactly one gray face,
4. exactly one angle (corner vertex) of each gray triangle is marked,
5. every vertex is incident to at most two unmarked gray-triangle angles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .graph import PlanarGraph

GRAY = "gray"
WHITE = "white"

HYPOTHESES = (
    "faces_two_colored",
    "gray_faces_are_triangles",
    "every_edge_one_gray",
    "one_marked_angle_per_gray",
    "unmarked_angles_at_most_two",
)


class SchemeError(ValueError):
    """A marking scheme does not fit the graph it is paired with."""


@dataclass(frozen=True)
class MarkingScheme:
    """A face 2-coloring plus one marked corner per gray triangle.

    ``face_color`` maps every bounded face id to ``"gray"`` or ``"white"``;
    ``marked_angle`` maps each gray face id to the vertex whose corner in
    that triangle is marked.  Treat both mappings as read-only.
    """

    face_color: Mapping[int, str]
    marked_angle: Mapping[int, int]

    @property
    def gray_faces(self) -> tuple[int, ...]:
        return tuple(sorted(f for f, c in self.face_color.items() if c == GRAY))

    def color(self, fid: int) -> Optional[str]:
        return self.face_color.get(fid)


@dataclass
class CheckResult:
    passed: bool
    offenders: tuple = ()


@dataclass
class ValidationReport:
    """Per-hypothesis pass/fail with the offending objects for each failure."""

    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": {
                name: {"passed": c.passed, "offenders": list(c.offenders)}
                for name, c in self.checks.items()
            },
        }


def gray_owner_map(graph: PlanarGraph, scheme: MarkingScheme) -> dict[int, int]:
    """Map every canonical edge index to the gray face that owns it.

    Only meaningful for schemes passing condition 3; an edge owned by zero
    or several gray faces simply keeps the last writer here.
    """
    owner: dict[int, int] = {}
    for fid in scheme.gray_faces:
        for eidx in graph.face_edges(fid):
            owner[eidx] = fid
    return owner


def validate_theorem_conditions(graph: PlanarGraph, scheme: MarkingScheme) -> ValidationReport:
    """Check the five angle-strategy hypotheses independently.

    Failures are report content, never exceptions; each failed check lists
    its witness faces/edges/vertices.
    """
    report = ValidationReport()

    # 1: every face colored, and edge-adjacent faces colored differently.
    bad: list = [f for f in graph.faces if scheme.color(f) not in (GRAY, WHITE)]
    edge_faces: dict[int, list[int]] = {}
    for fid in graph.faces:
        for eidx in graph.face_edges(fid):
            edge_faces.setdefault(eidx, []).append(fid)
    for eidx, fids in edge_faces.items():
        colors = {scheme.color(f) for f in fids}
        if len(fids) == 2 and len(colors) == 1 and None not in colors:
            bad.append(graph.edges[eidx])
    report.checks[HYPOTHESES[0]] = CheckResult(not bad, tuple(bad))

    # 2: gray faces are triangles.
    bad = [f for f in scheme.gray_faces if f not in graph.faces or len(graph.faces[f]) != 3]
    report.checks[HYPOTHESES[1]] = CheckResult(not bad, tuple(bad))

    # 3: every edge on exactly one gray face.
    gray_count = [0] * len(graph.edges)
    for fid in scheme.gray_faces:
        if fid in graph.faces:
            for eidx in graph.face_edges(fid):
                gray_count[eidx] += 1
    bad = [graph.edges[i] for i, c in enumerate(gray_count) if c != 1]
    report.checks[HYPOTHESES[2]] = CheckResult(not bad, tuple(bad))

    # 4: marked_angle is defined exactly on gray faces and lies on the face.
    gray = set(scheme.gray_faces)
    bad = sorted(gray - set(scheme.marked_angle)) + sorted(set(scheme.marked_angle) - gray)
    for fid, vid in scheme.marked_angle.items():
        if fid in graph.faces and fid in gray and vid not in graph.faces[fid].cycle:
            bad.append(fid)
    report.checks[HYPOTHESES[3]] = CheckResult(not bad, tuple(bad))

    # 5: at most two unmarked gray angles per vertex.
    unmarked: dict[int, int] = {}
    for fid in scheme.gray_faces:
        if fid not in graph.faces:
            continue
        mark = scheme.marked_angle.get(fid)
        for vid in graph.faces[fid].cycle:
            if vid != mark:
                unmarked[vid] = unmarked.get(vid, 0) + 1
    bad = sorted(v for v, n in unmarked.items() if n > 2)
    report.checks[HYPOTHESES[4]] = CheckResult(not bad, tuple(bad))

    return report


def find_gray_cover(graph: PlanarGraph) -> Optional[dict[int, str]]:
    """Search for a 2-coloring whose gray class is an exact triangle cover.

    Returns a face-id -> color map in which every gray face is a triangle
    and every edge lies on exactly one gray face, or ``None`` when no such
    assignment exists.  Backtracking exact cover; ties broken by lowest
    face id so the result is deterministic.
    """
    triangles = [f for f in sorted(graph.faces) if len(graph.faces[f]) == 3]
    candidates: dict[int, list[int]] = {i: [] for i in range(len(graph.edges))}
    for fid in triangles:
        for eidx in graph.face_edges(fid):
            candidates[eidx].append(fid)

    chosen: set[int] = set()
    banned: set[int] = set()
    covered = [0] * len(graph.edges)

    def pick_edge() -> Optional[int]:
        best, best_n = None, None
        for eidx, c in enumerate(covered):
            if c:
                continue
            n = sum(1 for f in candidates[eidx] if f not in banned)
            if best_n is None or n < best_n:
                best, best_n = eidx, n
                if n == 0:
                    break
        return best

    def solve() -> bool:
        eidx = pick_edge()
        if eidx is None:
            return True
        for fid in candidates[eidx]:
            if fid in banned:
                continue
            fedges = graph.face_edges(fid)
            if any(covered[e] for e in fedges):
                continue
            newly_banned = []
            chosen.add(fid)
            for e in fedges:
                covered[e] += 1
                for other in candidates[e]:
                    if other != fid and other not in banned:
                        banned.add(other)
                        newly_banned.append(other)
            if solve():
                return True
            chosen.discard(fid)
            for e in fedges:
                covered[e] -= 1
            for other in newly_banned:
                banned.discard(other)
        return False

    if not solve():
        return None
    return {fid: (GRAY if fid in chosen else WHITE) for fid in graph.faces}


def find_angle_marking(
    graph: PlanarGraph, coloring: Mapping[int, str]
) -> Optional[dict[int, int]]:
    """Pick one marked corner per gray triangle, backtracking on the cap.

    Each vertex may end with at most two unmarked gray angles.  Choices are
    examined in ascending face id then ascending vertex id, so an
    unconstrained instance marks the lowest vertex id of each triangle.
    Returns ``None`` when the constraint system is infeasible.
    """
    gray = [f for f in sorted(graph.faces) if coloring.get(f) == GRAY]
    unmarked_count: dict[int, int] = {}

    marking: dict[int, int] = {}

    def solve(i: int) -> bool:
        if i == len(gray):
            return True
        fid = gray[i]
        cycle = graph.faces[fid].cycle
        for vid in sorted(cycle):
            ok = True
            for other in cycle:
                if other != vid and unmarked_count.get(other, 0) + 1 > 2:
                    ok = False
                    break
            if not ok:
                continue
            marking[fid] = vid
            for other in cycle:
                if other != vid:
                    unmarked_count[other] = unmarked_count.get(other, 0) + 1
            if solve(i + 1):
                return True
            del marking[fid]
            for other in cycle:
                if other != vid:
                    unmarked_count[other] -= 1
        return False

    if not solve(0):
        return None
    return dict(marking)
