"""Canonical graph JSON and DOT export.

The canonical graph document is::

    {"vertices": [{"id": int, "x": float, "y": float}, ...],
     "edges": [[int, int], ...],
     "faces": [{"id": int, "cycle": [int, ...],
                "color": "gray"|"white"|null,
                "marked_angle": int|null}, ...]}

Vertices are sorted by id, edges lexicographically (the list position is
the canonical edge index), faces by id.  Producers may add extra top-level
keys (``config``, ``family``, ...); consumers ignore them.
"""

from __future__ import annotations

import json
from typing import Optional, TextIO

from .graph import Face, GraphError, PlanarGraph, build_graph
from .scheme import GRAY, WHITE, MarkingScheme


def graph_to_dict(
    graph: PlanarGraph,
    scheme: Optional[MarkingScheme] = None,
    extra: Optional[dict] = None,
) -> dict:
    doc: dict = dict(extra or {})
    doc["vertices"] = [
        {"id": v.id, "x": v.x, "y": v.y} for v in graph.vertices.values()
    ]
    doc["edges"] = [[u, v] for u, v in graph.edges]
    doc["faces"] = [
        {
            "id": f.id,
            "cycle": list(f.cycle),
            "color": scheme.color(f.id) if scheme else None,
            "marked_angle": scheme.marked_angle.get(f.id) if scheme else None,
        }
        for f in graph.faces.values()
    ]
    return doc


def graph_from_dict(doc: dict) -> tuple[PlanarGraph, Optional[MarkingScheme]]:
    """Build a validated graph (and scheme when colors are present)."""
    try:
        vertices = [(v["id"], float(v["x"]), float(v["y"])) for v in doc["vertices"]]
        edges = [(e[0], e[1]) for e in doc["edges"]]
        faces = [Face(f["id"], tuple(f["cycle"])) for f in doc.get("faces", [])]
    except (KeyError, TypeError, IndexError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from exc
    graph = build_graph(vertices, edges, faces)

    colors = {f["id"]: f.get("color") for f in doc.get("faces", [])}
    if any(c in (GRAY, WHITE) for c in colors.values()):
        face_color = {fid: c for fid, c in colors.items() if c in (GRAY, WHITE)}
        marked = {
            f["id"]: f["marked_angle"]
            for f in doc["faces"]
            if f.get("marked_angle") is not None
        }
        return graph, MarkingScheme(face_color=face_color, marked_angle=marked)
    return graph, None


def dump_json(doc: dict, fp: Optional[TextIO] = None) -> str:
    """Serialize deterministically (fixed key order, 2-space indent)."""
    text = json.dumps(doc, indent=2) + "\n"
    if fp is not None:
        fp.write(text)
    return text


def load_graph(fp: TextIO) -> tuple[PlanarGraph, Optional[MarkingScheme]]:
    return graph_from_dict(json.load(fp))


def to_dot(graph: PlanarGraph, scheme: Optional[MarkingScheme] = None) -> str:
    """DOT export: edges only, marked angles listed as vertex labels."""
    marks: dict[int, list[int]] = {}
    if scheme:
        for fid, vid in sorted(scheme.marked_angle.items()):
            marks.setdefault(vid, []).append(fid)
    lines = ["graph markgame {", "  node [shape=circle];"]
    for v in graph.vertices.values():
        label = str(v.id)
        if v.id in marks:
            label += "\\nmarks " + ",".join(str(f) for f in marks[v.id])
        lines.append(f'  v{v.id} [label="{label}", pos="{v.x},{v.y}!"];')
    for u, v in graph.edges:
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
