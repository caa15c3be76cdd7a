"""JSON documents and DOT output."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ValidationError
from .graphs import LabeledGraph, PointedBall
from .monoids import Element, MonoidHandle


def graph_to_json(g: LabeledGraph) -> dict:
    return {
        "labels": list(g.labels),
        "vertices": list(g.vertices),
        "edges": [list(e) for e in sorted(g.edges)],
    }


def graph_from_json(data) -> LabeledGraph:
    try:
        labels, vertices, edges = data["labels"], data["vertices"], data["edges"]
    except (KeyError, TypeError):
        raise ValidationError('graph documents need "labels", "vertices" and "edges"') from None
    for e in edges:
        if not isinstance(e, list) or len(e) != 3:
            raise ValidationError(f"edge {e!r} is not a [source, label, target] triple")
    return LabeledGraph(vertices, labels, [tuple(e) for e in edges])


def ball_to_json(b: PointedBall) -> dict:
    doc = graph_to_json(b.graph)
    doc.update(center=b.center, radius=b.radius, deterministic=b.deterministic)
    return doc


def _q(s: str) -> str:
    return json.dumps(s)


def to_dot(g: LabeledGraph, center: str | None = None, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        if v == center:
            lines.append(f"  {_q(v)} [center=true, shape=doublecircle];")
        else:
            lines.append(f"  {_q(v)};")
    for u, s, v in sorted(g.edges):
        lines.append(f"  {_q(u)} -> {_q(v)} [label={_q(s)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


def elements_from_json(h: MonoidHandle, data) -> list[Element]:
    if not isinstance(data, list):
        raise ValidationError("an element set is a JSON array of element labels")
    return [h.parse(str(x)) for x in data]


def elements_to_json(h: MonoidHandle, elements) -> list[str]:
    return [e.label for e in h.sorted(elements)]
