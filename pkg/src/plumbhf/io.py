"""Reading and writing plumbing graphs.

Text format, one item per line, ``#`` starts a comment::

    v <id> <weight>
    e <id> <id>

JSON format::

    {"vertices": [{"id": 0, "weight": -1}, ...], "edges": [[0, 1], ...]}

Ids may be any distinct non-negative integers. They are re-indexed densely
in increasing order and kept as the graph's labels.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Union

from .errors import PlumbingError
from .graph import PlumbingGraph


def _build(vertices: Iterable[tuple[int, int]], edges: Iterable[tuple[int, int]]) -> PlumbingGraph:
    weight_of: dict[int, int] = {}
    for vid, weight in vertices:
        if vid < 0:
            raise PlumbingError(f"vertex id {vid} is negative")
        if vid in weight_of:
            raise PlumbingError(f"vertex {vid} declared twice")
        weight_of[vid] = weight
    if not weight_of:
        raise PlumbingError("graph has no vertices")
    labels = sorted(weight_of)
    index = {vid: k for k, vid in enumerate(labels)}
    dense_edges = []
    for a, b in edges:
        if a not in index or b not in index:
            raise PlumbingError(f"edge ({a}, {b}) refers to an undeclared vertex")
        dense_edges.append((index[a], index[b]))
    return PlumbingGraph(tuple(weight_of[v] for v in labels), tuple(dense_edges), tuple(labels))


def parse_text(text: str) -> PlumbingGraph:
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "v" and len(tokens) == 3:
                vertices.append((int(tokens[1]), int(tokens[2])))
            elif tokens[0] == "e" and len(tokens) == 3:
                edges.append((int(tokens[1]), int(tokens[2])))
            else:
                raise ValueError
        except ValueError:
            raise PlumbingError(f"line {lineno}: expected 'v <id> <weight>' or 'e <id> <id>', got {raw!r}") from None
    return _build(vertices, edges)


def parse_json(text: str) -> PlumbingGraph:
    try:
        data = json.loads(text)
        vertices = [(int(v["id"]), int(v["weight"])) for v in data["vertices"]]
        edges = [(int(a), int(b)) for a, b in data.get("edges", [])]
    except (ValueError, KeyError, TypeError) as exc:
        raise PlumbingError(f"malformed JSON graph: {exc}") from None
    return _build(vertices, edges)


def parse_graph(text: str) -> PlumbingGraph:
    """Parse either format, picking JSON when the text starts with ``{``."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def load_graph(path: Union[str, Path]) -> PlumbingGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PlumbingError(f"cannot read graph file {path}: {exc}") from None
    return parse_graph(text)


def to_text(graph: PlumbingGraph) -> str:
    lines = [f"v {label} {w}" for label, w in zip(graph.labels, graph.weights)]
    lines += [f"e {graph.labels[a]} {graph.labels[b]}" for a, b in graph.edges]
    return "\n".join(lines) + "\n"


def to_json_obj(graph: PlumbingGraph) -> dict:
    return {
        "vertices": [{"id": label, "weight": w} for label, w in zip(graph.labels, graph.weights)],
        "edges": [[graph.labels[a], graph.labels[b]] for a, b in graph.edges],
    }


def to_dot(graph: PlumbingGraph, name: str = "plumbing") -> str:
    lines = [f"graph {name} {{", "  node [shape=point];"]
    for label, w in zip(graph.labels, graph.weights):
        lines.append(f'  v{label} [xlabel="{w}"];')
    for a, b in graph.edges:
        lines.append(f"  v{graph.labels[a]} -- v{graph.labels[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
