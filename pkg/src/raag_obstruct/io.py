"""File formats: graph JSON / edge list / DOT, coloring JSON, canonical dumps.

Graph JSON::

    {"n": 3, "edges": [[0, 1], [1, 2]], "labels": ["a", "b", "c"], "metadata": {...}}

Edge list: a header line ``n m`` followed by ``m`` lines ``u v``.
Coloring JSON: ``{"colors": {"<vertex>": token}}``, token an int or a
sorted int array.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .graph import Coloring, GraphError, SimplicialGraph


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path, obj):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def graph_to_json(G: SimplicialGraph, metadata=None) -> dict:
    out = {"n": G.n, "edges": [list(e) for e in G.edges]}
    if G.labels is not None:
        out["labels"] = list(G.labels)
    if metadata is not None:
        out["metadata"] = metadata
    return out


def graph_from_json(obj) -> SimplicialGraph:
    try:
        n = int(obj["n"])
        edges = obj["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"malformed edge {e!r}")
    return SimplicialGraph(n, edges, obj.get("labels"))


def parse_edge_list(text: str) -> SimplicialGraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list file")
    try:
        n, m = (int(x) for x in lines[0].split())
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"malformed edge line {e!r}")
    return SimplicialGraph(n, edges)


def format_edge_list(G: SimplicialGraph) -> str:
    return "".join([f"{G.n} {len(G.edges)}\n"] + [f"{u} {v}\n" for u, v in G.edges])


def read_graph_with_metadata(path):
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: {exc}") from None
        return graph_from_json(obj), obj.get("metadata")
    return parse_edge_list(text), None


def read_graph(path) -> SimplicialGraph:
    return read_graph_with_metadata(path)[0]


def write_graph(path, G: SimplicialGraph, metadata=None):
    path = Path(path)
    if path.suffix in (".txt", ".edges", ".el"):
        path.write_text(format_edge_list(G), encoding="utf-8")
    elif path.suffix == ".dot":
        path.write_text(to_dot(G), encoding="utf-8")
    else:
        write_json(path, graph_to_json(G, metadata))


def _dot_id(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(G: SimplicialGraph, name="G", coloring: Coloring | None = None) -> str:
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        attrs = [f"label={_dot_id(G.label(v))}"]
        if coloring is not None:
            attrs.append(f"color_token={_dot_id(json.dumps(_token_json(coloring[v])))}")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in G.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _token_json(t):
    return list(t) if isinstance(t, tuple) else t


def coloring_to_json(G: SimplicialGraph, f: Coloring) -> dict:
    return {"colors": {G.label(v): _token_json(f[v]) for v in range(G.n)}}


def coloring_from_json(G: SimplicialGraph, obj) -> Coloring:
    try:
        colors = obj["colors"]
    except (KeyError, TypeError):
        raise GraphError("coloring JSON needs a 'colors' object") from None
    mapping = {G.vertex(k): t for k, t in colors.items()}
    return Coloring.from_mapping(mapping, G.n)


def girth_to_json(g):
    return None if g == math.inf else int(g)


def girth_from_json(g):
    return math.inf if g is None else int(g)
