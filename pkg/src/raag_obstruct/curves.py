"""Finite stand-ins for curve graphs.

Two conventions for the once-punctured torus and four-punctured sphere
are kept apart on purpose: the disjointness graph (no two distinct curves
are disjoint there, so it has no edges) and the Farey graph (slopes joined
when they meet once / twice minimally). Larger surfaces only enter through
externally supplied fragments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import SimplicialGraph, chromatic_number, empty_graph

MODELS = ("disjointness", "farey", "external")


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and punctures must be nonnegative")
        if self.euler_characteristic >= 0:
            raise ValueError(f"S_{self.genus},{self.punctures} has Euler characteristic "
                             f"{self.euler_characteristic}; need a negative value")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @property
    def name(self):
        return f"S_{self.genus},{self.punctures}"

    def to_json(self):
        return {"genus": self.genus, "punctures": self.punctures}


def surface_rank(S: SurfaceType) -> int:
    """Maximal rank of an abelian subgroup of Mod(S): ``3g - 3 + b`` (0 for the pair of pants)."""
    return max(0, 3 * S.genus - 3 + S.punctures)


def is_sporadic(S: SurfaceType) -> bool:
    return (S.genus, S.punctures) in ((1, 1), (0, 4))


@dataclass(frozen=True, order=True)
class FareyVertex:
    p: int
    q: int

    def __post_init__(self):
        if self.q < 0 or math.gcd(abs(self.p), self.q) != 1 or (self.q == 0 and self.p != 1):
            raise ValueError(f"{self.p}/{self.q} is not a canonical slope")

    def slope_key(self):
        return (1, 0) if self.q == 0 else (0, Fraction(self.p, self.q))

    def label(self):
        return f"{self.p}/{self.q}"


def farey_vertices(D: int) -> list:
    out = [FareyVertex(1, 0)]
    for q in range(1, D + 1):
        for p in range(-D, D + 1):
            if math.gcd(abs(p), q) == 1:
                out.append(FareyVertex(p, q))
    return sorted(out, key=FareyVertex.slope_key)


def farey_adjacent(a: FareyVertex, b: FareyVertex) -> bool:
    return abs(a.p * b.q - b.p * a.q) == 1


def farey_truncation(D: int) -> SimplicialGraph:
    """Slopes ``p/q`` with ``max(|p|, q) <= D``, joined when ``|pq' - p'q| = 1``."""
    if D < 1:
        raise ValueError("truncation depth must be >= 1")
    vs = farey_vertices(D)
    edges = [(i, j) for i in range(len(vs)) for j in range(i + 1, len(vs)) if farey_adjacent(vs[i], vs[j])]
    return SimplicialGraph(len(vs), edges, [v.label() for v in vs])


def disjointness_graph_small(S: SurfaceType, vertex_count: int) -> SimplicialGraph:
    """Curve graph fragment of S_1,1 or S_0,4 under the disjointness convention: edgeless."""
    if not is_sporadic(S):
        raise ValueError(f"{S.name} has disjoint curves; use an ingested fragment instead")
    return empty_graph(vertex_count)


def model_metadata(S: SurfaceType, model: str, verified: bool) -> dict:
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
    return {"surface": S.to_json(), "model": model, "verified": bool(verified)}


def ingest_curve_graph(path, surface: SurfaceType | None = None):
    """Load an external curve-graph fragment; returns ``(graph, metadata)``.

    JSON files may carry a metadata block; edge-list files cannot, so they
    get ``surface`` from the caller. ``verified`` is recomputed, never read:
    it is true only when the graph is exactly one of the generated models.
    External fragments are taken on trust and flagged unverified.
    """
    from .io import read_graph_with_metadata

    G, meta = read_graph_with_metadata(path)
    meta = dict(meta or {})
    if surface is not None:
        meta["surface"] = surface.to_json()
    if "surface" not in meta:
        raise ValueError(f"{path}: no surface given in metadata or by the caller")
    SurfaceType(**meta["surface"])
    meta.setdefault("model", "external")
    if meta["model"] not in MODELS:
        raise ValueError(f"{path}: unknown model {meta['model']!r}")
    meta["verified"] = _matches_model(G, SurfaceType(**meta["surface"]), meta["model"])
    return G, meta


def _matches_model(G, S, model):
    if model == "disjointness":
        return is_sporadic(S) and not G.edges
    if model == "farey":
        if not is_sporadic(S):
            return False
        D = 1
        while len(farey_vertices(D)) < G.n:
            D += 1
        return farey_truncation(D) == G
    return False


def chromatic_lower_bound_from_model(G: SimplicialGraph, budget=None) -> int:
    """Exact chromatic number of a finite model, a lower bound for the ambient curve graph."""
    if budget is None:
        return chromatic_number(G)[0]
    return chromatic_number(G, budget)[0]
