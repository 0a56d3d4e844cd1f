"""Lifting a coloring of a graph to a coloring of its clique graph.

A clique ``K`` receives the set of colors its members carry. Two adjacent
clique-graph vertices ``K ~ L`` always get different sets: some ``v`` lies
in exactly one of them, say ``K``, and ``v`` is adjacent to all of ``L``,
so ``f(v)`` is in ``f(K)`` but not in ``f(L)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CliqueGraph, Coloring, GraphError, SimplicialGraph, monochromatic_edge

# 2**MAX_BOUND_EXPONENT is still a comfortable exact int; anything above is
# certainly a typo for a color count of a curve graph model.
MAX_BOUND_EXPONENT = 4096


class InvalidColoringError(GraphError):
    def __init__(self, edge):
        super().__init__(f"coloring is not proper: edge {edge} is monochromatic")
        self.edge = edge


def lift_coloring(G: SimplicialGraph, Gk: CliqueGraph, f: Coloring) -> Coloring:
    """Color each clique-graph vertex ``v_K`` by the set ``f(K)``."""
    if Gk.base != G:
        raise GraphError("clique graph was built from a different base graph")
    bad = monochromatic_edge(G, f)
    if bad is not None:
        raise InvalidColoringError(bad)
    return Coloring(tuple(tuple(sorted({f[v] for v in K})) for K in Gk.cliques))


@dataclass
class LiftCheck:
    ok: bool
    reason: str = ""
    edge: tuple | None = None  # clique-graph edge, as a pair of cliques
    clique: tuple | None = None

    def __bool__(self):
        return self.ok


def verify_lift(G: SimplicialGraph, Gk: CliqueGraph, f: Coloring, g: Coloring) -> LiftCheck:
    """Check ``g(v_K) == f(K)`` for every clique and that ``g`` is proper on ``Gk``."""
    if Gk.base != G or len(g) != Gk.graph.n or len(f) != G.n:
        raise GraphError("index mismatch between the graph, its clique graph and the colorings")
    for K, token in zip(Gk.cliques, g.assignment):
        expected = tuple(sorted({f[v] for v in K}))
        if token != expected:
            return LiftCheck(False, f"g({K}) = {token} but f(K) = {expected}", clique=K)
    bad = monochromatic_edge(Gk.graph, g)
    if bad is not None:
        edge = (Gk.cliques[bad[0]], Gk.cliques[bad[1]])
        return LiftCheck(False, f"clique-graph edge {edge} is monochromatic", edge=edge)
    return LiftCheck(True)


def clique_chromatic_upper_bound(M: int) -> int:
    """``2**M``, the bound on the clique graph's chromatic number when the
    base graph is ``M``-colorable.

    The lift only ever uses nonempty color sets, so at most ``2**M - 1``
    colors actually appear; the looser ``2**M`` is what is reported.
    """
    if M < 0:
        raise ValueError("color count must be nonnegative")
    if M > MAX_BOUND_EXPONENT:
        raise OverflowError(f"M={M} exceeds the supported limit {MAX_BOUND_EXPONENT}")
    return 1 << M
