"""Support minimization for clique-supported maps A(Γ) -> A(X).

A :class:`CliqueSupportMap` assigns each vertex of Γ a word over X whose
support is a clique of X. When two vertices ``v, v'`` share a support
``{x_1..x_k}`` (exponent vectors ``p`` and ``q``), ``v`` is replaced by
``ψ(v)^{q_1} ψ(v')^{-p_1}``, which kills the ``x_1`` exponent and leaves
``p_i q_1 - q_i p_1`` on ``x_i``. This is the transvection ``v -> v v'^{-1}``
raised to ``p_1`` composed with ``v -> v^{q_1}``. Repeating until supports
are pairwise distinct gives ``δ(v) = supp(ψ(v))``, which should embed Γ as
an induced subgraph of the clique graph of X.

Nothing here decides injectivity of ψ. Failures of the checkable
consequences (a collapsed image, a link condition, the induced-subgraph
biconditional) are reported, not repaired.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import DEFAULT_CLIQUE_CAP, CliqueGraph, GraphError, SimplicialGraph, clique_graph
from .raag import RaagWord, commutes, support


class EmbedError(ValueError):
    """Base class; ``pair``/``vertex``/``edge`` name the offending objects."""

    def __init__(self, msg, **where):
        super().__init__(msg)
        self.where = where


class UnequalSupportsError(EmbedError):
    pass


class LinkConditionError(EmbedError):
    pass


class DegenerateImageError(EmbedError):
    pass


class NotAnEmbeddingError(EmbedError):
    def __init__(self, msg, report):
        super().__init__(msg)
        self.report = report


@dataclass
class CliqueSupportMap:
    source: SimplicialGraph
    target: SimplicialGraph
    images: tuple  # images[v] is a RaagWord over target

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.source.n:
            raise GraphError(f"{len(images)} images for {self.source.n} source vertices")
        for w in images:
            if w.ambient != self.target:
                raise GraphError("image word is not over the target graph")
        self.images = tuple(w.normal_form() for w in images)

    def support(self, v) -> tuple:
        return tuple(sorted(support(self.images[v])))

    def support_mass(self) -> int:
        return sum(len(self.support(v)) for v in range(self.source.n))

    def replace(self, v, word):
        images = list(self.images)
        images[v] = word
        return CliqueSupportMap(self.source, self.target, images)


@dataclass
class HomCheck:
    ok: bool
    reason: str = ""
    vertex: int | None = None
    edge: tuple | None = None

    def __bool__(self):
        return self.ok


def check_clique_support_hom(psi: CliqueSupportMap) -> HomCheck:
    """Every image has a nonempty clique support and every Γ-edge commutes."""
    X = psi.target
    for v in range(psi.source.n):
        s = psi.support(v)
        if not s:
            return HomCheck(False, f"vertex {psi.source.label(v)} maps to the identity", vertex=v)
        if not X.is_clique(s):
            return HomCheck(False, f"support of {psi.source.label(v)} is not a clique: "
                                   f"{[X.label(x) for x in s]}", vertex=v)
    for u, v in psi.source.edges:
        if not commutes(psi.images[u], psi.images[v]):
            return HomCheck(False, f"images of edge ({psi.source.label(u)}, {psi.source.label(v)}) "
                                   f"do not commute", edge=(u, v))
    return HomCheck(True)


def exponent_vector(word: RaagWord, gens) -> tuple:
    return tuple(word.exponent_sum(x) for x in gens)


def link_condition(Gamma: SimplicialGraph, v: int, v2: int) -> int | None:
    """First Γ-neighbour of ``v`` that is neither ``v2`` nor adjacent to it, else None."""
    for u in sorted(Gamma.neighbors(v)):
        if u != v2 and not Gamma.adjacent(u, v2):
            return u
    return None


@dataclass
class ReductionStep:
    vertex: int
    partner: int
    generators: tuple
    p: tuple
    q: tuple
    new_image: RaagWord
    mass_before: int
    mass_after: int


def reduce_equal_supports(psi: CliqueSupportMap, v: int, v2: int, *, trace=None) -> CliqueSupportMap:
    """Replace ``ψ(v)`` by ``ψ(v)^{q_1} ψ(v')^{-p_1}``; see module docstring."""
    if v == v2:
        raise ValueError("need two distinct vertices")
    sv, sv2 = psi.support(v), psi.support(v2)
    if sv != sv2 or not sv:
        raise UnequalSupportsError(f"supports differ: {sv} vs {sv2}", pair=(v, v2))
    blocker = link_condition(psi.source, v, v2)
    if blocker is not None:
        raise LinkConditionError(
            f"neighbour {psi.source.label(blocker)} of {psi.source.label(v)} is not adjacent "
            f"to {psi.source.label(v2)}; the transvection is not defined", pair=(v, v2), vertex=blocker)
    p = exponent_vector(psi.images[v], sv)
    q = exponent_vector(psi.images[v2], sv)
    new = (psi.images[v] ** q[0]) * (psi.images[v2] ** -p[0])
    new = new.normal_form()
    if new.is_identity():
        raise DegenerateImageError(
            f"degenerate: {psi.source.label(v)} collapses to the identity "
            f"(ψ({psi.source.label(v)})^{q[0]} = ψ({psi.source.label(v2)})^{p[0]}); candidate not injective",
            pair=(v, v2))
    out = psi.replace(v, new)
    if trace is not None:
        trace.append(ReductionStep(v, v2, sv, p, q, out.images[v], psi.support_mass(), out.support_mass()))
    return out


def _equal_support_pairs(psi):
    n = psi.source.n
    sup = [psi.support(v) for v in range(n)]
    return [(a, b) for a in range(n) for b in range(n) if a != b and sup[a] == sup[b]]


def minimize_supports(psi: CliqueSupportMap, trace=None) -> CliqueSupportMap:
    """Reduce until supports are pairwise distinct.

    Pairs are taken in lexicographic order; a pair whose link condition
    fails is skipped in favour of the next one (typically its reverse).
    """
    check = check_clique_support_hom(psi)
    if not check:
        raise EmbedError(f"not a clique-supported homomorphism: {check.reason}",
                         vertex=check.vertex, edge=check.edge)
    while True:
        pairs = _equal_support_pairs(psi)
        if not pairs:
            return psi
        for a, b in pairs:
            if link_condition(psi.source, a, b) is None:
                break
        else:
            a, b = pairs[0]
            blocker = link_condition(psi.source, a, b)
            raise LinkConditionError(
                f"every equal-support pair fails the link condition; first is "
                f"({psi.source.label(a)}, {psi.source.label(b)}) blocked by {psi.source.label(blocker)}",
                pair=(a, b), vertex=blocker)
        before = psi.support_mass()
        psi = reduce_equal_supports(psi, a, b, trace=trace)
        # both are consequences of the construction; re-checked rather than assumed
        if psi.support_mass() >= before:  # pragma: no cover
            raise AssertionError("support mass did not decrease")
        check = check_clique_support_hom(psi)
        if not check:  # pragma: no cover
            raise AssertionError(f"reduction broke the homomorphism: {check.reason}")


@dataclass
class InducedEmbedding:
    delta: tuple  # delta[v] is a sorted clique of X
    target_clique_graph: CliqueGraph
    transcript: list = field(default_factory=list)

    def vertex_map(self) -> tuple:
        return tuple(self.target_clique_graph.vertex_of(c) for c in self.delta)


def _kadjacent(X, K, L):
    return K != L and X.is_clique(set(K) | set(L))


def extract_delta(psi: CliqueSupportMap, cap: int = DEFAULT_CLIQUE_CAP) -> InducedEmbedding:
    """``δ(v) = supp(ψ(v))`` plus a check of ``u ~ v  <=>  δ(u) ~ δ(v)`` in X_k."""
    Gamma, X = psi.source, psi.target
    delta = tuple(psi.support(v) for v in range(Gamma.n))
    transcript = []
    violations = []
    for v, c in enumerate(delta):
        if not c or not X.is_clique(c):
            raise EmbedError(f"support of {Gamma.label(v)} is not a nonempty clique", vertex=v)
    seen = {}
    for v, c in enumerate(delta):
        if c in seen:
            violations.append({"kind": "not_injective", "vertices": [Gamma.label(seen[c]), Gamma.label(v)]})
        seen.setdefault(c, v)
    for u in range(Gamma.n):
        for v in range(u + 1, Gamma.n):
            in_gamma = Gamma.adjacent(u, v)
            in_xk = _kadjacent(X, delta[u], delta[v])
            transcript.append({"pair": [Gamma.label(u), Gamma.label(v)], "gamma_edge": in_gamma, "xk_edge": in_xk})
            if in_gamma and not in_xk:
                violations.append({"kind": "edge_not_preserved", "pair": [Gamma.label(u), Gamma.label(v)]})
            elif in_xk and not in_gamma:
                violations.append({"kind": "non_edge_not_reflected", "pair": [Gamma.label(u), Gamma.label(v)]})
    if violations:
        report = {"delta": {Gamma.label(v): [X.label(x) for x in c] for v, c in enumerate(delta)},
                  "violations": violations, "transcript": transcript}
        first = violations[0]
        raise NotAnEmbeddingError(
            f"induced-subgraph check failed ({first['kind']}); candidate ψ was not injective / not an embedding",
            report)
    Xk = clique_graph(X, cap)
    return InducedEmbedding(delta, Xk, transcript)


def commutation_graph(elements, related=None, labels=None) -> SimplicialGraph:
    """One vertex per element, an edge where ``related(a, b)`` holds.

    ``related`` is a callable or a collection of index pairs; it must be
    symmetric and irreflexive. For words it defaults to commuting, with
    equal elements rejected.
    """
    elements = list(elements)
    if related is None:
        related = lambda a, b: a is not b and commutes(a, b)  # noqa: E731
    n = len(elements)
    if callable(related):
        rel = lambda i, j: bool(related(elements[i], elements[j]))  # noqa: E731
    else:
        pairs = {(int(a), int(b)) for a, b in related}
        rel = lambda i, j: (i, j) in pairs or (j, i) in pairs  # noqa: E731
    edges = []
    for i in range(n):
        if rel(i, i):
            raise ValueError(f"relation is reflexive at element {i}")
        for j in range(i + 1, n):
            a, b = rel(i, j), rel(j, i)
            if callable(related) and a != b:
                raise ValueError(f"relation is not symmetric on ({i}, {j})")
            if a:
                edges.append((i, j))
    return SimplicialGraph(n, edges, labels)


def _graph_ref(ref, base_dir):
    from pathlib import Path

    from .io import graph_from_json, read_graph

    if isinstance(ref, dict):
        return graph_from_json(ref)
    path = Path(ref)
    if not path.is_absolute() and base_dir is not None:
        path = Path(base_dir) / path
    return read_graph(path)


def psi_from_json(obj, base_dir=None) -> CliqueSupportMap:
    """``{"source": graph, "target": graph, "images": {"<vertex>": "<word>"}}``.

    Graphs may be inline objects or paths relative to ``base_dir``.
    """
    try:
        source = _graph_ref(obj["source"], base_dir)
        target = _graph_ref(obj["target"], base_dir)
        images = obj["images"]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed map file: missing {exc}") from None
    words = {source.vertex(k): RaagWord.parse(target, w) for k, w in images.items()}
    missing = [source.label(v) for v in range(source.n) if v not in words]
    if missing:
        raise GraphError(f"no image given for vertex {missing[0]}")
    return CliqueSupportMap(source, target, [words[v] for v in range(source.n)])


def psi_to_json(psi: CliqueSupportMap) -> dict:
    from .io import graph_to_json

    return {"source": graph_to_json(psi.source), "target": graph_to_json(psi.target),
            "images": {psi.source.label(v): psi.images[v].format() for v in range(psi.source.n)}}
