"""Finite simplicial graphs and exact combinatorial searches.

Vertices are dense integer ids ``0..n-1``; adjacency is kept both as
frozensets and as integer bitmasks (bit ``u`` of ``mask(v)`` is set iff
``u ~ v``). All searches are exact and deterministic. Searches that can
blow up take a node budget and raise :class:`BudgetExceeded` carrying the
best bounds found instead of returning a guess.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

DEFAULT_CLIQUE_CAP = 10**6
DEFAULT_NODE_BUDGET = 2_000_000

Clique = tuple  # sorted tuple of vertex ids
Token = Union[int, tuple]  # int, or sorted tuple of ints for lifted colorings


class GraphError(ValueError):
    pass


class CliqueOverflowError(GraphError):
    def __init__(self, cap):
        super().__init__(f"clique count exceeds cap={cap}")
        self.cap = cap


class BudgetExceeded(RuntimeError):
    """A search ran out of nodes before it could prove optimality.

    ``lower``/``upper`` are the best proven bounds, ``witness`` the best
    object found so far (a coloring or a vertex set).
    """

    def __init__(self, what, lower, upper, witness=None, nodes=0):
        super().__init__(f"{what} undecided at budget: {lower} <= value <= {upper}")
        self.what = what
        self.lower = lower
        self.upper = upper
        self.witness = witness
        self.nodes = nodes


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SimplicialGraph:
    """Immutable finite simple graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_nbrs", "_masks", "_labels", "_index", "_edges")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        nbrs = [set() for _ in range(n)]
        for e in edges:
            u, v = (int(x) for x in e)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} references a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at {(u, v)}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._n = n
        self._nbrs = tuple(frozenset(s) for s in nbrs)
        self._masks = tuple(sum(1 << u for u in s) for s in nbrs)
        self._edges = tuple(sorted((u, v) for u in range(n) for v in nbrs[u] if u < v))
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise GraphError(f"{len(labels)} labels for {n} vertices")
            if len(set(labels)) != n:
                raise GraphError("vertex labels must be unique")
            self._index = {lab: i for i, lab in enumerate(labels)}
        else:
            self._index = None
        self._labels = labels

    @property
    def n(self) -> int:
        return self._n

    @property
    def labels(self):
        return self._labels

    @property
    def edges(self) -> tuple:
        return self._edges

    def vertices(self):
        return range(self._n)

    def neighbors(self, v: int) -> frozenset:
        return self._nbrs[v]

    def mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def label(self, v: int) -> str:
        return self._labels[v] if self._labels is not None else str(v)

    def vertex(self, name) -> int:
        """Resolve a label (or a decimal id on unlabeled graphs) to a vertex id."""
        if self._index is not None and str(name) in self._index:
            return self._index[str(name)]
        try:
            v = int(name)
        except (TypeError, ValueError):
            raise GraphError(f"unknown vertex {name!r}") from None
        if not 0 <= v < self._n:
            raise GraphError(f"vertex {v} out of range 0..{self._n - 1}")
        return v

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(self.adjacent(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def is_independent(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return not any(self.adjacent(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def relabeled(self, labels):
        return SimplicialGraph(self._n, self._edges, labels)

    def __eq__(self, other):
        if not isinstance(other, SimplicialGraph):
            return NotImplemented
        return (self._n, self._edges, self._labels) == (other._n, other._edges, other._labels)

    def __hash__(self):
        return hash((self._n, self._edges, self._labels))

    def __repr__(self):
        return f"SimplicialGraph(n={self._n}, m={len(self._edges)})"


def build_graph(n: int, edges: Iterable[Sequence[int]], labels=None) -> SimplicialGraph:
    return SimplicialGraph(n, edges, labels)


# -- small named graphs used throughout the tests and CLI -------------------

def complete_graph(n):
    return SimplicialGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n):
    return SimplicialGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return SimplicialGraph(n, [(i, i + 1) for i in range(n - 1)])


def empty_graph(n):
    return SimplicialGraph(n)


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimplicialGraph(10, outer + spokes + inner)


# -- colorings ---------------------------------------------------------------

def _token(x) -> Token:
    if isinstance(x, (list, tuple, set, frozenset)):
        return tuple(sorted(int(t) for t in x))
    return int(x)


@dataclass(frozen=True)
class Coloring:
    """Total vertex -> token map; index ``v`` of ``assignment`` colors vertex ``v``."""

    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(_token(t) for t in self.assignment))

    @classmethod
    def from_mapping(cls, mapping: dict, n: int):
        missing = [v for v in range(n) if v not in mapping]
        if missing:
            raise GraphError(f"coloring is partial: no color for vertex {missing[0]}")
        return cls(tuple(mapping[v] for v in range(n)))

    @property
    def palette(self) -> frozenset:
        return frozenset(self.assignment)

    def __len__(self):
        return len(self.assignment)

    def __getitem__(self, v):
        return self.assignment[v]


def monochromatic_edge(G: SimplicialGraph, f) -> tuple | None:
    """First edge (in sorted order) whose endpoints share a color, else None."""
    colors = f.assignment if isinstance(f, Coloring) else tuple(f)
    if len(colors) != G.n:
        raise GraphError(f"coloring is partial: {len(colors)} colors for {G.n} vertices")
    for u, v in G.edges:
        if colors[u] == colors[v]:
            return (u, v)
    return None


def is_valid_coloring(G: SimplicialGraph, f) -> bool:
    return monochromatic_edge(G, f) is None


# -- subgraphs and cliques ---------------------------------------------------

def induced_subgraph(G: SimplicialGraph, S: Iterable[int]):
    """Subgraph on ``S`` keeping every edge of ``G`` inside ``S``.

    Returns ``(H, relabel)`` where ``relabel`` maps old ids to new ids;
    new ids follow ascending old ids.
    """
    keep = sorted(set(S))
    for v in keep:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range 0..{G.n - 1}")
    relabel = {v: i for i, v in enumerate(keep)}
    edges = [(relabel[u], relabel[v]) for u, v in G.edges if u in relabel and v in relabel]
    labels = [G.labels[v] for v in keep] if G.labels is not None else None
    return SimplicialGraph(len(keep), edges, labels), relabel


def enumerate_cliques(G: SimplicialGraph, cap: int = DEFAULT_CLIQUE_CAP) -> list:
    """All nonempty cliques, ordered by size and then lexicographically."""
    if cap < 1:
        raise GraphError("clique cap must be >= 1")
    if G.n > cap:
        raise CliqueOverflowError(cap)
    out = [(v,) for v in range(G.n)]
    # frontier holds (clique, common neighbours above its last member)
    frontier = [((v,), G.mask(v) >> (v + 1) << (v + 1)) for v in range(G.n)]
    while frontier:
        nxt = []
        for clique, common in frontier:
            for w in _bits(common):
                if len(out) >= cap:
                    raise CliqueOverflowError(cap)
                c = clique + (w,)
                out.append(c)
                nxt.append((c, common & G.mask(w) >> (w + 1) << (w + 1)))
        frontier = nxt
    return out


@dataclass(frozen=True)
class CliqueGraph:
    """Clique graph of ``base``: one vertex per nonempty clique, ``K ~ L`` iff
    ``K != L`` and ``K | L`` is a clique. Nested cliques are therefore adjacent."""

    base: SimplicialGraph
    graph: SimplicialGraph
    cliques: tuple
    index: dict = field(compare=False, repr=False)

    def vertex_of(self, clique) -> int:
        return self.index[tuple(sorted(clique))]


def clique_label(G: SimplicialGraph, clique) -> str:
    return "{" + ",".join(G.label(v) for v in clique) + "}"


def clique_graph(G: SimplicialGraph, cap: int = DEFAULT_CLIQUE_CAP) -> CliqueGraph:
    cliques = enumerate_cliques(G, cap)
    masks = []
    closed = []  # intersection of closed neighbourhoods of the members
    for c in cliques:
        m = 0
        cl = -1
        for v in c:
            m |= 1 << v
            cl &= G.mask(v) | (1 << v)
        masks.append(m)
        closed.append(cl)
    edges = []
    for i in range(len(cliques)):
        ci = closed[i]
        for j in range(i + 1, len(cliques)):
            if masks[j] & ~ci == 0:
                edges.append((i, j))
    labels = [clique_label(G, c) for c in cliques]
    H = SimplicialGraph(len(cliques), edges, labels)
    return CliqueGraph(G, H, tuple(cliques), {c: i for i, c in enumerate(cliques)})


# -- girth -------------------------------------------------------------------

def _cycle_through(G: SimplicialGraph, root: int, limit: float, alive=None):
    """Shortest closed walk found by BFS from ``root`` of length < limit.

    Returns ``(length, walk)`` or None. At the global minimum over roots the
    walk is a shortest cycle.
    """
    dist = {root: 0}
    parent = {root: -1}
    frontier = [root]
    best = None
    depth = 0
    while frontier and 2 * depth + 1 < limit:
        nxt = []
        for u in frontier:
            for w in sorted(G.neighbors(u)):
                if alive is not None and w not in alive:
                    continue
                if w == parent[u]:
                    continue
                if w in dist:
                    length = dist[u] + dist[w] + 1
                    if length < limit:
                        limit = length
                        best = (u, w)
                else:
                    dist[w] = depth + 1
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
        depth += 1
    if best is None:
        return None
    u, w = best

    def up(x):
        path = []
        while x != -1:
            path.append(x)
            x = parent[x]
        return path

    pu, pw = up(u), up(w)
    walk = pu[::-1] + pw[:-1]  # root..u then w..(child of root)
    return limit, walk


def shortest_cycle(G: SimplicialGraph, below: float = math.inf, alive=None):
    """A shortest cycle (vertex list) of length < ``below``, or None."""
    best = None
    limit = below
    roots = sorted(alive) if alive is not None else range(G.n)
    for r in roots:
        found = _cycle_through(G, r, limit, alive)
        if found is not None:
            limit, best = found
            if limit == 3:
                break
    if best is None:
        return None
    if len(set(best)) != len(best):  # pragma: no cover - guarded by minimality
        raise AssertionError("BFS closed walk at minimum length is not simple")
    return best


def girth(G: SimplicialGraph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    c = shortest_cycle(G)
    return math.inf if c is None else len(c)


# -- cliques: maximum clique -------------------------------------------------

def _greedy_color_order(P, masks):
    """Sequential greedy coloring of vertex set ``P`` (bitmask).

    Returns lists (order, colors) with colors nondecreasing, for the
    Tomita-style bound.
    """
    order, colors = [], []
    remaining = P
    k = 0
    while remaining:
        k += 1
        avail = remaining
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~masks[v] & ~(1 << v)
            remaining &= ~(1 << v)
            order.append(v)
            colors.append(k)
    return order, colors


def maximum_clique(G: SimplicialGraph, budget: int = DEFAULT_NODE_BUDGET) -> tuple:
    """A maximum clique as a sorted tuple (empty for the empty graph)."""
    masks = [G.mask(v) for v in range(G.n)]
    # greedy incumbent, so a budget stop still reports a useful clique
    seed, cand = [], (1 << G.n) - 1
    while cand:
        v = max(_bits(cand), key=lambda x: ((masks[x] & cand).bit_count(), -x))
        seed.append(v)
        cand &= masks[v]
    best = [tuple(sorted(seed))]
    nodes = [0]

    def expand(R, P):
        order, colors = _greedy_color_order(P, masks)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + colors[i] <= len(best[0]):
                return
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded("clique number", len(best[0]), len(R) + colors[i], best[0], nodes[0])
            v = order[i]
            R2 = R + (v,)
            P2 = P & masks[v]
            if P2:
                expand(R2, P2)
            elif len(R2) > len(best[0]):
                best[0] = tuple(sorted(R2))
            P &= ~(1 << v)

    if G.n:
        expand((), (1 << G.n) - 1)
    return best[0]


def max_clique_size(G: SimplicialGraph) -> int:
    """Size of a largest clique, i.e. the cohomological dimension of A(G)."""
    if G.n == 0:
        raise GraphError("max clique size of the empty graph is undefined")
    return len(maximum_clique(G))


cohomological_dimension = max_clique_size


# -- independence number -----------------------------------------------------

def _clique_cover_bound(P, masks):
    """Greedy clique cover size of ``P``: an upper bound on alpha(P)."""
    count = 0
    while P:
        v = (P & -P).bit_length() - 1
        P &= ~(1 << v)
        cand = P & masks[v]
        while cand:
            w = (cand & -cand).bit_length() - 1
            P &= ~(1 << w)
            cand &= masks[w] & ~(1 << w)
        count += 1
    return count


def _greedy_independent(P, masks):
    """Min-degree greedy independent set inside ``P`` (lazy heap)."""
    alive = set(_bits(P))
    deg = {v: (masks[v] & P).bit_count() for v in alive}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    chosen = []
    while heap:
        d, v = heapq.heappop(heap)
        if v not in alive or d != deg[v]:
            continue
        chosen.append(v)
        gone = [v] + [w for w in _bits(masks[v]) if w in alive]
        for w in gone:
            alive.discard(w)
        for w in gone[1:]:
            for x in _bits(masks[w]):
                if x in alive:
                    deg[x] -= 1
                    heapq.heappush(heap, (deg[x], x))
    return chosen


def _components(P, masks):
    comps = []
    while P:
        seed = P & -P
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= masks[v]
            grow &= P & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        P &= ~comp
    return comps


def _mis_component(P, masks, budget, nodes):
    best = _greedy_independent(P, masks)
    best_size = [len(best)]
    best_set = [best]

    def rec(P, chosen):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded("independence number", best_size[0], None, best_set[0], nodes[0])
        # vertices of degree <= 1 inside P can always be taken
        chosen = list(chosen)
        changed = True
        while changed and P:
            changed = False
            for v in [x for x in _bits(P) if (masks[x] & P).bit_count() <= 1]:
                if P >> v & 1 and (masks[v] & P).bit_count() <= 1:
                    chosen.append(v)
                    P &= ~(masks[v] | (1 << v))
                    changed = True
        if not P:
            if len(chosen) > best_size[0]:
                best_size[0] = len(chosen)
                best_set[0] = chosen
            return
        if len(chosen) + _clique_cover_bound(P, masks) <= best_size[0]:
            return
        v = max(_bits(P), key=lambda x: ((masks[x] & P).bit_count(), -x))
        rec(P & ~(masks[v] | (1 << v)), chosen + [v])
        rec(P & ~(1 << v), chosen)

    rec(P, [])
    return best_set[0]


def maximum_independent_set(G: SimplicialGraph, budget: int = DEFAULT_NODE_BUDGET) -> tuple:
    """A maximum independent set as a sorted tuple.

    Branch and reduce on bitmasks, solved per connected component.
    """
    masks = [G.mask(v) for v in range(G.n)]
    nodes = [0]
    out = []
    comps = _components((1 << G.n) - 1, masks)
    for i, comp in enumerate(comps):
        try:
            out.extend(_mis_component(comp, masks, budget, nodes))
        except BudgetExceeded as exc:
            # finish the bound honestly: solved parts + greedy/cover for the rest
            rest = comps[i + 1:]
            lower = list(out) + list(exc.witness)
            for c in rest:
                lower.extend(_greedy_independent(c, masks))
            upper = len(out) + _clique_cover_bound(comp, masks) + sum(_clique_cover_bound(c, masks) for c in rest)
            raise BudgetExceeded("independence number", len(lower), upper, tuple(sorted(lower)), nodes[0]) from None
    return tuple(sorted(out))


def independence_number(G: SimplicialGraph, budget: int = DEFAULT_NODE_BUDGET):
    """``(alpha, witness)`` with ``witness`` a maximum independent set."""
    s = maximum_independent_set(G, budget)
    return len(s), s


# -- chromatic number --------------------------------------------------------

def dsatur_coloring(G: SimplicialGraph) -> list:
    """Greedy DSATUR coloring with colors 0..k-1 (upper bound only)."""
    n = G.n
    color = [-1] * n
    sat = [0] * n
    for _ in range(n):
        v = max((x for x in range(n) if color[x] < 0), key=lambda x: (sat[x].bit_count(), G.degree(x), -x))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        color[v] = c
        for w in G.neighbors(v):
            sat[w] |= 1 << c
    return color


def chromatic_number(G: SimplicialGraph, budget: int = DEFAULT_NODE_BUDGET):
    """Exact chromatic number with an optimal coloring, ``(chi, Coloring)``.

    DSATUR branch and bound, seeded with the greedy DSATUR upper bound and
    a maximum-clique lower bound. Raises :class:`BudgetExceeded` when the
    node budget runs out.
    """
    n = G.n
    if n == 0:
        return 0, Coloring(())
    best = dsatur_coloring(G)
    ub = max(best) + 1
    try:
        lower = len(maximum_clique(G, budget))
    except BudgetExceeded as exc:
        lower = exc.lower  # any clique found so far is still a lower bound
    if lower == ub:
        return ub, Coloring(best)

    masks = [G.mask(v) for v in range(n)]
    degree = [G.degree(v) for v in range(n)]
    color = [-1] * n
    sat = [0] * n
    state = {"ub": ub, "best": best, "nodes": 0}

    def search(done, used):
        if done == n:
            state["ub"] = used
            state["best"] = list(color)
            return used == lower
        v = -1
        key = None
        for x in range(n):
            if color[x] < 0:
                k = (sat[x].bit_count(), degree[x])
                if key is None or k > key:
                    key, v = k, x
        for c in range(used + 1):
            if c >= state["ub"] - 1:
                break
            if sat[v] >> c & 1:
                continue
            state["nodes"] += 1
            if state["nodes"] > budget:
                raise BudgetExceeded("chromatic number", lower, state["ub"],
                                     Coloring(state["best"]), state["nodes"])
            color[v] = c
            bit = 1 << c
            touched = [w for w in _bits(masks[v]) if not sat[w] & bit]
            for w in touched:
                sat[w] |= bit
            stop = search(done + 1, max(used, c + 1))
            for w in touched:
                sat[w] &= ~bit
            color[v] = -1
            if stop:
                return True
        return False

    search(0, 0)
    return state["ub"], Coloring(state["best"])


def find_k_coloring(G: SimplicialGraph, k: int, budget: int = DEFAULT_NODE_BUDGET):
    """A proper coloring with colors ``0..k-1``, or None if none exists.

    Independent of :func:`chromatic_number`: forward checking over color
    domains with minimum-remaining-values ordering. Used as the refutation
    route when verifying chromatic claims.
    """
    n = G.n
    if n == 0:
        return Coloring(())
    if k <= 0:
        return None
    full = (1 << k) - 1
    domain = [full] * n
    color = [-1] * n
    nodes = [0]
    nbrs = [sorted(G.neighbors(v)) for v in range(n)]

    def pick():
        best, bkey = -1, None
        for v in range(n):
            if color[v] < 0:
                key = (domain[v].bit_count(), -len(nbrs[v]), v)
                if bkey is None or key < bkey:
                    best, bkey = v, key
        return best

    def rec(done, used):
        if done == n:
            return True
        v = pick()
        # colors above `used` are interchangeable; try only one of them
        for c in range(min(k, used + 1)):
            if not domain[v] >> c & 1:
                continue
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded(f"{k}-colorability", None, None, None, nodes[0])
            bit = 1 << c
            color[v] = c
            pruned = []
            wiped = False
            for w in nbrs[v]:
                if color[w] < 0 and domain[w] & bit:
                    domain[w] &= ~bit
                    pruned.append(w)
                    if not domain[w]:
                        wiped = True
            if not wiped and rec(done + 1, max(used, c + 1)):
                return True
            for w in pruned:
                domain[w] |= bit
            color[v] = -1
        return False

    if rec(0, 0):
        return Coloring(color)
    return None


def complement(G: SimplicialGraph) -> SimplicialGraph:
    return SimplicialGraph(G.n, [(u, v) for u in range(G.n) for v in range(u + 1, G.n) if not G.adjacent(u, v)], G.labels)


def coloring_is_k(G: SimplicialGraph, f: Coloring, k: int) -> bool:
    """Proper and using at most ``k`` distinct colors."""
    return is_valid_coloring(G, f) and len(f.palette) <= k
