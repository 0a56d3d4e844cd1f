"""Certified graphs of large girth and large chromatic number.

Two generators:

* iterated Mycielskians from K2, triangle-free with chromatic number
  growing by one per step (exact evidence);
* the deletion method: sample G(n, p) with ``p = c * n**(1/M - 1)``, delete
  a vertex from each short cycle, and certify ``chi >= ceil(n'/alpha)`` or
  ``chi`` exactly. Sampling uses Python's MT19937 (``random.Random``) with
  geometric skips over vertex pairs in lexicographic order, so a seed
  reproduces the same graph on every platform.

Every certificate can be re-checked by :func:`verify_certificate`, which
recomputes girth and re-runs an independent coloring/independent-set
search instead of trusting the recorded evidence.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import asdict, dataclass, field

from . import __version__
from .graph import (
    DEFAULT_NODE_BUDGET,
    BudgetExceeded,
    SimplicialGraph,
    _cycle_through,
    _greedy_independent,
    chromatic_number,
    complete_graph,
    find_k_coloring,
    girth,
    independence_number,
    induced_subgraph,
    monochromatic_edge,
    shortest_cycle,
)
from .io import coloring_from_json, coloring_to_json, girth_to_json, graph_from_json, graph_to_json

log = logging.getLogger(__name__)

RNG_NAME = "MT19937 (Python random.Random), Batagelj-Brandes geometric pair skipping"


class GenerationFailed(RuntimeError):
    def __init__(self, msg, attempts):
        super().__init__(msg)
        self.attempts = attempts

    @property
    def best(self):
        if not self.attempts:
            return None
        return max(self.attempts, key=lambda a: (a.get("chromatic_lb") or 0, a.get("vertices", 0)))


class CertificateError(ValueError):
    pass


def mycielskian(G: SimplicialGraph) -> SimplicialGraph:
    """Mycielski graph on ``2n + 1`` vertices: originals, shadows, apex."""
    if G.n == 0:
        raise ValueError("Mycielskian of the empty graph")
    n = G.n
    edges = list(G.edges)
    for u, v in G.edges:
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + i, 2 * n) for i in range(n))
    return SimplicialGraph(2 * n + 1, edges)


@dataclass
class GirthChromaticCertificate:
    graph: SimplicialGraph
    claimed_girth_lb: int
    claimed_chromatic_lb: int
    evidence: dict
    generator_seed: int | None = None
    generator_params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "graph": graph_to_json(self.graph),
            "claims": {"girth_lb": self.claimed_girth_lb, "chromatic_lb": self.claimed_chromatic_lb},
            "evidence": self.evidence,
            "provenance": {"seed": self.generator_seed, "params": self.generator_params,
                           "tool_version": __version__, "rng": RNG_NAME},
        }

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(
                graph=graph_from_json(obj["graph"]),
                claimed_girth_lb=int(obj["claims"]["girth_lb"]),
                claimed_chromatic_lb=int(obj["claims"]["chromatic_lb"]),
                evidence=dict(obj["evidence"]),
                generator_seed=obj.get("provenance", {}).get("seed"),
                generator_params=dict(obj.get("provenance", {}).get("params", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate: {exc!r}") from None


def exact_evidence(G, budget=DEFAULT_NODE_BUDGET) -> dict:
    chi, f = chromatic_number(G, budget)
    return {"kind": "exact", "chromatic_number": chi, "coloring": coloring_to_json(G, f),
            "attestation": {"method": "DSATUR branch and bound with clique lower bound",
                            "exhaustive": True}}


def independence_evidence(G, alpha, witness) -> dict:
    return {"kind": "independence", "n": G.n, "alpha": alpha, "independent_set": list(witness),
            "bound": -(-G.n // alpha)}


def evidence_lower_bound(evidence) -> int:
    if evidence["kind"] == "exact":
        return int(evidence["chromatic_number"])
    if evidence["kind"] == "independence":
        return int(evidence["bound"])
    raise CertificateError(f"unknown evidence kind {evidence['kind']!r}")


def generate_triangle_free(N: int, budget=DEFAULT_NODE_BUDGET) -> GirthChromaticCertificate:
    """Iterate the Mycielskian from K2 until the exact chromatic number reaches ``N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    G = complete_graph(2)
    steps = 0
    while True:
        ev = exact_evidence(G, budget)
        if ev["chromatic_number"] >= N:
            break
        G = mycielskian(G)
        steps += 1
    g = girth(G)
    assert g >= 4
    return GirthChromaticCertificate(G, 4, N, ev, None,
                                     {"generator": "mycielski", "base": "K2", "iterations": steps})


@dataclass
class GenerationConfig:
    c: float = 1.0
    initial_n: int = 50
    max_rounds: int = 8
    exact_threshold: int = 60
    search_budget: int = DEFAULT_NODE_BUDGET
    independence_budget: int = 2000
    max_vertices: int = 2000
    mycielski_shortcut: bool = True


def sample_gnp(n: int, p: float, rng: random.Random) -> list:
    """Edges of G(n, p), pairs visited in lexicographic order."""
    if p <= 0:
        return []
    if p >= 1:
        return [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = []
    lq = math.log(1.0 - p)
    v, w = 1, -1
    while v < n:
        w += 1 + int(math.log(1.0 - rng.random()) / lq)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            edges.append((w, v))
    return sorted(edges)


def delete_short_cycles(G: SimplicialGraph, M: int):
    """Delete vertices until no cycle shorter than ``M`` remains.

    Cycles are removed shortest first; from each cycle the vertex of
    largest current degree goes (smallest id on ties). Returns the induced
    subgraph on the survivors and the sorted list of survivors.
    """
    alive = set(range(G.n))
    deleted = []
    for L in range(3, M):
        # once girth >= L, a cycle found through r of length <= L is a shortest cycle
        for r in range(G.n):
            while r in alive:
                found = _cycle_through(G, r, L + 1, alive)
                if found is None:
                    break
                _, cycle = found
                victim = max(cycle, key=lambda x: (sum(1 for y in G.neighbors(x) if y in alive), -x))
                alive.discard(victim)
                deleted.append(victim)
    survivors = sorted(alive)
    H, _ = induced_subgraph(G, survivors)
    leftover = shortest_cycle(H, below=M)
    if leftover is not None:  # pragma: no cover
        raise AssertionError(f"short cycle survived deletion: {leftover}")
    return H, survivors, deleted


def generate_high_girth(M: int, N: int, seed: int, budget: GenerationConfig | None = None) -> GirthChromaticCertificate:
    """Certified graph with girth >= M and chromatic number >= N."""
    cfg = budget or GenerationConfig()
    if M < 3 or N < 2:
        raise ValueError("need M >= 3 and N >= 2")
    if M <= 4 and cfg.mycielski_shortcut:
        cert = generate_triangle_free(N, cfg.search_budget)
        cert.claimed_girth_lb = M
        cert.generator_seed = seed
        cert.generator_params = dict(cert.generator_params, requested_girth=M)
        return cert

    rng = random.Random(seed)
    attempts = []
    n = cfg.initial_n
    for rnd in range(cfg.max_rounds):
        if n > cfg.max_vertices:
            attempts.append({"round": rnd, "n": n, "status": f"skipped: n > max_vertices={cfg.max_vertices}"})
            break
        p = min(1.0, cfg.c * n ** (1.0 / M - 1.0))
        G = SimplicialGraph(n, sample_gnp(n, p, rng))
        H, survivors, deleted = delete_short_cycles(G, M)
        attempt = {"round": rnd, "n": n, "p": p, "edges": len(G.edges), "deleted": len(deleted),
                   "vertices": H.n, "girth_lb": M, "chromatic_lb": None}
        attempts.append(attempt)
        log.debug("round %d: %s", rnd, attempt)
        params = {"generator": "deletion", "M": M, "N": N, "c": cfg.c, "initial_n": cfg.initial_n,
                  "round": rnd, "n": n, "p": p, "exact_threshold": cfg.exact_threshold,
                  "deleted_vertices": len(deleted)}
        if H.n and H.n <= cfg.exact_threshold:
            try:
                ev = exact_evidence(H, cfg.search_budget)
            except BudgetExceeded as exc:
                attempt["chromatic_lb"] = exc.lower
                attempt["status"] = "chromatic search over budget"
            else:
                attempt["chromatic_lb"] = ev["chromatic_number"]
                if ev["chromatic_number"] >= N:
                    return GirthChromaticCertificate(H, M, N, ev, seed, params)
        elif H.n:
            greedy = len(_greedy_independent((1 << H.n) - 1, [H.mask(v) for v in range(H.n)]))
            if -(-H.n // greedy) < N:
                attempt["chromatic_lb"] = None
                attempt["status"] = "greedy independent set already too large"
            else:
                try:
                    alpha, witness = independence_number(H, cfg.independence_budget)
                except BudgetExceeded:
                    attempt["status"] = "independence search over budget"
                else:
                    bound = -(-H.n // alpha)
                    attempt["chromatic_lb"] = bound
                    if bound >= N:
                        return GirthChromaticCertificate(H, M, N, independence_evidence(H, alpha, witness),
                                                         seed, params)
        n *= 2
    raise GenerationFailed(f"no certified (girth >= {M}, chi >= {N}) graph within {cfg.max_rounds} rounds",
                           attempts)


@dataclass
class CertificateReport:
    ok: bool
    status: str  # "verified" | "failed" | "undecided"
    checks: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return asdict(self)


def verify_certificate(cert, budget=DEFAULT_NODE_BUDGET) -> CertificateReport:
    """Recompute every claim of ``cert`` (object or parsed JSON)."""
    if isinstance(cert, dict):
        cert = GirthChromaticCertificate.from_json(cert)
    G = cert.graph
    checks, violations = [], []
    undecided = False

    cyc = shortest_cycle(G, below=cert.claimed_girth_lb)
    if cyc is None:
        checks.append({"check": "girth", "claim": cert.claimed_girth_lb, "ok": True,
                       "message": f"no cycle shorter than {cert.claimed_girth_lb}"})
    else:
        violations.append({"check": "girth", "claim": cert.claimed_girth_lb, "cycle": cyc,
                           "message": f"cycle of length {len(cyc)} found"})

    ev = cert.evidence
    N = cert.claimed_chromatic_lb
    kind = ev.get("kind")
    try:
        if kind == "exact":
            chi = int(ev["chromatic_number"])
            f = coloring_from_json(G, ev["coloring"])
            bad = monochromatic_edge(G, f)
            if bad is not None:
                violations.append({"check": "witness_coloring", "edge": list(bad), "message": "monochromatic edge"})
            elif len(f.palette) != chi:
                violations.append({"check": "witness_coloring",
                                   "message": f"coloring uses {len(f.palette)} colors, claimed {chi}"})
            else:
                checks.append({"check": "witness_coloring", "colors": chi, "ok": True})
            if chi < N:
                violations.append({"check": "chromatic_claim", "message": f"evidence chi={chi} < claim {N}"})
            for k in sorted({N - 1, chi - 1}):
                if k < 0:
                    continue
                g = find_k_coloring(G, k, budget)
                if g is not None:
                    violations.append({"check": "refutation", "colors": k,
                                       "message": f"found a proper {k}-coloring", "coloring": list(g.assignment)})
                else:
                    checks.append({"check": "refutation", "colors": k, "ok": True,
                                   "message": f"no proper {k}-coloring exists (exhaustive)"})
        elif kind == "independence":
            alpha = int(ev["alpha"])
            witness = [int(x) for x in ev["independent_set"]]
            bad = next(((a, b) for i, a in enumerate(witness) for b in witness[i + 1:] if G.adjacent(a, b)), None)
            if bad is not None:
                violations.append({"check": "independent_set", "edge": list(bad),
                                   "message": "witness set contains an edge"})
            elif len(set(witness)) != alpha:
                violations.append({"check": "independent_set", "message": "witness size differs from alpha"})
            else:
                checks.append({"check": "independent_set", "size": alpha, "ok": True})
            true_alpha, _ = independence_number(G, budget)
            if true_alpha != alpha:
                violations.append({"check": "alpha_maximum", "message": f"alpha is {true_alpha}, not {alpha}"})
            else:
                checks.append({"check": "alpha_maximum", "alpha": alpha, "ok": True})
            if int(ev.get("n", G.n)) != G.n:
                violations.append({"check": "n", "message": "vertex count mismatch"})
            bound = -(-G.n // true_alpha) if true_alpha else 0
            if bound < N:
                violations.append({"check": "chromatic_claim", "message": f"ceil(n/alpha) = {bound} < claim {N}"})
            else:
                checks.append({"check": "chromatic_claim", "bound": bound, "ok": True})
        else:
            violations.append({"check": "evidence", "message": f"unknown evidence kind {kind!r}"})
    except BudgetExceeded as exc:
        undecided = True
        checks.append({"check": "budget", "ok": False, "message": str(exc)})
    except (KeyError, TypeError, ValueError) as exc:
        violations.append({"check": "evidence", "message": f"malformed evidence: {exc!r}"})

    if violations:
        return CertificateReport(False, "failed", checks, violations)
    if undecided:
        return CertificateReport(False, "undecided", checks, violations)
    return CertificateReport(True, "verified", checks, violations)
