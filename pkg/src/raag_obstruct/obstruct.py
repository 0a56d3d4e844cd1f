"""One-sided non-embedding tests for A(Γ) -> Mod(S).

If Mod(S) contains A(Γ), then Γ is an induced subgraph of the clique graph
of the curve graph, whose chromatic number is at most ``2**M_S`` when the
curve graph is ``M_S``-colorable. So ``chi(Γ) > 2**M_S`` rules out an
embedding. Independently, the largest clique of Γ cannot exceed the maximal
abelian rank of Mod(S). Neither test ever shows that an embedding exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cliquecolor import clique_chromatic_upper_bound
from .curves import SurfaceType, surface_rank
from .erdos import GirthChromaticCertificate, evidence_lower_bound, exact_evidence, verify_certificate
from .graph import DEFAULT_NODE_BUDGET, BudgetExceeded, SimplicialGraph, coloring_is_k, maximum_clique
from .io import coloring_to_json, graph_from_json, graph_to_json

OBSTRUCTED_BY_CHROMATIC = "OBSTRUCTED_BY_CHROMATIC"
OBSTRUCTED_BY_RANK = "OBSTRUCTED_BY_RANK"
NOT_OBSTRUCTED = "NOT_OBSTRUCTED_BY_THESE_TESTS"
UNDECIDED = "UNDECIDED"

ONE_SIDED_NOTE = ("One-sided test: a verdict other than OBSTRUCTED_* does not assert that "
                  "A(Gamma) embeds in Mod(S).")


def chromatic_evidence(G: SimplicialGraph, budget=DEFAULT_NODE_BUDGET) -> dict:
    """Exact chi when the search finishes, otherwise proven bounds with witnesses."""
    try:
        return exact_evidence(G, budget)
    except BudgetExceeded as exc:
        try:
            clique = maximum_clique(G, budget)
        except BudgetExceeded as partial:
            clique = partial.witness
        return {"kind": "bounds", "lower": len(clique), "clique": list(clique),
                "upper": exc.upper, "coloring": coloring_to_json(G, exc.witness)}


def chromatic_bounds(evidence) -> tuple:
    if evidence["kind"] == "bounds":
        return int(evidence["lower"]), int(evidence["upper"])
    lb = evidence_lower_bound(evidence)
    return lb, (lb if evidence["kind"] == "exact" else None)


@dataclass
class ObstructionVerdict:
    surface: SurfaceType
    model_assumption: dict
    M_S: int
    N_S: int
    gamma: SimplicialGraph
    gamma_chromatic_evidence: dict
    rank_check: dict
    chromatic_check: dict
    verdict: str

    def to_json(self) -> dict:
        return {
            "surface": self.surface.to_json(),
            "model_assumption": self.model_assumption,
            "M_S": self.M_S,
            "N_S": self.N_S,
            "gamma": graph_to_json(self.gamma),
            "gamma_chromatic_evidence": self.gamma_chromatic_evidence,
            "rank_check": self.rank_check,
            "chromatic_check": self.chromatic_check,
            "verdict": self.verdict,
            "note": ONE_SIDED_NOTE,
        }


def _decide(gamma, M_S, surface, evidence, model_assumption):
    if M_S < 1:
        raise ValueError("M_S must be >= 1")
    N_S = clique_chromatic_upper_bound(M_S)
    lower, upper = chromatic_bounds(evidence)
    if lower > N_S:
        chromatic = True
    elif upper is not None and upper <= N_S:
        chromatic = False
    else:
        chromatic = None
    omega = len(maximum_clique(gamma)) if gamma.n else 0
    rank = surface_rank(surface)
    rank_check = {"max_clique": omega, "surface_rank": rank, "obstructed": omega > rank}
    chromatic_check = {"chromatic_lower": lower, "chromatic_upper": upper, "N_S": N_S, "obstructed": chromatic}
    if chromatic:
        verdict = OBSTRUCTED_BY_CHROMATIC
    elif rank_check["obstructed"]:
        verdict = OBSTRUCTED_BY_RANK
    elif chromatic is None:
        verdict = UNDECIDED
    else:
        verdict = NOT_OBSTRUCTED
    return ObstructionVerdict(surface, model_assumption, M_S, N_S, gamma, evidence, rank_check,
                              chromatic_check, verdict)


def default_assumption(surface: SurfaceType, M_S: int) -> dict:
    return {"surface": surface.to_json(), "model": "asserted",
            "statement": f"the curve graph of {surface.name} admits a proper {M_S}-coloring",
            "verified": False}


def obstruct(gamma: SimplicialGraph, M_S: int, surface: SurfaceType, model_assumption=None,
             budget=DEFAULT_NODE_BUDGET) -> ObstructionVerdict:
    evidence = chromatic_evidence(gamma, budget) if gamma.n else exact_evidence(gamma)
    return _decide(gamma, M_S, surface, evidence, model_assumption or default_assumption(surface, M_S))


def verdict_from_certificate(cert: GirthChromaticCertificate, M_S: int, surface: SurfaceType,
                             model_assumption=None) -> ObstructionVerdict:
    return _decide(cert.graph, M_S, surface, cert.evidence, model_assumption or default_assumption(surface, M_S))


def verify_verdict(obj: dict, budget=DEFAULT_NODE_BUDGET) -> dict:
    """Recompute a verdict from its own inputs and re-check its evidence."""
    problems = []
    gamma = graph_from_json(obj["gamma"])
    surface = SurfaceType(**obj["surface"])
    M_S = int(obj["M_S"])
    if int(obj["N_S"]) != clique_chromatic_upper_bound(M_S):
        problems.append(f"N_S={obj['N_S']} but 2^M_S = {clique_chromatic_upper_bound(M_S)}")
    ev = obj["gamma_chromatic_evidence"]
    checks = []
    if ev.get("kind") == "bounds":
        from .io import coloring_from_json
        f = coloring_from_json(gamma, ev["coloring"])
        if not coloring_is_k(gamma, f, int(ev["upper"])):
            problems.append("upper-bound coloring is not a proper coloring with the stated number of colors")
        clique = [int(x) for x in ev["clique"]]
        if len(clique) != int(ev["lower"]) or not gamma.is_clique(clique):
            problems.append("lower-bound clique witness is invalid")
    else:
        lower = evidence_lower_bound(ev)
        claim = lower
        if obj["verdict"] == OBSTRUCTED_BY_CHROMATIC:
            claim = int(obj["N_S"]) + 1
        rep = verify_certificate(GirthChromaticCertificate(gamma, 0, claim, ev), budget)
        checks = rep.checks + rep.violations
        if not rep.ok:
            problems.append(f"chromatic evidence {rep.status}: {rep.violations or rep.checks}")
    redo = _decide(gamma, M_S, surface, ev, obj.get("model_assumption"))
    if redo.verdict != obj["verdict"]:
        problems.append(f"recomputed verdict {redo.verdict} != recorded {obj['verdict']}")
    if redo.rank_check != obj.get("rank_check"):
        problems.append(f"rank check mismatch: recomputed {redo.rank_check}")
    return {"ok": not problems, "problems": problems, "checks": checks, "verdict": redo.verdict}
