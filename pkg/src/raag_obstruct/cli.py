"""Command line front end.

Every subcommand prints canonical JSON (or writes it with ``--out``).
Exit codes: 0 success/verified, 2 usage or input error, 3 undecided at
budget, 4 verification failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .cliquecolor import InvalidColoringError, lift_coloring, verify_lift
from .curves import (
    SurfaceType,
    chromatic_lower_bound_from_model,
    disjointness_graph_small,
    farey_truncation,
    ingest_curve_graph,
    is_sporadic,
    model_metadata,
)
from .embed import (
    EmbedError,
    NotAnEmbeddingError,
    extract_delta,
    minimize_supports,
    psi_from_json,
)
from .erdos import (
    GenerationConfig,
    GenerationFailed,
    GirthChromaticCertificate,
    mycielskian,
    generate_high_girth,
    verify_certificate,
)
from .graph import (
    DEFAULT_CLIQUE_CAP,
    DEFAULT_NODE_BUDGET,
    BudgetExceeded,
    GraphError,
    chromatic_number,
    clique_graph,
    complete_graph,
    enumerate_cliques,
    girth,
    independence_number,
    maximum_clique,
    shortest_cycle,
)
from .io import (
    coloring_from_json,
    coloring_to_json,
    dumps,
    girth_to_json,
    graph_from_json,
    graph_to_json,
    read_graph,
    to_dot,
)
from .obstruct import OBSTRUCTED_BY_CHROMATIC, UNDECIDED, obstruct, verdict_from_certificate, verify_verdict

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_FAILED = 0, 2, 3, 4

log = logging.getLogger("raag_obstruct")


class Exit(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code


def emit(obj, out=None):
    text = dumps(obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def write_dot(args, G, coloring=None):
    if getattr(args, "dot", None):
        Path(args.dot).write_text(to_dot(G, coloring=coloring), encoding="utf-8")


def load_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: {exc}") from None


def surface_from(args) -> SurfaceType:
    return SurfaceType(args.genus, args.punctures)


# -- subcommands -------------------------------------------------------------

def cmd_obstruct(args):
    gamma = read_graph(args.gamma)
    surface = surface_from(args)
    assumption = None
    if args.model_file:
        model, meta = ingest_curve_graph(args.model_file, surface)
        lb = chromatic_lower_bound_from_model(model, args.budget)
        meta["chromatic_lower_bound"] = lb
        if args.M_S < lb:
            raise Exit(EXIT_USAGE, f"M_S={args.M_S} contradicts the model: its chromatic number is {lb}")
        assumption = meta
    elif args.model == "disjointness":
        if not is_sporadic(surface):
            raise Exit(EXIT_USAGE, f"no built-in disjointness model for {surface.name}")
        # every curve graph vertex is isolated, so one color suffices
        model = disjointness_graph_small(surface, 1)
        assumption = dict(model_metadata(surface, "disjointness", True),
                          chromatic_lower_bound=chromatic_lower_bound_from_model(model))
    verdict = obstruct(gamma, args.M_S, surface, assumption, args.budget)
    emit(verdict.to_json(), args.out)
    return EXIT_BUDGET if verdict.verdict == UNDECIDED else EXIT_OK


def _config(args):
    return GenerationConfig(c=args.c, initial_n=args.initial_n, max_rounds=args.max_rounds,
                            exact_threshold=args.exact_threshold, search_budget=args.budget,
                            max_vertices=args.max_vertices)


def cmd_synthesize(args):
    surface = surface_from(args)
    if args.M_S < 1:
        raise Exit(EXIT_USAGE, "M_S must be >= 1")
    N = 2 ** args.M_S + 1
    try:
        cert = generate_high_girth(args.girth, N, args.seed, _config(args))
    except GenerationFailed as exc:
        emit({"status": "failed", "message": str(exc), "attempts": exc.attempts, "best": exc.best}, args.out)
        return EXIT_BUDGET
    except BudgetExceeded as exc:
        emit({"status": "failed", "message": str(exc)}, args.out)
        return EXIT_BUDGET
    verdict = verdict_from_certificate(cert, args.M_S, surface)
    bundle = {"certificate": cert.to_json(), "verdict": verdict.to_json()}
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "graph.json").write_text(dumps(graph_to_json(cert.graph)), encoding="utf-8")
        (d / "certificate.json").write_text(dumps(bundle["certificate"]), encoding="utf-8")
        (d / "verdict.json").write_text(dumps(bundle["verdict"]), encoding="utf-8")
        (d / "bundle.json").write_text(dumps(bundle), encoding="utf-8")
    write_dot(args, cert.graph)
    emit(bundle, args.out)
    return EXIT_OK


def cmd_analyze(args):
    G = read_graph(args.graph)
    out = {"n": G.n, "m": len(G.edges), "girth": girth_to_json(girth(G))}
    if G.n:
        out["max_clique"] = list(maximum_clique(G))
        out["cohomological_dimension"] = len(out["max_clique"])
    try:
        chi, f = chromatic_number(G, args.budget)
        out["chromatic_number"] = chi
        out["coloring"] = coloring_to_json(G, f)
    except BudgetExceeded as exc:
        out["chromatic_number"] = {"lower": exc.lower, "upper": exc.upper, "status": "undecided"}
    try:
        alpha, witness = independence_number(G, args.budget)
        out["independence_number"] = alpha
        out["independent_set"] = list(witness)
    except BudgetExceeded as exc:
        out["independence_number"] = {"lower": exc.lower, "upper": exc.upper, "status": "undecided"}
    try:
        out["clique_count"] = len(enumerate_cliques(G, args.cap))
    except GraphError as exc:
        out["clique_count"] = {"error": str(exc)}
    emit(out, args.out)
    return EXIT_OK


def cmd_cliquegraph(args):
    G = read_graph(args.graph)
    Gk = clique_graph(G, args.cap)
    write_dot(args, Gk.graph)
    emit(dict(graph_to_json(Gk.graph), cliques=[list(c) for c in Gk.cliques]), args.out)
    return EXIT_OK


def cmd_liftcolor(args):
    G = read_graph(args.graph)
    f = coloring_from_json(G, load_json(args.coloring))
    Gk = clique_graph(G, args.cap)
    try:
        g = lift_coloring(G, Gk, f)
    except InvalidColoringError as exc:
        raise Exit(EXIT_FAILED, str(exc)) from None
    check = verify_lift(G, Gk, f, g)
    write_dot(args, Gk.graph, g)
    emit({"clique_graph": graph_to_json(Gk.graph), "coloring": coloring_to_json(Gk.graph, g),
          "colors_used": len(g.palette), "base_colors": len(f.palette), "valid": check.ok}, args.out)
    return EXIT_OK if check.ok else EXIT_FAILED


def cmd_girth(args):
    G = read_graph(args.graph)
    cyc = shortest_cycle(G)
    emit({"girth": girth_to_json(girth(G)), "cycle": cyc}, args.out)
    return EXIT_OK


def cmd_chroma(args):
    G = read_graph(args.graph)
    try:
        chi, f = chromatic_number(G, args.budget)
    except BudgetExceeded as exc:
        emit({"status": "undecided", "lower": exc.lower, "upper": exc.upper,
              "coloring": coloring_to_json(G, exc.witness)}, args.out)
        return EXIT_BUDGET
    write_dot(args, G, f)
    emit({"chromatic_number": chi, "coloring": coloring_to_json(G, f)}, args.out)
    return EXIT_OK


def cmd_farey(args):
    G = farey_truncation(args.depth)
    meta = model_metadata(SurfaceType(1, 1), "farey", True)
    write_dot(args, G)
    emit(graph_to_json(G, meta), args.out)
    return EXIT_OK


def cmd_mycielski(args):
    G = read_graph(args.graph) if args.graph else complete_graph(2)
    for _ in range(args.iterations):
        G = mycielskian(G)
    write_dot(args, G)
    emit(graph_to_json(G), args.out)
    return EXIT_OK


def _words(psi):
    return {psi.source.label(v): psi.images[v].format() for v in range(psi.source.n)}


def cmd_reduce_embedding(args):
    psi = psi_from_json(load_json(args.psi), Path(args.psi).parent)
    trace = []
    report = {"input_images": _words(psi)}
    try:
        small = minimize_supports(psi, trace)
    except EmbedError as exc:
        report.update(status="failed", error=type(exc).__name__, message=str(exc),
                      where={k: v for k, v in exc.where.items() if v is not None})
        report["steps"] = _steps(psi, trace)
        emit(report, args.out)
        return EXIT_FAILED
    report["steps"] = _steps(psi, trace)
    report["minimized_images"] = _words(small)
    try:
        emb = extract_delta(small, args.cap)
    except NotAnEmbeddingError as exc:
        report.update(status="failed", error="NotAnEmbeddingError", message=str(exc), induced_check=exc.report)
        emit(report, args.out)
        return EXIT_FAILED
    X = small.target
    report["delta"] = {small.source.label(v): [X.label(x) for x in c] for v, c in enumerate(emb.delta)}
    report["induced_check"] = {"ok": True, "transcript": emb.transcript}
    report["status"] = "ok"
    emit(report, args.out)
    return EXIT_OK


def _steps(psi, trace):
    X, S = psi.target, psi.source
    return [{"vertex": S.label(s.vertex), "partner": S.label(s.partner),
             "generators": [X.label(x) for x in s.generators], "p": list(s.p), "q": list(s.q),
             "new_image": s.new_image.format(), "support_mass": [s.mass_before, s.mass_after]} for s in trace]


def cmd_verify(args):
    obj = load_json(args.file)
    result = {}
    ok = True
    undecided = False
    if "certificate" in obj or "claims" in obj:
        cert_obj = obj.get("certificate", obj)
        rep = verify_certificate(cert_obj, args.budget)
        result["certificate"] = rep.to_json()
        ok &= rep.ok
        undecided |= rep.status == "undecided"
    if "verdict" in obj and isinstance(obj["verdict"], dict):
        vr = verify_verdict(obj["verdict"], args.budget)
        result["verdict"] = vr
        ok &= vr["ok"]
        cert = GirthChromaticCertificate.from_json(obj["certificate"]) if "certificate" in obj else None
        if cert is not None:
            same = graph_from_json(obj["verdict"]["gamma"]) == cert.graph
            result["bundle_consistent"] = same
            ok &= same
            if obj["verdict"]["verdict"] == OBSTRUCTED_BY_CHROMATIC:
                ok &= cert.claimed_chromatic_lb > obj["verdict"]["N_S"]
    elif "verdict" in obj:
        vr = verify_verdict(obj, args.budget)
        result["verdict"] = vr
        ok &= vr["ok"]
    if not result:
        raise Exit(EXIT_USAGE, f"{args.file}: not a certificate, verdict or bundle")
    result["ok"] = bool(ok)
    emit(result, args.out)
    if ok:
        return EXIT_OK
    return EXIT_BUDGET if undecided else EXIT_FAILED


# -- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="raag-obstruct", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True, dot=True):
        if graph:
            sp.add_argument("graph", help="graph file (JSON or edge list)")
        sp.add_argument("--out", help="write JSON here instead of stdout")
        if dot:
            sp.add_argument("--dot", help="also write a DOT rendering to this path")
        sp.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, help="search node budget")
        sp.add_argument("--cap", type=int, default=DEFAULT_CLIQUE_CAP, help="clique enumeration cap")

    def surface(sp, required):
        sp.add_argument("--genus", type=int, required=required, default=None if required else 1)
        sp.add_argument("--punctures", type=int, required=required, default=None if required else 1)

    sp = sub.add_parser("obstruct", help="run both non-embedding tests on a graph")
    sp.add_argument("gamma", help="graph file")
    sp.add_argument("--M-S", dest="M_S", type=int, required=True,
                    help="asserted number of colors of a proper coloring of the curve graph")
    surface(sp, True)
    sp.add_argument("--model", choices=["asserted", "disjointness"], default="asserted")
    sp.add_argument("--model-file", help="curve-graph fragment to record and check M_S against")
    common(sp, graph=False, dot=False)
    sp.set_defaults(func=cmd_obstruct)

    sp = sub.add_parser("synthesize", help="build a certified obstructed graph of given girth")
    sp.add_argument("--girth", type=int, required=True)
    sp.add_argument("--M-S", dest="M_S", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    surface(sp, False)
    sp.add_argument("--out-dir", help="also write graph/certificate/verdict/bundle files here")
    sp.add_argument("--c", type=float, default=GenerationConfig.c)
    sp.add_argument("--initial-n", type=int, default=GenerationConfig.initial_n)
    sp.add_argument("--max-rounds", type=int, default=GenerationConfig.max_rounds)
    sp.add_argument("--exact-threshold", type=int, default=GenerationConfig.exact_threshold)
    sp.add_argument("--max-vertices", type=int, default=GenerationConfig.max_vertices)
    common(sp, graph=False)
    sp.set_defaults(func=cmd_synthesize)

    for name, func, hlp in [("analyze", cmd_analyze, "girth, cliques, chi and alpha of a graph"),
                            ("cliquegraph", cmd_cliquegraph, "clique graph of a graph"),
                            ("girth", cmd_girth, "girth and a shortest cycle"),
                            ("chroma", cmd_chroma, "exact chromatic number")]:
        sp = sub.add_parser(name, help=hlp)
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("liftcolor", help="lift a coloring to the clique graph")
    sp.add_argument("graph", help="graph file (JSON or edge list)")
    sp.add_argument("coloring", help="coloring JSON")
    common(sp, graph=False)
    sp.set_defaults(func=cmd_liftcolor)

    sp = sub.add_parser("farey", help="truncated Farey graph")
    sp.add_argument("depth", type=int)
    common(sp, graph=False)
    sp.set_defaults(func=cmd_farey)

    sp = sub.add_parser("mycielski", help="iterated Mycielskian (of K2 by default)")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--iterations", type=int, default=1)
    common(sp, graph=False)
    sp.set_defaults(func=cmd_mycielski)

    sp = sub.add_parser("reduce-embedding", help="minimize supports of a clique-supported map and extract delta")
    sp.add_argument("psi", help="map JSON")
    common(sp, graph=False, dot=False)
    sp.set_defaults(func=cmd_reduce_embedding)

    sp = sub.add_parser("verify", help="re-check a certificate, verdict or synthesis bundle")
    sp.add_argument("file")
    common(sp, graph=False, dot=False)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except Exit as exc:
        if str(exc):
            print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
