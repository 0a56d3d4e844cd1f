import itertools
import json
import random

import pytest

from oracles import random_graphs
from raag_obstruct.embed import (
    CliqueSupportMap,
    DegenerateImageError,
    EmbedError,
    LinkConditionError,
    NotAnEmbeddingError,
    UnequalSupportsError,
    check_clique_support_hom,
    commutation_graph,
    exponent_vector,
    extract_delta,
    link_condition,
    minimize_supports,
    psi_from_json,
    psi_to_json,
    reduce_equal_supports,
)
from raag_obstruct.curves import farey_adjacent, farey_truncation, farey_vertices
from raag_obstruct.graph import (
    SimplicialGraph,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_cliques,
    induced_subgraph,
    path_graph,
)
from raag_obstruct.raag import RaagWord

EXPS = (-2, -1, 1, 2)


def X_(k):
    return complete_graph(k).relabeled([f"x{i + 1}" for i in range(k)])


def psi_of(source, target, texts):
    return CliqueSupportMap(source, target, [RaagWord.parse(target, t) for t in texts])


def test_hom_check_examples():
    X = X_(2)
    assert check_clique_support_hom(psi_of(complete_graph(2), X, ["x1", "x2"]))
    X3 = path_graph(3).relabeled(["x1", "x2", "x3"])
    bad = check_clique_support_hom(psi_of(empty_graph(1), X3, ["x1 x3"]))
    assert not bad and "not a clique" in bad.reason
    P = path_graph(3)
    assert check_clique_support_hom(psi_of(P, P.relabeled(["x1", "x2", "x3"]), ["x1", "x2", "x3"]))
    noncomm = check_clique_support_hom(psi_of(complete_graph(2), X3, ["x1", "x3"]))
    assert not noncomm and noncomm.edge == (0, 1)


def test_reduce_k2_example():
    psi = psi_of(empty_graph(2), X_(2), ["x1 x2", "x1 x2^2"])
    trace = []
    out = reduce_equal_supports(psi, 0, 1, trace=trace)
    assert out.images[0] == RaagWord.parse(X_(2), "x2^-1")
    assert trace[0].p == (1, 1) and trace[0].q == (1, 2)
    assert trace[0].mass_after < trace[0].mass_before


def test_reduce_k1_collapse():
    psi = psi_of(empty_graph(2), X_(1), ["x1^2", "x1^3"])
    with pytest.raises(DegenerateImageError, match="degenerate"):
        reduce_equal_supports(psi, 0, 1)


def test_reduce_k3_example():
    X = X_(3)
    psi = psi_of(empty_graph(2), X, ["x1^2 x2 x3", "x1 x2 x3"])
    out = reduce_equal_supports(psi, 0, 1)
    assert out.images[0] == RaagWord.parse(X, "x2^-1 x3^-1")
    expanded = (RaagWord.parse(X, "x1^2 x2 x3") * RaagWord.parse(X, "x1 x2 x3") ** -2).normal_form()
    assert out.images[0] == expanded


def test_reduce_rejects_unequal_supports():
    psi = psi_of(empty_graph(2), X_(2), ["x1", "x2"])
    with pytest.raises(UnequalSupportsError):
        reduce_equal_supports(psi, 0, 1)


def test_link_condition():
    P = path_graph(3)  # 0 - 1 - 2
    assert link_condition(P, 1, 0) == 2
    assert link_condition(P, 0, 2) is None
    # equal supports on an edge where the other neighbour blocks v
    G = SimplicialGraph(3, [(0, 1), (1, 2)])
    psi = psi_of(G, X_(2), ["x1 x2", "x1 x2^2", "x1"])
    with pytest.raises(LinkConditionError) as info:
        reduce_equal_supports(psi, 1, 0)
    assert info.value.where["vertex"] == 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_reduction_formula_grid(k):
    """p_i q_1 - q_i p_1 against the word computed by the group."""
    X = X_(k)
    gens = tuple(range(k))
    Gamma = empty_graph(2)
    count = 0
    for p in itertools.product(EXPS, repeat=k):
        for q in itertools.product(EXPS, repeat=k):
            psi = CliqueSupportMap(Gamma, X, [RaagWord(X, zip(gens, p)), RaagWord(X, zip(gens, q))])
            want = tuple(p[i] * q[0] - q[i] * p[0] for i in range(k))
            direct = (psi.images[0] ** q[0] * psi.images[1] ** -p[0]).normal_form()
            assert exponent_vector(direct, gens) == want
            assert want[0] == 0
            if not any(want):
                with pytest.raises(DegenerateImageError):
                    reduce_equal_supports(psi, 0, 1)
            else:
                out = reduce_equal_supports(psi, 0, 1)
                assert exponent_vector(out.images[0], gens) == want
                assert out.images[0] == direct
                assert out.support(0) == tuple(i for i in gens if want[i])
            count += 1
    assert count == 16 ** k


def test_minimize_examples():
    psi = psi_of(empty_graph(2), X_(2), ["x1", "x2"])
    assert minimize_supports(psi) is psi
    k2 = psi_of(empty_graph(2), X_(2), ["x1 x2", "x1 x2^2"])
    trace = []
    out = minimize_supports(k2, trace)
    assert len(trace) == 1 and out.support(0) == (1,) and out.support(1) == (0, 1)
    # the third image is a power of x2, and so is the reduced first one
    three = psi_of(empty_graph(3), X_(2), ["x1 x2", "x1 x2^2", "x2"])
    with pytest.raises(DegenerateImageError):
        minimize_supports(three)


def test_minimize_rejects_non_hom():
    X3 = path_graph(3)
    with pytest.raises(EmbedError):
        minimize_supports(psi_of(complete_graph(2), X3, ["0", "2"]))


def _random_map(rng):
    X = random_graphs(1, 6, seed=rng.randrange(10**9), n_min=2)[0]
    cliques = [c for c in enumerate_cliques(X) if len(c) >= 1]
    m = rng.randint(2, 5)
    supports = [rng.choice(cliques) for _ in range(m)]
    # Γ edges only where supports span a clique, so images commute
    edges = [(a, b) for a, b in itertools.combinations(range(m), 2)
             if X.is_clique(set(supports[a]) | set(supports[b])) and rng.random() < 0.6]
    Gamma = SimplicialGraph(m, edges)
    images = [RaagWord(X, [(x, rng.choice(EXPS)) for x in K]) for K in supports]
    return CliqueSupportMap(Gamma, X, images)


def test_minimize_random_maps():
    rng = random.Random(99)
    outcomes = {"ok": 0, "degenerate": 0, "link": 0}
    while outcomes["ok"] < 100:
        psi = _random_map(rng)
        assert check_clique_support_hom(psi)
        trace = []
        try:
            out = minimize_supports(psi, trace)
        except DegenerateImageError:
            outcomes["degenerate"] += 1
            continue
        except LinkConditionError:
            outcomes["link"] += 1
            continue
        sup = [out.support(v) for v in range(out.source.n)]
        assert len(set(sup)) == len(sup)
        assert check_clique_support_hom(out)
        masses = [s.mass_before for s in trace] + [out.support_mass()]
        assert all(a > b for a, b in zip(masses, masses[1:]))
        outcomes["ok"] += 1
    assert outcomes["ok"] == 100


def test_extract_delta_k2_example():
    psi = minimize_supports(psi_of(complete_graph(2), X_(2), ["x1 x2", "x1 x2^2"]))
    emb = extract_delta(psi)
    assert emb.delta == ((1,), (0, 1))
    Xk = emb.target_clique_graph.graph
    a, b = emb.vertex_map()
    assert Xk.adjacent(a, b)


def test_extract_delta_free_group_into_z2():
    psi = psi_of(empty_graph(2), X_(2), ["x1", "x2"])
    with pytest.raises(NotAnEmbeddingError, match="not injective / not an embedding") as info:
        extract_delta(psi)
    kinds = [v["kind"] for v in info.value.report["violations"]]
    assert kinds == ["non_edge_not_reflected"]


def test_extract_delta_reports_collision():
    psi = psi_of(empty_graph(2), X_(1), ["x1", "x1^2"])
    with pytest.raises(NotAnEmbeddingError) as info:
        extract_delta(psi)
    assert info.value.report["violations"][0]["kind"] == "not_injective"


def test_extract_delta_singleton_embeddings():
    C5 = cycle_graph(5)
    psi = CliqueSupportMap(C5, C5, [RaagWord.generator(C5, v) for v in range(5)])
    assert extract_delta(psi).delta == tuple((v,) for v in range(5))
    rng = random.Random(5)
    for X in random_graphs(60, 8, seed=17):
        S = sorted(rng.sample(range(X.n), rng.randint(1, X.n)))
        Gamma, _ = induced_subgraph(X, S)
        psi = CliqueSupportMap(Gamma, X, [RaagWord.generator(X, x, rng.choice(EXPS)) for x in S])
        emb = extract_delta(psi)
        assert emb.delta == tuple((x,) for x in S)
        Xk = emb.target_clique_graph
        for u, v in itertools.combinations(range(Gamma.n), 2):
            assert Gamma.adjacent(u, v) == Xk.graph.adjacent(*(Xk.vertex_of(emb.delta[w]) for w in (u, v)))


def test_commutation_graph():
    assert commutation_graph([1, 2, 3], lambda a, b: a != b) == complete_graph(3)
    assert commutation_graph("abc", [(0, 1), (1, 2)]) == path_graph(3)
    vs = farey_vertices(1)
    assert commutation_graph(vs, farey_adjacent, [v.label() for v in vs]) == farey_truncation(1)
    K2 = complete_graph(2)
    words = [RaagWord.generator(K2, 0), RaagWord.generator(K2, 1)]
    assert commutation_graph(words) == K2
    with pytest.raises(ValueError, match="reflexive"):
        commutation_graph([1, 2], lambda a, b: True)
    with pytest.raises(ValueError, match="symmetric"):
        commutation_graph([1, 2], lambda a, b: a < b)


def test_psi_json_round_trip(tmp_path):
    psi = psi_of(complete_graph(2).relabeled(["v", "w"]), X_(2), ["x1 x2", "x1 x2^2"])
    obj = psi_to_json(psi)
    assert psi_from_json(json.loads(json.dumps(obj))) == psi
    from raag_obstruct.io import write_graph

    write_graph(tmp_path / "x.json", psi.target)
    obj["target"] = "x.json"
    assert psi_from_json(obj, tmp_path) == psi
    del obj["images"]["w"]
    with pytest.raises(ValueError, match="no image"):
        psi_from_json(obj, tmp_path)
