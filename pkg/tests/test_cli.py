import json

import pytest

from raag_obstruct.cli import main
from raag_obstruct.curves import farey_truncation
from raag_obstruct.erdos import mycielskian
from raag_obstruct.graph import complete_graph, cycle_graph, empty_graph, path_graph
from raag_obstruct.io import write_graph, write_json


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def graphs(tmp_path):
    paths = {}
    for name, G in {"k2": complete_graph(2), "c5": cycle_graph(5), "p3": path_graph(3),
                    "grotzsch": mycielskian(cycle_graph(5)), "free": empty_graph(3)}.items():
        paths[name] = tmp_path / f"{name}.json"
        write_graph(paths[name], G)
    return paths


def test_analyze_and_friends(capsys, graphs):
    code, out, _ = run(capsys, "analyze", graphs["grotzsch"])
    data = json.loads(out)
    assert code == 0 and data["chromatic_number"] == 4 and data["girth"] == 4
    assert data["independence_number"] == 5 and data["cohomological_dimension"] == 2
    code, out, _ = run(capsys, "girth", graphs["p3"])
    assert code == 0 and json.loads(out) == {"girth": None, "cycle": None}
    code, out, _ = run(capsys, "chroma", graphs["c5"])
    assert json.loads(out)["chromatic_number"] == 3


def test_chroma_budget_exit(capsys, tmp_path):
    G = mycielskian(mycielskian(mycielskian(cycle_graph(5))))
    write_graph(tmp_path / "big.json", G)
    code, out, _ = run(capsys, "chroma", tmp_path / "big.json", "--budget", "10")
    assert code == 3 and json.loads(out)["status"] == "undecided"


def test_cliquegraph_and_dot(capsys, graphs, tmp_path):
    dot = tmp_path / "y.dot"
    code, out, _ = run(capsys, "cliquegraph", graphs["p3"], "--dot", dot)
    data = json.loads(out)
    assert code == 0 and data["n"] == 5 and len(data["edges"]) == 6
    assert dot.read_text().startswith("graph G {")


def test_liftcolor(capsys, graphs, tmp_path):
    write_json(tmp_path / "f.json", {"colors": {"0": 1, "1": 2, "2": 1}})
    code, out, _ = run(capsys, "liftcolor", graphs["p3"], tmp_path / "f.json")
    data = json.loads(out)
    assert code == 0 and data["valid"] and data["colors_used"] == 3
    write_json(tmp_path / "bad.json", {"colors": {"0": 1, "1": 1, "2": 1}})
    code, _, err = run(capsys, "liftcolor", graphs["p3"], tmp_path / "bad.json")
    assert code == 4 and "monochromatic" in err


def test_farey_and_mycielski(capsys):
    code, out, _ = run(capsys, "farey", 1)
    data = json.loads(out)
    assert code == 0 and data["n"] == 4 and len(data["edges"]) == 5
    assert data["metadata"]["model"] == "farey"
    code, out, _ = run(capsys, "mycielski", "--iterations", 2)
    assert json.loads(out)["n"] == 11


def test_usage_errors(capsys, tmp_path):
    (tmp_path / "loop.txt").write_text("2 1\n1 1\n")
    code, _, err = run(capsys, "analyze", tmp_path / "loop.txt")
    assert code == 2 and "self-loop" in err
    code, _, _ = run(capsys, "analyze", tmp_path / "missing.json")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["obstruct"])
    assert info.value.code == 2
    write_json(tmp_path / "junk.json", {"hello": 1})
    code, _, _ = run(capsys, "verify", tmp_path / "junk.json")
    assert code == 2


def test_obstruct_verdicts(capsys, graphs, tmp_path):
    code, out, _ = run(capsys, "obstruct", graphs["grotzsch"], "--M-S", 1, "--genus", 2, "--punctures", 0)
    v = json.loads(out)
    assert code == 0 and v["verdict"] == "OBSTRUCTED_BY_CHROMATIC" and v["N_S"] == 2
    assert v["model_assumption"]["verified"] is False
    code, out, _ = run(capsys, "obstruct", graphs["c5"], "--M-S", 2, "--genus", 2, "--punctures", 0)
    assert json.loads(out)["verdict"] == "NOT_OBSTRUCTED_BY_THESE_TESTS"
    assert "does not assert" in json.loads(out)["note"]
    code, out, _ = run(capsys, "obstruct", graphs["k2"], "--M-S", 1, "--genus", 1, "--punctures", 1,
                       "--model", "disjointness")
    assert json.loads(out)["verdict"] == "OBSTRUCTED_BY_RANK"
    code, _, _ = run(capsys, "obstruct", graphs["k2"], "--M-S", 1, "--genus", 2, "--punctures", 0,
                     "--model", "disjointness")
    assert code == 2


def test_obstruct_with_model_file(capsys, graphs, tmp_path):
    model = tmp_path / "f2.json"
    write_graph(model, farey_truncation(2), {"model": "farey"})
    args = ["obstruct", graphs["c5"], "--genus", 1, "--punctures", 1, "--model-file", model]
    code, _, err = run(capsys, *args, "--M-S", 2)
    assert code == 2 and "contradicts" in err
    code, out, _ = run(capsys, *args, "--M-S", 3)
    v = json.loads(out)
    assert code == 0 and v["model_assumption"]["verified"] is True
    assert v["model_assumption"]["chromatic_lower_bound"] == 3


def test_obstruct_undecided_exit(capsys, tmp_path):
    G = mycielskian(mycielskian(mycielskian(cycle_graph(5))))  # chi = 6
    write_graph(tmp_path / "big.json", G)
    code, out, _ = run(capsys, "obstruct", tmp_path / "big.json", "--M-S", 2, "--genus", 2,
                       "--punctures", 0, "--budget", 10)
    v = json.loads(out)
    assert code == 3 and v["verdict"] == "UNDECIDED"
    assert v["gamma_chromatic_evidence"]["kind"] == "bounds"


def test_synthesize_verify_round_trip(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["synthesize", "--girth", 4, "--M-S", 1, "--seed", 3]
    assert run(capsys, *argv, "--out", a, "--out-dir", tmp_path / "d")[0] == 0
    assert run(capsys, *argv, "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert {p.name for p in (tmp_path / "d").iterdir()} == {"graph.json", "certificate.json",
                                                            "verdict.json", "bundle.json"}
    code, out, _ = run(capsys, "verify", a)
    assert code == 0 and json.loads(out)["ok"]
    for name in ("certificate.json", "verdict.json"):
        code, out, _ = run(capsys, "verify", tmp_path / "d" / name)
        assert code == 0, out


def test_verify_detects_tampering(capsys, tmp_path):
    a = tmp_path / "a.json"
    run(capsys, "synthesize", "--girth", 4, "--M-S", 1, "--seed", 3, "--out", a)
    bundle = json.loads(a.read_text())
    bundle["certificate"]["claims"]["girth_lb"] = 6
    write_json(tmp_path / "t1.json", bundle)
    assert run(capsys, "verify", tmp_path / "t1.json")[0] == 4
    bundle = json.loads(a.read_text())
    bundle["verdict"]["verdict"] = "NOT_OBSTRUCTED_BY_THESE_TESTS"
    write_json(tmp_path / "t2.json", bundle)
    assert run(capsys, "verify", tmp_path / "t2.json")[0] == 4
    bundle = json.loads(a.read_text())
    bundle["verdict"]["gamma"] = {"n": 2, "edges": [[0, 1]]}
    write_json(tmp_path / "t3.json", bundle)
    assert run(capsys, "verify", tmp_path / "t3.json")[0] == 4


def test_synthesize_failure_exit(capsys):
    code, out, _ = run(capsys, "synthesize", "--girth", 6, "--M-S", 3, "--seed", 1,
                       "--initial-n", 10, "--max-rounds", 1)
    assert code == 3 and json.loads(out)["status"] == "failed"


def test_reduce_embedding(capsys, tmp_path):
    K2 = complete_graph(2).relabeled(["x1", "x2"])
    ok = {"source": {"n": 2, "edges": [[0, 1]], "labels": ["v", "w"]},
          "target": {"n": 2, "edges": [[0, 1]], "labels": ["x1", "x2"]},
          "images": {"v": "x1 x2", "w": "x1 x2^2"}}
    write_json(tmp_path / "ok.json", ok)
    code, out, _ = run(capsys, "reduce-embedding", tmp_path / "ok.json")
    rep = json.loads(out)
    assert code == 0 and rep["delta"] == {"v": ["x2"], "w": ["x1", "x2"]}
    assert rep["steps"][0]["p"] == [1, 1] and rep["minimized_images"]["v"] == "x2^-1"
    write_graph(tmp_path / "x.json", K2)
    bad = {"source": {"n": 2, "edges": []}, "target": "x.json", "images": {"0": "x1", "1": "x2"}}
    write_json(tmp_path / "bad.json", bad)
    code, out, _ = run(capsys, "reduce-embedding", tmp_path / "bad.json")
    rep = json.loads(out)
    assert code == 4 and rep["error"] == "NotAnEmbeddingError"
    assert rep["induced_check"]["violations"][0]["kind"] == "non_edge_not_reflected"


def test_obstruct_small_examples(capsys, graphs, tmp_path):
    surface = ["--genus", 1, "--punctures", 1]
    code, out, _ = run(capsys, "obstruct", graphs["c5"], "--M-S", 1, *surface)
    assert json.loads(out)["verdict"] == "OBSTRUCTED_BY_CHROMATIC"
    code, out, _ = run(capsys, "obstruct", graphs["k2"], "--M-S", 1, *surface)
    assert json.loads(out)["verdict"] == "OBSTRUCTED_BY_RANK"
    write_graph(tmp_path / "one.json", empty_graph(1))
    code, out, _ = run(capsys, "obstruct", tmp_path / "one.json", "--M-S", 1, *surface)
    assert code == 0 and json.loads(out)["verdict"] == "NOT_OBSTRUCTED_BY_THESE_TESTS"


def test_synthesize_girth_five(capsys, tmp_path):
    out = tmp_path / "g5.json"
    assert run(capsys, "synthesize", "--girth", 5, "--M-S", 1, "--seed", 1, "--out", out)[0] == 0
    bundle = json.loads(out.read_text())
    assert bundle["certificate"]["claims"] == {"girth_lb": 5, "chromatic_lb": 3}
    assert bundle["verdict"]["verdict"] == "OBSTRUCTED_BY_CHROMATIC"
    assert run(capsys, "verify", out)[0] == 0
