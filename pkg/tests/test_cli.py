import csv
import io
import json
import subprocess
import sys

import pytest

import linkcomp.embedding as embedding
from linkcomp.cli import main
from linkcomp.embedding import validate_genus0
from linkcomp.io import GraphFile, dumps, loads_graph

from conftest import path, star


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(dumps(obj) if not isinstance(obj, str) else obj, encoding="utf-8")
    return str(p)


@pytest.fixture
def star3_file(tmp_path):
    return write(tmp_path, "star.json", GraphFile(star(3)).to_json())


def test_suspend_then_compute(capsys, tmp_path, star3_file):
    code, out, _ = run(capsys, "suspend", star3_file)
    assert code == 0
    gf = loads_graph(out)
    assert gf.apex == 4 and gf.rotation is not None
    k23 = write(tmp_path, "k23.json", out)
    values = {}
    for method in ("reduce", "bicycle", "strand", "tutte", "blocks", "auto"):
        code, out, _ = run(capsys, "compute", k23, "--method", method)
        assert code == 0
        values[method] = json.loads(out)["l"]
    assert set(values.values()) == {3}


def test_compute_tree_any_method(capsys, tmp_path):
    f = write(tmp_path, "t.json", GraphFile(path(7)).to_json())
    for method in ("strand", "tutte", "bicycle", "blocks", "auto"):
        code, out, _ = run(capsys, "compute", f, "--method", method)
        assert (code, json.loads(out)["l"]) == (0, 1)
    code, _, err = run(capsys, "compute", f, "--method", "reduce")
    assert code == 1 and "apex" in err


def test_compute_certificate(capsys, tmp_path):
    f = write(tmp_path, "c.json", {"n": 3, "edges": [[0, 1], [1, 2], [2, 0]], "rotation": [[0, 5], [2, 1], [4, 3]]})
    code, out, _ = run(capsys, "compute", f, "--method", "strand", "--certificate")
    obj = json.loads(out)
    assert obj == {"l": 1, "method": "strand", "certificate": {"strands": [[0, 1, 4, 5, 2, 3]], "isolated": 0}}


def test_tutte_cap_exit_code(capsys, tmp_path):
    f = write(tmp_path, "big.json", GraphFile(path(31)).to_json())
    code, out, err = run(capsys, "compute", f, "--method", "tutte")
    assert code == 1 and out == "" and "cap" in err


def test_malformed_input_exit_2(capsys, tmp_path):
    f = write(tmp_path, "bad.json", '{"n": 2, "edges": [[0, 7]]}')
    assert run(capsys, "compute", f)[0] == 2
    assert run(capsys, "compute", str(tmp_path / "missing.json"))[0] == 2


def test_reduce_star5(capsys, tmp_path):
    f = write(tmp_path, "s5.json", GraphFile(star(5)).to_json())
    code, out, _ = run(capsys, "reduce", f, "--trace")
    obj = json.loads(out)
    assert code == 0 and obj["type3_count"] == 4 and obj["l"] == 5
    trace_file = write(tmp_path, "trace.json", out)
    code, out, _ = run(capsys, "replay", trace_file)
    assert code == 0 and json.loads(out)["ok"] is True
    obj["type3_count"] = 2
    code, _, _ = run(capsys, "replay", write(tmp_path, "bad_trace.json", obj))
    assert code == 1


def test_normalize_doubled_edge(capsys, tmp_path):
    g = {"n": 5, "edges": [[0, 1], [1, 2], [2, 3], [4, 0], [4, 0], [4, 3], [4, 1]], "apex": 4}
    f = write(tmp_path, "apex.json", g)
    code, out, _ = run(capsys, "normalize", f)
    obj = json.loads(out)
    assert code == 0
    assert obj["trace"][0]["kind"] == "ParallelPairDeletion"
    gf = loads_graph(dumps(obj["graph"]))
    validate_genus0(gf.graph, gf.rotation)
    code, out, _ = run(capsys, "compute", write(tmp_path, "g.json", obj["graph"]), "--method", "bicycle")
    assert json.loads(out)["l"] == obj["l"]
    code, out, _ = run(capsys, "replay", write(tmp_path, "n.json", obj))
    assert code == 0 and json.loads(out)["kind"] == "normalization"


def test_normalize_needs_apex(capsys, tmp_path):
    f = write(tmp_path, "t.json", GraphFile(path(3)).to_json())
    assert run(capsys, "normalize", f)[0] == 2
    assert run(capsys, "normalize", f, "--apex", "9")[0] == 2


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "tree", "--n", "2", "--seed", "5")
    assert out == '{"n":2,"edges":[[0,1]]}\n'
    code, a, _ = run(capsys, "gen", "plane", "--n", "5", "--extra-edges", "3", "--seed", "9")
    code, b, _ = run(capsys, "gen", "plane", "--n", "5", "--extra-edges", "3", "--seed", "9")
    assert code == 0 and a == b
    gf = loads_graph(a)
    assert gf.graph.m == 4 + 3
    validate_genus0(gf.graph, gf.rotation)
    assert run(capsys, "gen", "tree", "--n", "0")[0] == 2


def test_xcheck(capsys):
    code, out, err = run(capsys, "xcheck", "--trials", "60", "--max-n", "12", "--seed", "7")
    assert code == 0
    assert json.loads(out)["disagreements"] == 0
    assert "kind" in err
    code, out, _ = run(capsys, "xcheck", "--trials", "0")
    assert code == 0 and json.loads(out)["instances"] == {}


def test_xcheck_catches_mirrored_convention(capsys, monkeypatch, tmp_path):
    def mirrored(g_dart, pred):
        h = g_dart ^ 1
        return (g_dart, pred[h]), (h, pred[g_dart])

    monkeypatch.setattr(embedding, "_crossing_pairs", mirrored)
    f = write(tmp_path, "c3.json", {"n": 3, "edges": [[0, 1], [1, 2], [2, 0]], "rotation": [[0, 5], [2, 1], [4, 3]]})
    code, out, _ = run(capsys, "compute", f, "--method", "strand")
    assert json.loads(out)["l"] == 2
    code, out, _ = run(capsys, "xcheck", "--trials", "30", "--max-n", "10", "--seed", "7")
    assert code == 1 and json.loads(out)["disagreements"] > 0


def test_bench(capsys, tmp_path):
    fig = tmp_path / "bench.png"
    code, out, _ = run(capsys, "bench", "--sizes", "8,20", "--methods", "reduce,tutte,bicycle", "--trials", "1", "--figure", str(fig))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["size"], r["method"], r["status"]) for r in rows] == [
        ("8", "reduce", "ok"),
        ("8", "tutte", "ok"),
        ("8", "bicycle", "ok"),
        ("20", "reduce", "ok"),
        ("20", "tutte", "infeasible"),
        ("20", "bicycle", "ok"),
    ]
    assert fig.stat().st_size > 0
    assert run(capsys, "bench", "--methods", "reduce,quantum")[0] == 2
    assert run(capsys, "bench", "--sizes", "1")[0] == 2


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "linkcomp.cli", "gen", "tree", "--n", "4", "--seed", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert loads_graph(proc.stdout).graph.m == 3
    bad = subprocess.run([sys.executable, "-m", "linkcomp.cli", "frobnicate"], capture_output=True, text=True)
    assert bad.returncode == 2
