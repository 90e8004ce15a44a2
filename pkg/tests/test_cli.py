import json
from pathlib import Path

import pytest

from neumaier.cli import main
from neumaier.graph import Graph

RECIPES = Path(__file__).resolve().parents[1] / "demos" / "recipes"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_list(capsys):
    code, out, _ = run(capsys, "generate", "--list")
    assert code == 0
    assert "icosahedron" in json.loads(out)["outputs"]["generators"]


def test_generate_circulant(capsys):
    code, out, _ = run(capsys, "generate", "circulant", "--n", "65", "--log2-powers", "--subgroup", "13")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    reg = data["outputs"]["regularity"]
    assert (reg["v"], reg["k"], reg["lambda"]) == (65, 12, 3)
    assert data["tool"] == "neumaier" and "wall_clock_s" in data


def test_generate_graph6_format(capsys):
    code, out, _ = run(capsys, "generate", "icosahedron", "--format", "graph6")
    assert code == 0
    assert Graph.from_graph6(out.strip()).v == 12


def test_construct_recipe(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", str(RECIPES / "icosahedra.json"), "--out", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    cert = data["outputs"]["certificate"]
    assert cert["params"] == {"v": 24, "k": 8, "lambda": 2, "m": 1, "s": 4}
    assert data["outputs"]["strictness"]["kind"] == "strict"
    assert json.loads((tmp_path / "report.json").read_text())["outputs"] == data["outputs"]
    assert (tmp_path / "graphs.g6").read_text().strip() == data["outputs"]["graph6"]
    assert data["inputs"][0]["sha256"]


def test_construct_t1(capsys):
    code, out, _ = run(capsys, "construct", str(RECIPES / "delta1.json"))
    assert code == 0
    assert json.loads(out)["outputs"]["strictness"]["method"] == "scan"


def test_invalid_recipe_exit_2(capsys):
    code, _, err = run(capsys, "construct", str(RECIPES / "bad_code_size.json"))
    assert code == 2 and "invalid input" in err


def test_missing_file_and_bad_json(capsys, tmp_path):
    assert run(capsys, "construct", str(tmp_path / "none.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "construct", str(bad))[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "generate")[0] == 2
    assert run(capsys, "generate", "cube")[0] == 2
    assert run(capsys, "reproduce", "9.9")[0] == 2
    assert run(capsys, "spectrum", "!!!not graph6")[0] == 2


def test_switch(capsys):
    code, out, _ = run(capsys, "switch", str(RECIPES / "icosahedra.json"), "--subset", "1", "--i", "1", "--j", "2")
    data = json.loads(out)["outputs"]
    assert code == 0
    assert data["cospectral"] and data["equals_construction"]
    assert data["pi_after"] == [[3, 2, 1, 5, 6, 4]]


def test_switch_bad_indices(capsys):
    code, _, _ = run(capsys, "switch", str(RECIPES / "icosahedra.json"), "--i", "1", "--j", "1")
    assert code == 2


def test_certify(capsys):
    petersen = "IheA@GUAo"
    code, out, _ = run(capsys, "certify", petersen)
    # triangle-free with lambda = 0: no edge has nexus 1, so there is no regular clique
    data = json.loads(out)
    assert code == 1
    assert data["outputs"]["condition"] == "regular clique"
    code, out, _ = run(capsys, "certify", "Bw")  # K3 is complete
    assert code == 1 and json.loads(out)["outputs"]["certified"] is False


def test_certify_glued(capsys, tmp_path):
    _, out, _ = run(capsys, "construct", str(RECIPES / "icosahedra.json"))
    g6 = json.loads(out)["outputs"]["graph6"]
    path = tmp_path / "g.g6"
    path.write_text(g6 + "\n")
    code, out, _ = run(capsys, "certify", str(path))
    data = json.loads(out)
    assert code == 0 and data["outputs"]["certified"]
    assert data["inputs"][0]["label"] == str(path)


def test_codes(capsys):
    code, out, _ = run(capsys, "codes", "EhEG", "--a", "2")  # C6 as graph6
    data = json.loads(out)["outputs"]
    assert code == 0 and data["partitions"]
    code, _, _ = run(capsys, "codes", "EhEG", "--a", "4")
    assert code != 0


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "Bw")
    data = json.loads(out)["outputs"]
    assert code == 0
    assert data["char_poly"] == "x^3 - 3x - 2"
    assert [e["mult"] for e in data["spectrum"]] == [1, 2]


def test_classify(capsys, tmp_path):
    f = tmp_path / "graphs.g6"
    f.write_text("Bw\nBg\nBW\nBo\n")
    code, out, _ = run(capsys, "classify", str(f))
    data = json.loads(out)["outputs"]
    assert code == 0 and data["graphs"] == 4
    assert sorted(c["count"] for c in data["classes"]) == [1, 3]


def test_reproduce_row(capsys):
    code, out, _ = run(capsys, "reproduce", "5-tables", "--row", "n=3")
    data = json.loads(out)
    assert code == 0 and data["ok"] and not data["outputs"]["failures"]


def test_reproduce_limit_mismatch_and_no_assert(capsys):
    code, out, _ = run(capsys, "reproduce", "tables", "--row", "n=4", "--limit", "1")
    assert code == 1 and json.loads(out)["outputs"]["failures"]
    code, _, _ = run(capsys, "reproduce", "tables", "--row", "n=4", "--limit", "1", "--no-assert")
    assert code == 0


def test_reproduce_graph6_output(capsys):
    code, out, _ = run(capsys, "reproduce", "4.4", "--format", "graph6")
    lines = out.split()
    assert code == 0 and lines
    assert all(Graph.from_graph6(ln).to_graph6() == ln for ln in lines)


def test_reports_deterministic(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "construct", str(RECIPES / "icosahedra.json"))
        data = json.loads(out)
        data.pop("wall_clock_s")
        outs.append(data)
    assert outs[0] == outs[1]
