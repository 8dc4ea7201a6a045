import json

import pytest

from grassmann_rsets.cli import run

FIELD2 = {"p": 2, "e": 1, "modulus": [0, 1]}


def planes(*pairs):
    out = []
    for a, b in pairs:
        out.append([[1 if j == a else 0 for j in range(4)], [1 if j == b else 0 for j in range(4)]])
    return out


MAXIMAL = {"field": FIELD2, "n": 4, "k": 2, "subspaces": planes((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))}
STAR = {"field": FIELD2, "n": 4, "k": 2, "subspaces": planes((0, 1), (0, 2), (0, 3))}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def report(tmp_path, argv):
    out = tmp_path / "report.json"
    code = run(argv + ["--output", str(out)])
    return code, json.loads(out.read_text()) if out.exists() else None


def test_check_accepts_a_maximal_rset(tmp_path):
    code, doc = report(tmp_path, ["check", "--input", write(tmp_path, "m.json", MAXIMAL)])
    assert code == 0 and doc["is_rset"] is True


def test_check_rejects_three_lines_of_the_plane(tmp_path):
    lines = {"field": FIELD2, "n": 2, "k": 1, "subspaces": [[[1, 0]], [[0, 1]], [[1, 1]]]}
    code, doc = report(tmp_path, ["check", "--input", write(tmp_path, "l.json", lines)])
    assert code == 1 and doc["is_rset"] is False


def test_deg_and_exact(tmp_path):
    star = write(tmp_path, "s.json", STAR)
    code, doc = report(tmp_path, ["deg", "--input", star])
    assert code == 0 and doc["degree"] == 2
    code, doc = report(tmp_path, ["exact", "--input", star])
    assert code == 1 and doc["is_exact"] is False
    code, doc = report(tmp_path, ["exact", "--input", write(tmp_path, "m.json", MAXIMAL)])
    assert code == 0 and doc["is_exact"] is True


def test_exactness_threshold_sweep(tmp_path):
    code, doc = report(tmp_path, ["verify-thm23", "--n", "5", "--k", "2", "--p", "2", "--workers", "1"])
    assert code == 0 and doc["passed"]
    assert set(doc["counts_by_degree"]) <= {"0", "1"}


def test_graph_automorphisms(tmp_path):
    edges = tmp_path / "g.txt"
    code, doc = report(tmp_path, ["graph-aut", "--n", "4", "--k", "2", "--p", "2", "--export-edges", str(edges)])
    assert code == 0 and doc["aut_order"] == 40320
    code, doc = report(tmp_path, ["graph-aut", "--input", str(edges)])
    assert code == 0 and doc["aut_order"] == 40320


def test_group_order(tmp_path):
    code, doc = report(tmp_path, ["group-order", "--n", "3", "--k", "1", "--p", "3"])
    assert code == 0 and doc["group_order"] == 5616


def test_reports_are_reproducible(tmp_path):
    argv = ["verify-adjacency", "--n", "3", "--k", "1", "--p", "3", "--mode", "sampled", "--samples", "500", "--seed", "42"]
    docs = []
    for _ in range(2):
        code, doc = report(tmp_path, argv)
        assert code == 0
        doc.pop("elapsed_ms")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]
    assert json.loads(docs[0])["params"]["seed"] == 42


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["check"],
        ["verify-lemma31", "--n", "2", "--k", "1", "--p", "2"],
        ["verify-lemma31", "--n", "4", "--k", "2", "--p", "3"],
        ["graph-aut", "--n", "4", "--k", "2", "--p", "3", "--budget", "100"],
        ["group-order", "--n", "3", "--k", "1", "--p", "4"],
    ],
)
def test_usage_and_budget_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_malformed_document(tmp_path):
    bad = write(tmp_path, "bad.json", {"field": FIELD2, "n": 2, "subspaces": [[[1, 0], [1, 0]]]})
    assert run(["check", "--input", bad]) == 2
    assert run(["check", "--input", write(tmp_path, "bad2.json", {"n": 2})]) == 2


def test_json_goes_to_stdout_without_output(tmp_path, capsys):
    assert run(["check", "--input", write(tmp_path, "m.json", MAXIMAL)]) == 0
    assert json.loads(capsys.readouterr().out)["is_rset"] is True
