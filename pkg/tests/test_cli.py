import json

import pytest

from facering.cli import run

DOUBLE_EDGE = {
    "kind": "poset",
    "faces": [
        {"id": "v", "covers": []},
        {"id": "w", "covers": []},
        {"id": "alpha", "covers": ["v", "w"]},
        {"id": "beta", "covers": ["v", "w"]},
    ],
}

DISJOINT_EDGES = {"kind": "simplicial", "facets": [["a", "c"], ["b", "d"]]}
DISJOINT_BALANCING = {"labels": {"a": 1, "b": 1, "c": 2, "d": 2}}
SWAP_GROUP = {"generators": [{"map": {"alpha": "beta", "beta": "alpha"}}]}


@pytest.fixture
def docs(tmp_path):
    paths = {}
    for name, doc in [("double_edge", DOUBLE_EDGE),
                      ("disjoint_edges", DISJOINT_EDGES),
                      ("disjoint_balancing", DISJOINT_BALANCING),
                      ("swap_group", SWAP_GROUP)]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    return paths


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_check_cm_not_cm_verdict(docs, capsys):
    code, payload = run_json(capsys, [
        "check-cm", "--input", docs["disjoint_edges"],
        "--balancing", docs["disjoint_balancing"], "--field", "gf:2"])
    assert code == 0  # a verdict, not an error
    assert payload["verdict"] == "not-cm"
    assert payload["witness"] == "c"
    assert payload["representation"] == [["a", "1"]]


def test_basis_subdivision(docs, capsys):
    code, payload = run_json(capsys, [
        "basis", "--input", docs["double_edge"], "--sd", "--field", "rational"])
    assert code == 0
    assert payload["verdict"] == "cm"
    assert [entry["face"] for entry in payload["basis"]] == [
        "", "v", "alpha", "v_alpha"]
    assert payload["facet_order"] == ["v_alpha", "w_alpha", "v_beta", "w_beta"]


def test_straighten(docs, capsys):
    code = run(["straighten", "--input", docs["double_edge"],
                "--expr", "x[v]*x[w]"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "x[alpha] + x[beta]"


def test_straighten_discrete_and_cell_letters(docs, capsys):
    code = run(["straighten", "--input", docs["double_edge"],
                "--expr", "y[v]*y[w]"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "0"
    code = run(["straighten", "--input", docs["double_edge"],
                "--expr", "z[v]*z[w]"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "0"
    code = run(["straighten", "--input", docs["double_edge"],
                "--expr", "z[v]*z[v_alpha]"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "z[v]*z[v_alpha]"


def test_parse_error_exit_code(docs, capsys):
    code = run(["straighten", "--input", docs["double_edge"], "--expr", "x[v]+"])
    assert code == 2
    err = capsys.readouterr().err
    assert "column 6" in err


def test_unknown_face_exit_code(docs, capsys):
    code = run(["straighten", "--input", docs["double_edge"], "--expr", "x[zz]"])
    assert code == 2


def test_transfer_roundtrip(docs, capsys):
    code = run(["transfer", "--input", docs["double_edge"],
                "--expr", "y[w]^2*y[beta]"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "x[w]^2*x[beta]"
    code = run(["transfer", "--inverse", "--input", docs["double_edge"],
                "--expr", "x[w]^2*x[beta]"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "y[w]^2*y[beta]"


def test_represent(docs, capsys):
    code, payload = run_json(capsys, [
        "represent", "--input", docs["double_edge"],
        "--expr", "x[w]^2*x[beta]"])
    assert code == 0
    table = {row["member"]: row["polynomial"] for row in payload["coefficients"]}
    assert table == {"": "t1^2*t2 - t2^2", "v": "-t1*t2",
                     "alpha": "-t1^2 + t2", "v_alpha": "t1"}


def test_equivariant_iso(docs, capsys):
    code, payload = run_json(capsys, [
        "equivariant-iso", "--input", docs["double_edge"],
        "--group", docs["swap_group"], "--degree-bound", "4"])
    assert code == 0
    assert payload["group_order"] == 2
    assert payload["report"] == {"equivariant": True, "isomorphism": True,
                                 "failures": []}


def test_equivariant_iso_obstructed(tmp_path, capsys):
    triangle = tmp_path / "triangle.json"
    triangle.write_text(json.dumps(
        {"kind": "simplicial", "facets": [["0", "1", "2"]]}))
    group = tmp_path / "s3.json"
    group.write_text(json.dumps({"generators": [
        {"vertex_map": {"0": "1", "1": "0"}},
        {"vertex_map": {"0": "1", "1": "2", "2": "0"}}]}))
    code = run(["equivariant-iso", "--input", str(triangle),
                "--group", str(group), "--field", "gf:2",
                "--degree-bound", "2"])
    assert code == 1
    assert "group order 6" in capsys.readouterr().err


def test_verify_candidate(docs, capsys):
    code, payload = run_json(capsys, [
        "verify", "--input", docs["double_edge"], "--sd",
        "--candidate", '["", "w", "alpha", "v_alpha"]'])
    assert code == 0
    assert payload["valid"] is True
    code, payload = run_json(capsys, [
        "verify", "--input", docs["double_edge"], "--sd",
        "--candidate", '["", "v", "w", "v_alpha"]'])
    assert code == 0
    assert payload["valid"] is False


def test_fine_vectors(docs, capsys):
    code, payload = run_json(capsys, [
        "fine-vectors", "--input", docs["double_edge"], "--sd"])
    assert code == 0
    assert payload["h"] == [{"labels": [], "count": 1},
                            {"labels": [1], "count": 1},
                            {"labels": [2], "count": 1},
                            {"labels": [1, 2], "count": 1}]


def test_cross_term(capsys):
    code, payload = run_json(capsys, ["cross-term", "--d", "2"])
    assert code == 0
    assert payload["coefficient"] == "3"
    assert payload["monomial"] == "x[0,1,2]"
    assert payload["odd"] is True and payload["strictly_dominated"] is True


def test_order_flag(docs, capsys):
    order = '["", "a", "b", "c", "d", "a,c", "b,d"]'
    code, payload = run_json(capsys, [
        "check-cm", "--input", docs["disjoint_edges"],
        "--balancing", docs["disjoint_balancing"], "--order", order])
    assert code == 0
    assert payload["witness"] == "c"
    bad = '["", "a,c", "a", "b", "c", "d", "b,d"]'
    code = run(["check-cm", "--input", docs["disjoint_edges"],
                "--balancing", docs["disjoint_balancing"], "--order", bad])
    assert code == 2


def test_missing_balancing(docs, capsys):
    code = run(["check-cm", "--input", docs["double_edge"]])
    assert code == 2


def test_output_byte_stability(docs, capsys):
    argv = ["basis", "--input", docs["double_edge"], "--sd"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    second = capsys.readouterr().out
    assert first == second
    argv = ["represent", "--input", docs["double_edge"],
            "--expr", "x[w]^2*x[beta]"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    second = capsys.readouterr().out
    assert first == second


def test_pretty_and_json_flags(docs, capsys):
    code = run(["straighten", "--input", docs["double_edge"],
                "--expr", "x[v]*x[w]", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["terms"] == [
        {"coeff": "1", "monomial": [["alpha", 1]]},
        {"coeff": "1", "monomial": [["beta", 1]]}]
    code = run(["basis", "--input", docs["double_edge"], "--sd", "--pretty"])
    assert code == 0
    assert capsys.readouterr().out.startswith("{\n")
