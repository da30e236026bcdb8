from __future__ import annotations

import csv
import io
import json

import pytest

from eschenburg.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_classify_e1():
    code, doc = call_json("classify", "--space", "1,1,5")
    assert code == 0
    assert doc["family"] == "E1(5)" and doc["cohomogeneity"] == 1
    assert doc["iso"] == "(U(2)⋊Z₂)×SO(3)"


def test_invariants():
    code, doc = call_json("invariants", "--space", "1,1,2")
    assert code == 0
    assert (doc["r"], doc["p1_residue"], doc["vertex_orders"]) == (5, 2, [2, 3, 3])


def test_diagram():
    code, doc = call_json("diagram", "--space", "1,1,3")
    assert code == 0 and doc["slope"] == [4, 3]
    code, doc = call_json("diagram", "--space", "1,2,3")
    assert code == 1 and doc["error"] == "NotCohomogeneityOne"


def test_certify_free_verdicts():
    code, doc = call_json("certify-free", "--space", "1,1,1", "--group", "quaternion8", "--side", "right")
    assert code == 0 and doc["verdict"] == "Free"
    assert doc["effective_group"]["invariant_factors"] == [2, 2]
    code, doc = call_json("certify-free", "--space", "1,1,4", "--group", "cyclic:5", "--side", "right")
    assert code == 1 and doc["verdict"] == "NotFree" and doc["witness"]["z"] == "1/5"


def test_certify_factor_both_sides():
    code, doc = call_json("certify-free", "--space", "1,1,2", "--group", "factor", "--side", "both")
    assert code == 0
    assert {d["side"]: d["verdict"] for d in doc} == {"left": "Free", "right": "NotFree"}


def test_certify_generator_file(tmp_path):
    path = tmp_path / "gens.json"
    path.write_text(json.dumps([{"g2": "T(1/4)"}, {"g2": "J(0/1)"}]))
    code, doc = call_json("certify-free", "--space", "1,1,1", "--group", f"@{path}")
    assert code == 0 and doc["verdict"] == "Free"


def test_certify_bad_generator_file(tmp_path):
    path = tmp_path / "gens.json"
    path.write_text(json.dumps([{"g2": "X(1/4)"}]))
    code, doc = call_json("certify-free", "--space", "1,1,1", "--group", f"@{path}")
    assert code == 2 and doc["error"] == "InputError"


@pytest.mark.parametrize("argv", [
    ("classify", "--space", "1,x,2"),
    ("classify", "--space", "0,0,0"),
    ("certify-free", "--space", "1,1,1", "--group", "cyclic:zero"),
    ("enumerate", "--bound", "3", "--shard", "5/2"),
    ("nonsense",),
])
def test_input_errors(argv):
    code, doc = call_json(*argv)
    assert code == 2 and "error" in doc


def test_not_free_space_is_negative():
    code, doc = call_json("classify", "--space", "1,1,-1")
    assert code == 1 and doc["error"] in ("NotFree", "NotPositivelyCurved")


def test_enumerate_json_and_csv():
    code, text = call("enumerate", "--bound", "2")
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and [1, 1, 1] in [r["space"] for r in rows]
    code, text = call("--format", "csv", "enumerate", "--bound", "2")
    table = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(table) == len(rows) and set(table[0]) == {"space", "family", "cohomogeneity"}


def test_csv_refused_for_single_objects():
    code, doc = call_json("--format", "csv", "classify", "--space", "1,1,5")
    assert code == 2 and doc["error"] == "UsageError"


def test_verify_summary_and_output(tmp_path):
    path = tmp_path / "report.jsonl"
    code, text = call("verify", "--suite", "so3-classification", "--bound", "6", "--output", str(path))
    summary = json.loads(text)
    assert code == 0 and summary["pass"] and summary["record"] == "summary"
    lines = path.read_text().splitlines()
    assert json.loads(lines[-1]) == summary and len(lines) == summary["spaces"] + 1


def test_verify_byte_stable():
    a = call("verify", "--suite", "invariant-formulas", "--max-p", "30", "--records")
    b = call("verify", "--suite", "invariant-formulas", "--max-p", "30", "--records")
    assert a == b and a[0] == 0


def test_bazaikin_classify():
    code, doc = call_json("classify", "--space", "1,1,1,1,3")
    assert code == 0 and doc["family"].startswith("Bazaikin1")
