import json
import subprocess
import sys

import jsonschema
import pytest

from tropdiv.cli import main
from tropdiv.serialize import dumps


THETA = {"vertices": 2, "edges": [[0, 1], [0, 1], [0, 1]], "labels": ["p", "q"]}
THETA_CURVE = {"model": THETA, "lengths": {"0": "1", "1": "1", "2": "1"}}
THETA_INSTANCE = {"curve": THETA_CURVE, "divisor": "K", "edge": 0, "n": 1}

ELEMENTS_SCHEMA = {
    "type": "object",
    "required": ["command", "count", "degree", "elements"],
    "properties": {
        "count": {"type": "integer"},
        "degree": {"type": "integer"},
        "elements": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "values"],
                "properties": {
                    "degree": {"type": "integer"},
                    "values": {"type": "array",
                               "items": {"type": ["integer", "string"]}},
                },
            },
        },
    },
}

WITNESS_SCHEMA = {
    "type": "object",
    "required": ["command", "s", "degree", "r", "claims", "f", "ftilde",
                 "obstruction", "obstruction_holds"],
    "properties": {
        "s": {"type": "integer"},
        "degree": {"type": "integer"},
        "r": {"type": "object", "required": ["edge", "offset"]},
        "obstruction_holds": {"type": "boolean"},
    },
}


def run_cli(tmp_path, argv, expect_code=0):
    out = tmp_path / "out.txt"
    code = main(argv + ["--output", str(out)])
    assert code == expect_code, f"exit {code} != {expect_code} for {argv}"
    return out.read_text()


@pytest.fixture
def theta_file(tmp_path):
    path = tmp_path / "theta.json"
    path.write_text(dumps(THETA))
    return str(path)


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "instance.json"
    path.write_text(dumps(THETA_INSTANCE))
    return str(path)


def test_rgd_command(tmp_path, theta_file):
    text = run_cli(tmp_path, ["rgd", "--graph", theta_file, "--divisor", "K",
                              "--m", "3"])
    data = json.loads(text)
    jsonschema.validate(data, ELEMENTS_SCHEMA)
    assert data["count"] == 3
    assert sorted(tuple(e["values"]) for e in data["elements"]) == \
        [(0, 0), (0, 1), (1, 0)]


def test_extremals_command(tmp_path, theta_file):
    data = json.loads(run_cli(tmp_path, ["extremals", "--graph", theta_file,
                                         "--divisor", "K", "--m", "3"]))
    jsonschema.validate(data, ELEMENTS_SCHEMA)
    assert data["count"] == 2


def test_generators_command(tmp_path, theta_file):
    data = json.loads(run_cli(tmp_path, ["generators", "--graph", theta_file,
                                         "--divisor", "K",
                                         "--certify-bound", "6"]))
    assert data["degrees"] == [1, 3]
    assert data["certified"]["6"] == 5


def test_check_generated_absent(tmp_path, theta_file):
    target = tmp_path / "target.json"
    target.write_text(dumps({"degree": 3, "values": [0, 1]}))
    text = run_cli(tmp_path, ["check-generated", "--graph", theta_file,
                              "--divisor", "K", "--target", str(target)],
                   expect_code=1)
    data = json.loads(text)
    assert data["generated_below"] is False


def test_check_generated_present(tmp_path, theta_file):
    target = tmp_path / "target.json"
    target.write_text(dumps({"degree": 4, "values": [0, 1]}))
    data = json.loads(run_cli(tmp_path, ["check-generated", "--graph", theta_file,
                                         "--divisor", "K", "--target", str(target),
                                         "--below-degree", "3"]))
    assert data["generated_below"] is True


def test_verify_gn_command(tmp_path):
    data = json.loads(run_cli(tmp_path, ["verify-gn", "--n", "2"]))
    assert data["verified"] is True
    assert data["generated_below"] is False


def test_trop_equiv_command(tmp_path):
    curve = tmp_path / "curve.json"
    curve.write_text(dumps(THETA_CURVE))
    d1 = tmp_path / "d1.json"
    d1.write_text(dumps({"points": [
        {"point": {"vertex": 0}, "coeff": 2},
        {"point": {"vertex": 1}, "coeff": 2}]}))
    d2 = tmp_path / "d2.json"
    d2.write_text(dumps({"points": [
        {"point": {"vertex": 0}, "coeff": 1},
        {"point": {"edge": 0, "offset": "2/3"}, "coeff": 3}]}))
    data = json.loads(run_cli(tmp_path, ["trop", "equiv", "--curve", str(curve),
                                         "--d1", str(d1), "--d2", str(d2)]))
    assert data["equivalent"] is True

    d3 = tmp_path / "d3.json"
    d3.write_text(dumps({"points": [
        {"point": {"edge": 0, "offset": "2/3"}, "coeff": 4}]}))
    data = json.loads(run_cli(tmp_path, ["trop", "equiv", "--curve", str(curve),
                                         "--d1", str(d1), "--d2", str(d3)],
                              expect_code=1))
    assert data["equivalent"] is False


def test_trop_witness_command(tmp_path, instance_file):
    data = json.loads(run_cli(tmp_path, ["trop", "witness", "--instance",
                                         instance_file, "--s", "1"]))
    jsonschema.validate(data, WITNESS_SCHEMA)
    assert data["r"] == {"edge": 0, "offset": "2/3"}
    assert data["order_triple"] == [-1, -2, 3]
    assert data["obstruction_holds"] is True


def test_trop_witness_dot(tmp_path, instance_file):
    text = run_cli(tmp_path, ["trop", "witness", "--instance", instance_file,
                              "--s", "1", "--format", "dot"])
    assert text.startswith("graph G {")
    assert 'r@2/3' in text
    assert 'xlabel="p"' in text


def test_trop_complete_graph_command(tmp_path):
    data = json.loads(run_cli(tmp_path, ["trop", "complete-graph", "--n", "4",
                                         "--s", "2"]))
    assert data["genus"] == 3
    assert data["n_param"] == 2
    assert data["hypotheses"]["all_pass"] is True
    cert = data["certificates"][0]
    assert cert["degree"] == 4
    assert cert["r"] == {"edge": 0, "offset": "8/15"}


def test_deterministic_output(tmp_path, theta_file):
    a = run_cli(tmp_path, ["rgd", "--graph", theta_file, "--divisor", "K", "--m", "2"])
    b = run_cli(tmp_path, ["rgd", "--graph", theta_file, "--divisor", "K", "--m", "2"])
    assert a == b


def test_input_error_exit_code(tmp_path, capsys):
    code = main(["rgd", "--graph", "/nonexistent.json", "--divisor", "K"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_budget_exit_code(tmp_path, theta_file):
    target = tmp_path / "target.json"
    target.write_text(dumps({"degree": 99, "values": [0, 1]}))
    code = main(["check-generated", "--graph", theta_file, "--divisor", "K",
                 "--target", str(target), "--max-degree", "10",
                 "--output", str(tmp_path / "out.json")])
    assert code == 3
    data = json.loads((tmp_path / "out.json").read_text())
    assert data["error"] == "budget exceeded"


def test_console_entry_point(tmp_path, theta_file):
    proc = subprocess.run(
        [sys.executable, "-m", "tropdiv.cli", "rgd", "--graph", theta_file,
         "--divisor", "K"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 1
