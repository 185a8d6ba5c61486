import json
from importlib.resources import files

import jsonschema
import pytest

from parablocks.cli import main

SCHEMA = json.loads(files("parablocks").joinpath("report.schema.json").read_text(encoding="utf-8"))


def validate(payload, name):
    jsonschema.validate(payload, {"$ref": f"#/$defs/{name}", "$defs": SCHEMA["$defs"]})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_b12_blocks_agree(capsys):
    code, out, _ = run(capsys, "blocks", "B", "12", "--exclude", "2,6,12", "--weight", "3,2,2,2,1,1,1,1,1,0,0,0")
    assert code == 0
    assert out.splitlines()[-1] == "oracle=8 separability=8 partitions=8 AGREE"
    assert sum(1 for line in out.splitlines() if line.startswith("block ")) == 8


def test_type_a_blocks(capsys):
    code, out, _ = run(capsys, "blocks", "A", "7", "--exclude", "3,5,6", "--weight", "3,2,2,2,1,1,1")
    assert code == 0
    assert "oracle=1 separability=1 partitions=1 AGREE" in out


def test_so18_factor_tree(capsys):
    code, out, _ = run(capsys, "factorize", "D", "9", "--exclude", "5,8,9", "--weight", "3,2,2,2,1,1,1,1,-1")
    assert code == 0
    assert out.splitlines()[-1] == "k=3 nontrivial factor(s), 4 block(s)"
    code, out, _ = run(capsys, "blocks", "D", "9", "--exclude", "5,8,9", "--weight", "3,2,2,2,1,1,1,1,-1")
    assert "oracle=4 separability=4 partitions=4 AGREE" in out


def test_enumerate_b6(capsys):
    code, out, _ = run(capsys, "enumerate", "B", "6", "--exclude", "2,6", "--weight", "2,1,1,1,0,0")
    assert code == 0
    assert "4 simple modules" in out
    assert "(1, 0 | 2, 1, 0, -1 | )  P=1" in out
    assert "(1, 0 | 1, 0, -1, -2 | )  P=2" not in out
    assert out.count("┌") == 4


def test_weight_is_replaced_by_its_dominant_representative(capsys):
    code, out, err = run(capsys, "enumerate", "B", "2", "--include", "1", "--weight", "0,-1")
    assert code == 0
    assert "dominant=(1, 0)" in out
    assert "note:" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "D", "3", "--weight", "1,1,0"],
        ["enumerate", "B", "2", "--weight", "1,0,0"],
        ["enumerate", "C", "2", "--weight", "1/2,1/2"],
        ["enumerate", "E", "6"],
        ["enumerate", "B", "3", "--include", "x"],
        ["enumerate", "B", "3", "--include", "7"],
        ["enumerate", "B", "3", "--nonstandard"],
        ["blocks", "D", "4", "--include", "1,3", "--singular", "1,2,4"],
        ["sweep", "B", "9"],
    ],
)
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_degenerate_weight_message(capsys):
    code, _, err = run(capsys, "enumerate", "D", "3", "--weight", "2,1,0")
    assert code == 2
    assert "positive second-to-last block value" in err
    assert "canonical dominant weight" in err


def test_nonstandard_flag(capsys):
    code, out, _ = run(capsys, "enumerate", "D", "4", "--include", "1,2,3", "--nonstandard", "--singular", "1,3")
    assert code == 0
    assert "I={1,2,4}" in out


@pytest.mark.parametrize("command", ["enumerate", "jantzen", "separable", "partitions", "factorize", "blocks"])
@pytest.mark.parametrize(
    "system",
    [
        ["B", "6", "--exclude", "2,6", "--weight", "2,1,1,1,0,0"],
        ["B", "3", "--include", "1,3", "--weight", "1,1,0"],
        ["D", "9", "--exclude", "5,8,9", "--weight", "3,2,2,2,1,1,1,1,-1"],
        ["D", "4", "--include", "1,3", "--singular", "1,2,3"],
        ["B", "2", "--include", "1", "--weight", "1/2,1/2"],
    ],
)
def test_json_matches_the_schema(capsys, command, system):
    code, out, _ = run(capsys, command, *system, "--json")
    assert code == 0
    validate(json.loads(out), command)


def test_output_is_stable(capsys):
    argv = ["blocks", "B", "6", "--exclude", "2,6", "--weight", "2,1,1,1,0,0", "--json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_sweep_command(capsys, tmp_path):
    path = tmp_path / "findings.jsonl"
    code, out, _ = run(capsys, "sweep", "B", "3", "--workers", "1", "--findings", str(path), "--json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "sweep")
    assert payload["findings"] == 0
    assert path.read_text() == ""
    code, out, _ = run(capsys, "sweep", "D", "4", "--min-rank", "4", "--workers", "1")
    assert code == 0
    assert "0 findings" in out


def test_finding_lines_match_the_schema(tmp_path):
    from parablocks.sweep import Cell, Finding, write_findings

    path = tmp_path / "f.jsonl"
    write_findings(str(path), [Finding(Cell("B", 3, (1,), (2,)), "c:counts", "oracle=1 separability=2 partitions=1")])
    validate(json.loads(path.read_text().splitlines()[0]), "finding")
