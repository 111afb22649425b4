from __future__ import annotations

import csv
import io
import json
import shlex
from pathlib import Path

import pytest

from liedense.cli import run

GOLDEN = Path(__file__).parent / "golden"


def _commands() -> list[tuple[str, list[str]]]:
    out = []
    for line in (GOLDEN / "commands.txt").read_text(encoding="utf-8").splitlines():
        if line.strip():
            name, cmd = (s.strip() for s in line.split("|", 1))
            out.append((name, shlex.split(cmd)))
    return out


COMMANDS = _commands()


def invoke(argv: list[str], capsys) -> tuple[int, str, str]:
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("name,argv", COMMANDS, ids=[c[0] for c in COMMANDS])
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_golden(name, argv, fmt, capsys):
    code, out, _ = invoke(argv + ["--format", fmt], capsys)
    assert code == 0
    assert out == (GOLDEN / f"{name}.{fmt}").read_text(encoding="utf-8")


@pytest.mark.parametrize("name,argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_deterministic(name, argv, capsys):
    for fmt in ("csv", "json"):
        first = invoke(argv + ["--format", fmt], capsys)[1]
        assert invoke(argv + ["--format", fmt], capsys)[1] == first


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


@pytest.mark.parametrize("name,argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_csv_json_parity(name, argv, capsys):
    _, csv_out, _ = invoke(argv + ["--format", "csv"], capsys)
    _, json_out, _ = invoke(argv + ["--format", "json"], capsys)
    rows = list(csv.DictReader(io.StringIO(csv_out)))
    doc = json.loads(json_out)
    if "rows" in doc:
        json_rows = doc["rows"]
    elif "presentations" in doc:
        json_rows = doc["presentations"]
    else:
        json_rows = [doc]
    assert len(rows) == len(json_rows)
    for r, j in zip(rows, json_rows):
        assert r == {k: _cell(j[k]) for k in r}


def test_witt_ends_with_99(capsys):
    code, out, _ = invoke(["witt", "--d", "2", "--max-n", "10"], capsys)
    assert code == 0 and out.startswith("n,dim\n") and out.endswith("10,99\n")
    assert "\r" not in out


def test_demushkin_dims_rows(capsys):
    _, out, _ = invoke(["demushkin", "dims", "--d", "4", "--p", "2", "--max-n", "4"], capsys)
    assert [row["dim"] for row in csv.DictReader(io.StringIO(out))] == ["4", "9", "16", "54"]


def test_greedy_json_invariants(capsys):
    argv = ["density", "greedy", "--alpha", "1/2", "--d", "2", "--p", "2", "--max-n", "10", "--format", "json"]
    _, out, _ = invoke(argv, capsys)
    doc = json.loads(out)
    assert all(step["inv_i"] for step in doc["trace"]["steps"])
    assert doc["trace"]["final_gens"][:2] == ["x1", "[[x2,x1],x1]"]
    assert doc["report"]["ratios"][2] == "2/5"


def test_catalog_json_object(capsys):
    _, out, _ = invoke(["demushkin", "catalog", "--d", "3", "--p", "2", "--f", "2", "--case", "oddP2",
                        "--format", "json"], capsys)
    doc = json.loads(out)
    assert set(doc) == {"d", "p", "f", "case", "group_relator", "graded_relator"}
    assert doc["graded_relator"] == "P(x1) + [x2,x3]"


def test_out_file(tmp_path, capsys):
    target = tmp_path / "w.csv"
    code, out, _ = invoke(["witt", "--d", "3", "--max-n", "3", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_bytes() == b"n,dim\n1,3\n2,3\n3,8\n"


def test_gens_file(tmp_path, capsys):
    gens = tmp_path / "gens.json"
    gens.write_text(json.dumps(["[x2,x1]", "[x2,x1,x1]", "[x2,x1,x2]"]), encoding="utf-8")
    _, out, _ = invoke(["oracle", "closure", "--d", "2", "--max-n", "6", "--gens-file", str(gens)], capsys)
    assert out == (GOLDEN / "oracle_closure.csv").read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "argv",
    [
        ["demushkin", "catalog", "--d", "4", "--p", "2", "--f", "1", "--case", "genericEven"],
        ["witt", "--d", "2"],
        ["witt", "--d", "2", "--max-n", "5", "--bogus"],
        ["density", "greedy", "--alpha", "3/2", "--d", "2", "--max-n", "4"],
        ["oracle", "closure", "--d", "2", "--max-n", "4", "--gen", "[x1,"],
        ["density", "fg", "--gens", "1:4", "--d", "4", "--max-n", "6", "--ambient", "demushkin"],
        ["hdim", "product", "--factors", "demushkin:4:genericEven", "--select", "1", "--levels", "2"],
        ["restricted", "--d", "2", "--p", "4", "--max-n", "3"],
    ],
)
def test_validation_exit_code(argv, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 2 and out == "" and err


def test_resource_exit_code(capsys):
    code, _, err = invoke(["oracle", "lie-dims", "--d", "4", "--max-n", "11"], capsys)
    assert code == 3 and "degree 11" in err
