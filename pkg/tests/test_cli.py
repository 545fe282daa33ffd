import csv
import io
import json

import pytest

from gallai_lab.cli import main
from gallai_lab.coloring import EdgeColoring


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_emits_coloring_and_claims(capsys):
    code, out, _ = run(capsys, "construct", "cyclic-blowup-3col", "--n", "2")
    assert code == 0
    data = json.loads(out)
    assert data["coloring"]["n"] == 5
    assert data["claims"]
    c = EdgeColoring.from_dict(data["coloring"])
    assert json.loads(c.to_json()) == data["coloring"]


def test_construct_strict_failure_exits_one(capsys):
    code, _, err = run(capsys, "construct", "cyclic-blowup-3col", "--n", "2", "--strict")
    assert code == 1 and "error" in err


def test_construct_parameter_error(capsys):
    code, _, err = run(capsys, "construct", "dominant-matching", "--k", "2", "--n", "3")
    assert code == 1 and err


def test_count_and_classify_round_trip(tmp_path, capsys):
    _, out, _ = run(capsys, "construct", "cone", "--k", "5", "--n", "3")
    path = tmp_path / "c.json"
    path.write_text(json.dumps(json.loads(out)["coloring"]))
    code, out, _ = run(capsys, "count", "--coloring", str(path), "--rainbow", "P:5", "--mono", "mK2:3")
    assert code == 0
    data = json.loads(out)
    assert data["rainbow"]["count"] == 0 and data["mono"]["total"] == 0
    code, out, _ = run(capsys, "classify", "p5", "--coloring", str(path))
    assert code == 0 and json.loads(out)["cases"]


def test_classify_precondition_exit_code(tmp_path, capsys):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"n": 3, "edges": [[0, 1, 1], [0, 2, 2], [1, 2, 3]]}))
    code, _, err = run(capsys, "classify", "gallai", "--coloring", str(path))
    assert code == 1
    assert "witness" in err


def test_malformed_coloring_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    code, _, err = run(capsys, "count", "--coloring", str(path), "--rainbow", "K3")
    assert code == 1 and "malformed" in err


def test_formula_command(capsys):
    code, out, _ = run(capsys, "formula", "gr-k13-matching", "--param", "k=3", "--param", "n=2")
    assert code == 0 and json.loads(out)["value"] == 6
    code, _, _ = run(capsys, "formula", "gr-p5-matching", "--param", "k=5", "--param", "n=6")
    assert code == 1


def test_search_gm_without_host_uses_gallai_ramsey_number(capsys):
    code, out, _ = run(capsys, "search", "gm", "--G", "P:5", "--H", "mK2:2", "--k", "3", "--deterministic")
    assert code == 0
    data = json.loads(out)
    assert data["host_n"] == 6 and data["value"] == 3 and data["complete"]
    assert "elapsed" not in data


def test_search_is_deterministic(capsys):
    argv = ("search", "gm", "--G", "K3", "--H", "mK2:2", "--k", "3", "--n", "5", "--mode", "heuristic",
            "--seed", "3", "--restarts", "2", "--steps", "200", "--deterministic")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_search_budget_exit_code(capsys):
    code, out, _ = run(capsys, "search", "gm", "--G", "P:5", "--H", "mK2:2", "--k", "3", "--n", "6",
                       "--max-nodes", "500")
    assert code == 2
    assert json.loads(out)["complete"] is False


def test_search_ramsey_table(capsys):
    code, out, _ = run(capsys, "search", "ramsey", "--H", "mK2:2", "--H", "mK2:2", "--format", "table")
    assert code == 0
    assert any(line.split()[:2] == ["value", "5"] for line in out.splitlines())


def test_verify_formulas_csv_exits_zero_with_mismatches(capsys):
    code, out, _ = run(capsys, "verify", "formulas")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert any(r["match"] == "False" for r in rows)


def test_reproduce_pass_and_fail(capsys):
    code, out, _ = run(capsys, "reproduce", "gm6-k3-2k2-upper")
    assert code == 0 and json.loads(out)["observed"] == 3
    code, out, _ = run(capsys, "reproduce", "broom-factor2")
    assert code == 0
    code, _, _ = run(capsys, "reproduce", "no-such-id")
    assert code == 1


def test_output_file_and_unknown_flag(tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "formula", "n-k-threshold", "--param", "k=6", "--output", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["value"] == 4
    with pytest.raises(SystemExit):
        main(["formula", "--bogus"])
