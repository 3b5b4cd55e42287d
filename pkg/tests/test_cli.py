"""Command-line behavior: output shapes, exit codes, table verification."""

import json

import pytest

from khrank.cli import main
from khrank.dataset import builtin_entries, dump_lines


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_kh_named_entry(capsys):
    code, out, _ = run(capsys, "kh", "name:L4a1")
    assert code == 0
    assert "name: L4a1" in out
    assert "total: 8" in out
    assert "bigraded ranks (i, j, rank):" in out


def test_kh_axis_spec_matches_named_form(capsys):
    # the axis link of the one-letter word on two strands is the same link
    code, out, _ = run(capsys, "kh", "axis:2:1")
    assert code == 0
    assert "total: 8" in out


def test_kh_free_loop(capsys):
    code, out, _ = run(capsys, "kh", "pd:O")
    assert code == 0
    assert "total: 2" in out


def test_kh_reduced_flag_adds_block(capsys):
    code, plain, _ = run(capsys, "kh", "name:3_1")
    assert code == 0
    assert "reduced bigraded" not in plain
    code, out, _ = run(capsys, "kh", "name:3_1", "--reduced")
    assert code == 0
    assert "reduced bigraded ranks (i, j, rank):" in out


def test_kh_mirror_flag_matches_mirror_entry(capsys):
    code, out_a, _ = run(capsys, "kh", "name:3_1", "--mirror", "--json")
    assert code == 0
    code, out_b, _ = run(capsys, "kh", "name:3_1-mirror", "--json")
    assert code == 0
    a, b = json.loads(out_a), json.loads(out_b)
    assert a["bigraded"] == b["bigraded"]
    assert a["total"] == b["total"] == 6


def test_kh_json_shape(capsys):
    code, out, _ = run(capsys, "kh", "name:L4a1", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["total"] == 8
    assert obj["components"] == 2
    assert obj["reduced_total"] == 4
    assert all(len(row) == 3 for row in obj["bigraded"])
    # keys come out sorted so reports diff cleanly
    assert list(obj) == sorted(obj)


def test_burau_single_generator(capsys):
    code, out, _ = run(capsys, "burau", "2:1")
    assert code == 0
    assert out == "[-t]\n"


def test_burau_json(capsys):
    code, out, _ = run(capsys, "burau", "3:1 2", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["size"] == 2
    assert obj["entries"] == [["0", "-t"], ["t", "-t"]]


def test_alex_report_lines(capsys):
    code, out, _ = run(capsys, "alex", "3:1 2")
    assert code == 0
    assert "delta: x^2+x*y+y^2" in out
    assert "torres: true" in out
    assert "stat: 12" in out
    assert "flags: (none)" in out


def test_alex_json(capsys):
    code, out, _ = run(capsys, "alex", "2:1", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["delta"] == "x+y"
    assert obj["stat"] == 8
    assert obj["torres"] is True
    assert obj["axis_form"] == {"a": 1, "f": []}


def test_classify_text_and_json(capsys):
    code, out, _ = run(capsys, "classify", "braid:2:1 1")
    assert code == 0
    assert "match: Hopf" in out
    assert "caveat:" in out
    code, out, _ = run(capsys, "classify", "name:L6n1", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["rank_class"] == "L6n1-class"
    assert obj["total"] == 12


@pytest.mark.parametrize("argv", [
    ("kh", "name:nosuch"),
    ("kh", "pd:X(1,2,3)"),
    ("kh", "zz:1"),
    ("kh", "nocolon"),
    ("burau", "1:"),
    ("alex", "3:1"),           # disconnected closure
    ("alex", "3:oops"),
])
def test_parse_failures_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_usage_errors_exit_2(capsys):
    assert run(capsys, )[0] == 2
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "kh")[0] == 2


def test_crossing_cap_flag(capsys):
    code, _, err = run(capsys, "kh", "braid:2:1 1 1 1 1",
                       "--max-crossings", "3")
    assert code == 2
    assert "over the limit" in err


def test_crossing_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("KHRANK_MAX_CROSSINGS", "2")
    assert run(capsys, "kh", "name:3_1")[0] == 2
    monkeypatch.setenv("KHRANK_MAX_CROSSINGS", "5")
    assert run(capsys, "kh", "name:3_1")[0] == 0
    # explicit flag wins over the environment
    monkeypatch.setenv("KHRANK_MAX_CROSSINGS", "2")
    assert run(capsys, "kh", "name:3_1", "--max-crossings", "5")[0] == 0


def test_verify_builtin_all_pass(capsys):
    code, out, _ = run(capsys, "verify-table", "--builtin", "--jobs", "2")
    assert code == 0
    assert "result: all checks pass" in out
    assert "FAIL" not in out
    assert "verified 37 entries" in out


def test_verify_table_file_round_trip(capsys, tmp_path):
    path = tmp_path / "table.jsonl"
    path.write_text(dump_lines(builtin_entries()), encoding="utf-8")
    code, out, _ = run(capsys, "verify-table", str(path), "--jobs", "2")
    assert code == 0
    assert "result: all checks pass" in out


def test_verify_injected_fault_exits_1(capsys, tmp_path):
    doctored = []
    for entry in builtin_entries():
        obj = entry.to_json_obj()
        if entry.name == "L4a1":
            obj["expected_total"] = 10
        doctored.append(json.dumps(obj, sort_keys=True))
    path = tmp_path / "bad.jsonl"
    path.write_text("\n".join(doctored) + "\n", encoding="utf-8")
    code, out, _ = run(capsys, "verify-table", str(path), "--jobs", "2")
    assert code == 1
    assert "FAIL" in out
    assert "expected-totals" in out
    assert "L4a1" in out
    assert "result: NOT all checks pass" in out


def test_verify_table_argument_handling(capsys, tmp_path):
    # neither source, both sources, unreadable path: all usage failures
    assert run(capsys, "verify-table")[0] == 2
    path = tmp_path / "t.jsonl"
    path.write_text(dump_lines(builtin_entries()), encoding="utf-8")
    assert run(capsys, "verify-table", str(path), "--builtin")[0] == 2
    code, _, err = run(capsys, "verify-table", str(tmp_path / "missing.jsonl"))
    assert code == 2
    assert "cannot read table" in err


def test_verify_rejects_malformed_table(capsys, tmp_path):
    path = tmp_path / "broken.jsonl"
    path.write_text('{"name": "x"}\n', encoding="utf-8")
    code, _, err = run(capsys, "verify-table", str(path))
    assert code == 2
    assert "missing fields" in err


def test_verify_json_output(capsys):
    code, out, _ = run(capsys, "verify-table", "--builtin", "--jobs", "2",
                       "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["all_pass"] is True
    assert obj["entries"] == 37
    assert len(obj["checks"]) == 16
    assert {c["status"] for c in obj["checks"]} == {"pass"}
