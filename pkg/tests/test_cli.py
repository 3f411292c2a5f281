"""CLI wiring: flags, JSON shapes, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

from evalcodes.cli import main
from evalcodes.families import del_pezzo4_fixture
from evalcodes.projective import surface_to_text


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_build_code_dp4(tmp_path, capsys):
    out = tmp_path / "dp4.json"
    code, _, err = run_cli([
        "build-code", "--family", "del-pezzo-4", "--field", "7",
        "--degree", "1", "--strategy", "exhaustive", "--out", str(out),
    ], capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert (doc["n"], doc["k"], doc["d_lower"], doc["d_upper"]) == (57, 5, 44, 44)
    assert doc["d_exact"] is True
    assert doc["bounds"]["ns_alarm"] is False
    assert doc["field"] == "7"
    assert "[57,5,44]" in err


def test_build_code_reads_surface_file(tmp_path, capsys):
    surf = del_pezzo4_fixture()
    path = tmp_path / "dp4.surface"
    path.write_text(surface_to_text(surf))
    code, _, _ = run_cli([
        "build-code", "--surface", str(path), "--degree", "1",
        "--strategy", "exhaustive", "--out", str(tmp_path / "o.json"),
    ], capsys)
    assert code == 0
    doc = json.loads((tmp_path / "o.json").read_text())
    assert (doc["n"], doc["k"], doc["d_upper"]) == (57, 5, 44)


def test_min_dist_dp6(tmp_path, capsys):
    out = tmp_path / "d.json"
    code, _, _ = run_cli([
        "min-dist", "--family", "del-pezzo-6", "--field", "7", "--seed", "1",
        "--degree", "1", "--strategy", "exhaustive", "--out", str(out),
    ], capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert (doc["n"], doc["k"], doc["d_upper"], doc["d_exact"]) == (57, 7, 41, True)


def test_classify_cubic_cli(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _, _ = run_cli([
        "classify", "--family", "cayley-salmon", "--field", "7", "--seed", "1",
        "--depth", "2", "--out", str(out),
    ], capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["matched"] == "C12"
    assert doc["observed_Nr"]["1"] == 64


def test_scan_sections_dp4(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, _, _ = run_cli([
        "scan-sections", "--family", "del-pezzo-4", "--field", "7",
        "--out", str(out),
    ], capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["max_count"] == 13
    assert doc["optimal_genus1_count"] == 13
    assert doc["max_is_optimal"] is True
    assert sum(doc["histogram"].values()) == doc["total_hyperplanes"] == 2801


def test_search_jsonl_deterministic_and_resumable(tmp_path, capsys):
    args = ["search", "--family", "cayley-salmon", "--field", "7",
            "--seed", "1", "--budget", "10", "--depth", "1"]
    out1 = tmp_path / "a.jsonl"
    out2 = tmp_path / "b.jsonl"
    assert run_cli(args + ["--out", str(out1)], capsys)[0] == 0
    assert run_cli(args + ["--out", str(out2)], capsys)[0] == 0
    assert out1.read_text() == out2.read_text()
    lines = [json.loads(x) for x in out1.read_text().splitlines()]
    assert lines[-1] == {"substream_complete": 0, "hits": lines[-1]["hits"]}
    hits = [x for x in lines if "substream_complete" not in x]
    for hit in hits:
        assert hit["classification"]["matched"] == "C12"
        assert hit["code"]["n"] == 64 and hit["code"]["k"] == 4
    # a completed substream is skipped on rerun (file unchanged)
    before = out1.read_text()
    assert run_cli(args + ["--out", str(out1)], capsys)[0] == 0
    assert out1.read_text() == before


def test_build_code_reruns_are_diff_clean(tmp_path, capsys):
    args = ["build-code", "--family", "del-pezzo-6", "--field", "7", "--seed", "3",
            "--degree", "1", "--strategy", "exhaustive", "--enumerator", "--matrix"]
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(args + ["--out", str(out1)], capsys)[0] == 0
    assert run_cli(args + ["--out", str(out2)], capsys)[0] == 0
    assert out1.read_text() == out2.read_text()


def test_config_file_flags_win(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "del-pezzo-4", "field": "7", "degree": 1,
                               "strategy": "exhaustive"}))
    out = tmp_path / "o.json"
    code, _, _ = run_cli(["--config", str(cfg), "build-code", "--out", str(out)], capsys)
    assert code == 0
    assert json.loads(out.read_text())["n"] == 57
    # explicit flag beats the config value
    code, _, _ = run_cli([
        "--config", str(cfg), "build-code", "--family", "shioda", "--m", "4",
        "--field", "11", "--out", str(out),
    ], capsys)
    assert code == 0
    assert json.loads(out.read_text())["n"] == 144


def test_input_errors_exit_2(tmp_path, capsys):
    code, _, err = run_cli(["build-code", "--family", "nope", "--field", "7"], capsys)
    assert code == 2 and "error" in err
    code, _, _ = run_cli(["build-code", "--surface", str(tmp_path / "missing.txt")], capsys)
    assert code == 2
    code, _, _ = run_cli(["build-code", "--family", "shioda", "--field", "7"], capsys)
    assert code == 2  # missing --m


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "evalcodes.cli", "scan-sections", "--family",
         "del-pezzo-4", "--field", "7"],
        capture_output=True, text=True, timeout=300,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["max_count"] == 13


@pytest.mark.slow
def test_verify_paper_all_rows(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code, _, err = run_cli(["verify-paper", "--seed", "1", "--out", str(out)], capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["all_pass"] is True
    assert len(doc["rows"]) >= 30
    assert err.count("PASS") == len(doc["rows"])
