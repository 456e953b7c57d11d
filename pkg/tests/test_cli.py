import json
import subprocess
import sys

import pytest

from consecprimes.cli import run


def _run(capsysbinary, *argv):
    code = run(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out, err


def test_verify_theorem2(capsysbinary):
    code, out, _ = _run(capsysbinary, "verify", "--theorem", "2", "--max-n", "100000")
    assert code == 0
    assert b"n >= 4" in out and b"confirmed" in out


def test_verify_json(capsysbinary):
    code, out, _ = _run(capsysbinary, "verify", "--theorem", "1", "--max-n", "1000", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["passed"] is True and d["equalities"] == [1]


def test_certificate_weak_bound(capsysbinary):
    code, out, _ = _run(capsysbinary, "certificate", "--k", "3", "--c", "5", "--n0", "9", "--format", "json")
    d = json.loads(out)
    assert code == 1
    assert d["type"] == "WeakBound" and d["leading_coefficient"] == "-4031"


def test_certificate_builtin(capsysbinary):
    code, out, _ = _run(capsysbinary, "certificate", "--k", "2", "--c", "5", "--n0", "9", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["gap_bound"] == "Nagura" and d["n_min"] == 4 and d["coeffs"] == ["-2400", "-2460", "229"]


def test_certificate_by_name_and_head_gap(capsysbinary):
    code, out, _ = _run(capsysbinary, "certificate", "--k", "3", "--bound", "Rohrbach-Weis", "--scan-budget", "50")
    assert code == 1 and b"head_gap" in out


def test_certificate_custom_bound_file(tmp_path, capsysbinary):
    path = tmp_path / "b.json"
    path.write_text('[{"name":"custom","c":7,"n0":30,"provenance":"user"}]')
    code, out, _ = _run(capsysbinary, "certificate", "--k", "2", "--bound", "custom", "--gap-bounds", str(path),
                        "--format", "json")
    assert code == 0 and json.loads(out)["final_statement"].endswith("(conditional on custom)")


def test_threshold_tiny_window(capsysbinary):
    code, out, _ = _run(capsysbinary, "threshold", "--k", "9999", "--max-n", "10", "--format", "json")
    assert code == 1 and json.loads(out)["type"] == "NoThreshold"


def test_threshold_csv(capsysbinary):
    code, out, _ = _run(capsysbinary, "threshold", "--k", "3", "--max-n", "1000", "--format", "csv")
    assert code == 0 and out == b"3,1000,9,1 2 3 4 5 7 8\n"


def test_limit(capsysbinary):
    code, out, _ = _run(capsysbinary, "limit", "--k", "2", "--epsilon", "0.5", "--max-n", "10000", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["threshold"] == 16 and "not examined" in d["caveat"]


def test_limit_bad_epsilon(capsysbinary):
    code, _, err = _run(capsysbinary, "limit", "--k", "2", "--epsilon", "abc", "--max-n", "10")
    assert code == 2 and err


def test_gapcheck(capsysbinary):
    code, out, _ = _run(capsysbinary, "gapcheck", "--c", "5", "--max-n", "1000", "--format", "json")
    assert code == 0 and json.loads(out)["empirical_n0"] == 9
    code, _, _ = _run(capsysbinary, "gapcheck", "--c", "5", "--max-n", "1000", "--n0", "8")
    assert code == 1


def test_sieve(capsysbinary, tmp_path):
    code, out, _ = _run(capsysbinary, "sieve", "--limit", "30")
    assert code == 0 and out.split() == [b"2", b"3", b"5", b"7", b"11", b"13", b"17", b"19", b"23", b"29"]
    target = tmp_path / "p.json"
    code, out, _ = _run(capsysbinary, "sieve", "--limit", "10", "--format", "json", "--output", str(target))
    assert code == 0 and out == b""
    assert json.loads(target.read_text())["primes"] == [2, 3, 5, 7]


def test_resource_error_exit_code(capsysbinary):
    code, _, err = _run(capsysbinary, "sieve", "--limit", str(10**14))
    assert code == 3 and b"resource" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["verify", "--theorem", "4", "--max-n", "100"],
        ["verify", "--theorem", "1", "--max-n", "5"],
        ["threshold", "--k", "0", "--max-n", "10"],
        ["threshold", "--k", "2", "--max-n", "-3"],
        ["certificate", "--k", "2"],
        ["certificate", "--k", "1", "--c", "5", "--n0", "9"],
        ["certificate", "--k", "2", "--bound", "nobody"],
        ["certificate", "--k", "2", "--c", "1", "--n0", "9"],
        ["gapcheck", "--c", "5", "--max-n", "10", "--gap-bounds", "/nonexistent.json"],
        ["sieve", "--limit", "10", "--format", "xml"],
    ],
)
def test_usage_errors(capsysbinary, argv):
    code, _, _ = _run(capsysbinary, *argv)
    assert code == 2


def test_bad_gap_bound_file_names_entry(tmp_path, capsysbinary):
    path = tmp_path / "b.json"
    path.write_text('[{"name":"Nagura","c":4,"n0":9}]')
    code, _, err = _run(capsysbinary, "certificate", "--k", "2", "--bound", "Nagura", "--gap-bounds", str(path))
    assert code == 2 and b"duplicate" in err and b"'c': 4" in err


def test_segment_size_env_and_flag(monkeypatch, capsysbinary):
    _, ref, _ = _run(capsysbinary, "sieve", "--limit", "5000")
    monkeypatch.setenv("CONSECPRIMES_SEGMENT_SIZE", "33")
    _, env, _ = _run(capsysbinary, "sieve", "--limit", "5000")
    _, flag, _ = _run(capsysbinary, "sieve", "--limit", "5000", "--segment-size", "101")
    assert ref == env == flag


def test_workers_do_not_change_report(capsysbinary):
    _, one, _ = _run(capsysbinary, "verify", "--theorem", "3", "--max-n", "5000", "--format", "json")
    _, two, _ = _run(capsysbinary, "verify", "--theorem", "3", "--max-n", "5000", "--format", "json", "--workers", "2")
    assert one == two


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "consecprimes", "threshold", "--k", "2", "--max-n", "100", "--format", "csv"],
        capture_output=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == b"2,100,4,1 2 3\n"
