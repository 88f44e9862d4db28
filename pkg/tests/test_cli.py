from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from pairorbits.cli import main

DATA = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("PAIRORBITS_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ideals(capsys):
    code, out, _ = run(capsys, "ideals", "3^1,1^1")
    assert code == 0 and len(out.strip().splitlines()) == 1 + 9
    _, out, _ = run(capsys, "ideals", "3^1,1^1", "--realized")
    assert len(out.strip().splitlines()) == 1 + 6
    _, out, _ = run(capsys, "ideals", "3^1,1^1", "--realized", "--height-zero", "--format", "json")
    data = json.loads(out)
    assert [r["boundary"] for r in data["ideals"]] == ["0,0", "1,0", "2,0"]


def test_count(capsys):
    assert run(capsys, "count", "3^1,1^1", "--ideal", "(1,3);(0,1)")[1].strip() == "2q^2-1"
    assert run(capsys, "count", "3^1,1^1", "--ideal", "(2,3)", "--pi")[1].strip() == "2q-1"
    code, out, _ = run(capsys, "count", "2^2", "--ideal", "(0,2)", "--format", "json")
    data = json.loads(out)
    assert data == {"quantity": "n_ideal", "partition": "2^2", "ideal": "0",
                    "coefficients": [1, 1, 1], "provenance": "symbolic"}


def test_nlambda_and_cache(capsys, cache_dir):
    code, out, _ = run(capsys, "nlambda", "3^1,1^1", "--format", "json")
    first = json.loads(out)
    assert code == 0 and first["coefficients"] == [4, 7, 5, 1]
    assert first["provenance"].startswith("interpolated")
    assert (cache_dir / "n_lambda.txt").exists()
    again = json.loads(run(capsys, "nlambda", "3^1,1^1", "--format", "json")[1])
    fresh = json.loads(run(capsys, "nlambda", "3^1,1^1", "--format", "json", "--no-cache")[1])
    assert again == first and fresh["coefficients"] == first["coefficients"]
    (cache_dir / "n_lambda.txt").unlink()
    assert json.loads(run(capsys, "nlambda", "3^1,1^1", "--format", "json")[1])["coefficients"] == [4, 7, 5, 1]


def test_conflicting_cache_is_loud(capsys, cache_dir):
    cache_dir.mkdir(parents=True)
    (cache_dir / "n_lambda.txt").write_text("2^1 : 1 1 1 | scan | 0 | now\n")
    assert run(capsys, "scan", "--max", "2")[0] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "3^1,2^1")
    assert code == 0
    assert "PASS IndStep" in out and "(ascending: 2 5 4 1)" in out
    assert "FAIL" not in out


def test_scan_reference(capsys, tmp_path):
    report = tmp_path / "scan.txt"
    code, out, _ = run(capsys, "scan", "--max", "4", "--reference", str(DATA / "reference_small.txt"),
                       "--report", str(report))
    assert code == 0
    lines = report.read_text().splitlines()
    status = {line.split()[1]: line.split()[0] for line in lines}
    assert status["2^2"] == "MATCH" and status["3^1,1^1"] == "MATCH"
    assert all(s in ("MATCH", "OK") for s in status.values())


def test_exit_codes(capsys):
    assert run(capsys, "nlambda", "3^x")[0] == 2
    assert run(capsys, "count", "3^1,1^1", "--ideal", "(3,3)")[0] == 2
    assert run(capsys, "count", "3^1,1^1", "--ideal", "(0,2)")[0] == 2
    assert run(capsys, "nlambda", "3^2", "--budget", "10")[0] == 3
    assert run(capsys, "scan", "--max", "2", "--reference", "/nonexistent")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nlambda"])
    assert exc.value.code == 2


def test_console_script(cache_dir):
    out = subprocess.run([sys.executable, "-m", "pairorbits.cli", "nlambda", "2^2", "--no-cache"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "q^2+3q+5"


def test_jobs(capsys):
    code, out, _ = run(capsys, "nlambda", "2^1,1^1", "--jobs", "2", "--no-cache")
    assert out.strip() == "q^2+5q+5"
