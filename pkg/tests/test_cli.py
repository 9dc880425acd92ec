import json
import subprocess
import sys

import pytest

from dipole_atlas import checks, cli
from dipole_atlas.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, run


def out(capsys, argv, code=EXIT_OK):
    assert run(argv) == code
    return capsys.readouterr()


def test_count_pqn(capsys):
    assert out(capsys, ["count", "pqn", "--p", "1", "--q", "1", "--n", "2", "--g", "0"]).out.strip() == "1"


def test_count_pqn_json_and_path(capsys):
    text = out(capsys, ["count", "pqn", "--p", "3", "--q", "4", "--n", "9", "--g", "2",
                        "--path", "closed", "--format", "json"]).out
    assert json.loads(text) == {"p": 3, "q": 4, "n": 9, "g": 2, "count": 786}


def test_count_abcd(capsys):
    assert out(capsys, ["count", "abcd", "--a", "2", "--b", "3", "--c", "0", "--d", "0",
                        "--g", "2"]).out.strip() == "75"


@pytest.mark.parametrize("argv", [
    ["count", "pqn", "--p", "0", "--q", "1", "--n", "2", "--g", "0"],
    ["count", "pqn", "--p", "1", "--q", "1", "--n", "11", "--g", "0"],
    ["count", "pqn", "--p", "1", "--q", "1", "--n", "4", "--g", "3", "--path", "closed"],
    ["count", "pqn", "--p", "1"],
    ["count", "nonsense"],
    ["psi", "0"],
    ["psi", "a"],
    ["oracle", "count"],
    ["oracle", "count", "--filter", "pqn:1,1"],
    ["oracle", "count", "--n", "11"],
    ["oracle", "count", "--n", "3", "--filter", "pqn:1,1,2,0"],
    ["verify", "--max-n", "1"],
    ["verify", "--max-n", "10"],
    ["table", "--n-max", "1", "--g-max", "0"],
])
def test_usage_errors(capsys, argv):
    err = out(capsys, argv, EXIT_USAGE).err
    assert "error" in err


def test_unsafe_order_allows_large_n(capsys):
    text = out(capsys, ["count", "pqn", "--p", "4", "--q", "6", "--n", "10", "--g", "0",
                        "--unsafe-order"]).out
    assert text.strip() == "1"


def test_threads_env(monkeypatch):
    monkeypatch.setenv("DIPOLE_ATLAS_THREADS", "3")
    assert cli.threads() == 3
    monkeypatch.setenv("DIPOLE_ATLAS_THREADS", "zero")
    with pytest.raises(cli.UsageError):
        cli.threads()


def test_table_formats(capsys):
    doc = json.loads(out(capsys, ["table", "--n-max", "3", "--g-max", "1"]).out)
    assert doc["columns"] == ["p", "q", "n", "g", "count"]
    assert doc["rows"][0] == {"p": 1, "q": 1, "n": 2, "g": 0, "count": 1}
    lines = out(capsys, ["table", "--n-max", "3", "--g-max", "0", "--format", "csv"]).out.splitlines()
    assert lines == ["p,q,n,g,count", "1,1,2,0,1", "1,1,3,0,0", "1,2,3,0,1", "2,1,3,0,1",
                     "2,2,3,0,0"]


def test_table_threaded_matches_serial(capsys, monkeypatch):
    serial = out(capsys, ["table", "--n-max", "5", "--g-max", "2"]).out
    monkeypatch.setenv("DIPOLE_ATLAS_THREADS", "2")
    assert out(capsys, ["table", "--n-max", "5", "--g-max", "2"]).out == serial


def test_series_dump(capsys):
    doc = json.loads(out(capsys, ["series", "dump", "--which", "B0", "--order", "3"]).out)
    assert doc[0] == {"g": "B", "f": [{"cyc": "(W)", "mult": 1}], "x": 1, "y": 0, "v": 0, "w": 0,
                      "u": 0, "coeff": "1"}
    assert [t["x"] for t in doc] == [1, 2, 3]
    assert doc[2]["coeff"] == "1/6"
    doc = json.loads(out(capsys, ["series", "dump", "--which", "Gamma1", "--order", "4", "--forget",
                                  "--path", "iterative"]).out)
    assert doc and all(t["g"] is None and t["f"] == [] and t["u"] == 2 for t in doc)


def test_psi(capsys):
    assert out(capsys, ["psi", "3"]).out.strip() == "1"
    assert out(capsys, ["psi", "3,1,1"]).out.strip() == out(capsys, ["psi", "1", "3", "1"]).out.strip()
    doc = json.loads(out(capsys, ["psi", "1", "3", "--format", "json"]).out)
    assert doc["partition"] == [3, 1]


def test_oracle_count(capsys):
    assert out(capsys, ["oracle", "count", "--filter", "pqn:1,1,2,0"]).out.strip() == "1"
    assert out(capsys, ["oracle", "count", "--filter", "face:1,1,1"]).out.strip() == "1"
    rows = json.loads(out(capsys, ["oracle", "count", "--n", "3"]).out)
    assert sum(r["count"] for r in rows) == 2 * 2


def test_oracle_verify(capsys):
    text = out(capsys, ["oracle", "verify", "--max-n", "5"]).out
    assert text.strip().endswith("all checks passed")
    assert "FAIL " not in text


def test_verify_suites(capsys):
    text = out(capsys, ["verify", "--max-n", "5", "--suite", "psi", "--suite", "appendix"]).out
    lines = text.splitlines()
    assert all(line.startswith("PASS ") for line in lines[:-1])
    assert "13 coefficient mismatches" in text


def test_verify_failure_exit_code(capsys):
    results = [checks.CheckResult("demo", "first", True),
               checks.CheckResult("demo", "second", False, "broken"),
               checks.CheckResult("demo", "third", False)]
    assert cli._report(results) == EXIT_VERIFY
    text = capsys.readouterr().out
    assert "FAIL demo: second (broken)" in text
    assert text.strip().endswith("FAILED: demo: second")


def test_suite_stops_at_first_failure(monkeypatch):
    def fake(max_n):
        yield checks.CheckResult("fake", "a", False)
        yield checks.CheckResult("fake", "b", True)

    monkeypatch.setitem(checks.SUITES, "fake", fake)
    assert [r.name for r in checks.run(4, ["fake"])] == ["a"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dipole_atlas", "psi", "1", "1", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
    proc = subprocess.run([sys.executable, "-m", "dipole_atlas", "bogus"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE


def test_appendix_raw_reports_each_mismatch(capsys):
    text = out(capsys, ["appendix"], EXIT_VERIFY).out
    assert "DISAGREE" in text
    assert text.count("tables - recursion =") == 13
    assert "[x^2/2! y^2/2! v^2/2! w^2 u^4] tables - recursion = 8" in text


def test_appendix_with_errata_and_variant_agrees(capsys):
    text = out(capsys, ["appendix", "--errata", "--variant"]).out
    assert text.splitlines()[0].endswith("agree")
