import csv
import io
import json
import subprocess
import sys
from importlib import resources

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from intertrace.cli import main

PAPER_FILE = str(resources.files("intertrace").joinpath("data/paper_scenario.json"))


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, obj, name="s.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def row(text, name):
    return next(line for line in text.splitlines() if line.startswith(name + " "))


def test_paper_demo():
    code, out, _ = run(["paper-demo"])
    assert code == 0
    final_a = row(out, "A").split("|")[-1].split()
    assert final_a == ["0.9896", "0.5541", "0.4558"]
    assert "C: r=0.99399 theta=8.481 phi=-83.706" in out
    assert "peak dim   4" in out and "peak dim   8" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "intertrace", "paper-demo"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "0.9896 0.5541 0.4558" in proc.stdout


def test_run_table(tmp_path):
    code, out, _ = run(["run", PAPER_FILE, "--policy", "lazy"])
    assert code == 0
    assert "policy: lazy" in out
    assert "0.9896 0.5541 0.4558" in row(out, "A")


def test_run_all_prints_deviation():
    code, out, _ = run(["run", PAPER_FILE])
    assert code == 0
    assert out.count("policy: ") == 3
    assert "max policy deviation" in out


def test_run_exact_integrator():
    code, out, _ = run(["run", PAPER_FILE, "--policy", "minimal", "--integrator", "exact"])
    assert code == 0
    assert "integrator: exact" in out


def test_table_csv():
    code, out, _ = run(["run", PAPER_FILE, "--policy", "minimal", "--format", "table-csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    final = next(r for r in rows if r["qubit"] == "A" and r["stage"] == "after 2nd interaction")
    assert (final["px"], final["py"], final["pz"]) == ("0.9896", "0.5541", "0.4558")


def test_structured_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert run(["run", PAPER_FILE, "--format", "structured", "--out", str(path)])[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert {r["policy"] for r in data["reports"]} == {"full", "lazy", "minimal"}


def test_plotdata_to_file(tmp_path):
    path = tmp_path / "plot.csv"
    code, out, _ = run(["run", PAPER_FILE, "--policy", "minimal", "--format", "plotdata",
                        "--out", str(path)])
    assert code == 0 and out == ""
    rows = list(csv.DictReader(path.open()))
    assert {r["stage"] for r in rows} == {"initial", "final"}
    c = next(r for r in rows if r["qubit"] == "C" and r["stage"] == "final")
    assert float(c["theta_deg"]) == pytest.approx(8.481, abs=1e-3)


def test_zero_interactions(tmp_path):
    path = write(tmp_path, {"systems": [{"label": "A", "prep": {"pauli": {"axis": "z"}}}],
                            "interactions": []})
    code, out, _ = run(["run", path, "--policy", "full"])
    assert code == 0
    assert "initial" in out and "after 1st" not in out


def test_compare():
    code, out, _ = run(["compare", PAPER_FILE])
    assert code == 0
    assert float(out.split(":")[-1]) <= 1e-12


def test_bench_incident():
    code, out, _ = run(["bench", "--incident", "2", "--repeats", "3", "--warmup", "0"])
    assert code == 0
    assert "minimal" in out and "max policy deviation" in out


def test_bench_file():
    code, out, _ = run(["bench", PAPER_FILE, "--repeats", "3"])
    assert code == 0
    assert "full" in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["run"],
    ["run", PAPER_FILE, "--policy", "frugal"],
    ["run", PAPER_FILE, "--format", "xml"],
    ["bench"],
    ["bench", PAPER_FILE, "--repeats", "2"],
    ["bench", "--incident", "-1"],
])
def test_usage_errors(argv):
    assert run(argv)[0] == 2


def test_help_is_success():
    assert run(["--help"])[0] == 0


def test_missing_file(tmp_path):
    code, _, err = run(["run", str(tmp_path / "missing.file")])
    assert code == 3
    assert "cannot read" in err


@pytest.mark.parametrize("text, fragment", [
    ("{not json", "line 1"),
    ('{"systems": [], "interactions": []}', "systems"),
    ('{"systems": [{"label": "A", "prep": {"pauli": {"axis": "q"}}}], "interactions": []}',
     "unknown axis"),
    ('{"systems": [{"label": "A", "prep": {"pauli": {"axis": "x"}}}], "interactions": [],'
     ' "policy": "frugal"}', "frugal"),
])
def test_malformed_files(tmp_path, text, fragment):
    code, out, err = run(["run", write(tmp_path, text)])
    assert code == 3
    assert fragment in err
    assert out == ""


def test_unwritable_output(tmp_path):
    code, _, _ = run(["run", PAPER_FILE, "--format", "structured",
                      "--out", str(tmp_path / "no" / "such" / "dir.json")])
    assert code == 3


def test_over_cap_suggests_minimal(tmp_path):
    systems = [{"label": f"Q{i}", "prep": {"pauli": {"axis": "x"}}} for i in range(4)]
    path = write(tmp_path, {"systems": systems, "max_dim": 8,
                            "interactions": [{"pair": ["Q0", f"Q{i}"], "steps": 1} for i in (1, 2, 3)]})
    code, _, err = run(["run", path, "--policy", "full"])
    assert code == 3
    assert "minimal" in err
    assert run(["run", path, "--policy", "minimal"])[0] == 0


@settings(max_examples=100, deadline=None,
          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
@given(data=st.binary(max_size=300))
def test_fuzzed_files_exit_cleanly(tmp_path, data):
    path = tmp_path / "fuzz.json"
    path.write_bytes(data)
    code, _, _ = run(["run", str(path)])
    assert code == 3
