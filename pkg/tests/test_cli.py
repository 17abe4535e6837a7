import json
import subprocess
import sys

import pytest

from swrecon.cli import main
from swrecon.ldpc import load_alist


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = run_cli(capsys, "info", "--dist", "bsc:0.1", "--no-metadata")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "info" and "metadata" not in doc
    assert doc["result"]["H_X_given_Y"] == pytest.approx(0.468995593589281)
    assert doc["result"]["H_X"] == pytest.approx(1.0)


def test_info_metadata_present_by_default(capsys):
    _, out, _ = run_cli(capsys, "info", "--dist", "asym:0.1,0.2")
    assert "wall_clock_s" in json.loads(out)["metadata"]


def test_distribution_file(capsys, tmp_path):
    f = tmp_path / "d.json"
    f.write_text(json.dumps({"p00": 0.45, "p01": 0.05, "p10": 0.05, "p11": 0.45}))
    code, out, _ = run_cli(capsys, "info", "--dist", str(f), "--no-metadata")
    assert code == 0
    assert json.loads(out)["result"]["H_X_given_Y"] == pytest.approx(0.468995593589281)


@pytest.mark.parametrize("argv", [
    ["info", "--dist", "bsc:abc"],
    ["info", "--dist", "bsc:0.7"],
    ["info", "--dist", "asym:0.1"],
    ["info", "--dist", "nonexistent.json"],
    ["simulate", "--dist", "bsc:0.1", "--matrix", "peg:3,6", "--n", "60", "--trials", "0"],
    ["simulate", "--dist", "bsc:0.1", "--n", "60"],
    ["simulate", "--dist", "bsc:0.1", "--matrix", "peg:3,x", "--n", "60"],
    ["simulate", "--dist", "bsc:0.1", "--matrix", "peg:3,6", "--n", "60", "--reveal", "2"],
    ["simulate", "--dist", "bsc:0.1", "--matrix", "missing.alist"],
    ["cascade", "--dist", "bsc:0.1"],
    ["de-threshold", "--regular", "6,3"],
    ["sweep", "universality", "--dist", "bsc:0.1", "--matrix", "peg:3,6", "--n", "60",
     "--anchors", "0.3"],
    ["info", "--dist", "bsc:0.1", "--format", "csv"],
])
def test_usage_errors_exit_nonzero(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2
    assert "error:" in err and out == ""


def test_gen_matrix_writes_alist(capsys, tmp_path):
    f = tmp_path / "m.alist"
    code, out, _ = run_cli(capsys, "gen-matrix", "3,6", "--n", "120", "--seed", "4",
                           "--out", str(f), "--no-metadata")
    assert code == 0
    M = load_alist(f.read_text())
    assert (M.n, M.m) == (120, 60)
    assert json.loads(out)["result"]["edges"] == 360
    # alist matrices feed back into simulate
    code, out, _ = run_cli(capsys, "simulate", "--dist", "bsc:0.02", "--matrix", str(f),
                           "--trials", "3", "--no-metadata")
    assert code == 0 and json.loads(out)["result"]["n"] == 120


def test_gen_matrix_needs_out(capsys):
    assert run_cli(capsys, "gen-matrix", "3,6", "--n", "60")[0] == 2


def test_seeded_simulation_is_byte_identical(capsys):
    argv = ["simulate", "--dist", "bsc:0.05", "--matrix", "peg:3,6", "--n", "200",
            "--trials", "5", "--seed", "7", "--no-metadata"]
    _, a, _ = run_cli(capsys, *argv)
    _, b, _ = run_cli(capsys, *argv)
    assert a == b
    doc = json.loads(a)
    assert doc["config"]["seed"] == 7 and doc["config"]["matrix"]["matrix_seed"] == 0


def test_csv_output(capsys, tmp_path):
    out_file = tmp_path / "r.csv"
    code, out, _ = run_cli(capsys, "cascade", "--dist", "bsc:0.05", "--n", "500", "--trials", "3",
                           "--format", "csv", "--out", str(out_file))
    assert code == 0 and out == ""
    lines = out_file.read_text().splitlines()
    assert lines[0].startswith("# config: ")
    assert lines[1].startswith("scheme,dist,a,b,n,m,trials,fer")
    assert lines[2].startswith("cascade,bsc:0.05,")


def test_sweeps(capsys):
    code, out, _ = run_cli(capsys, "sweep", "rate", "--dist", "bsc:0.08", "--matrix", "peg:3,6",
                           "--n", "200", "--trials", "4", "--reveal", "0,0.5", "--no-metadata")
    assert code == 0
    reps = json.loads(out)["result"]["reports"]
    assert [r["effective_rate"] for r in reps] == [0.5, 1.0]
    code, out, _ = run_cli(capsys, "sweep", "universality", "--dist", "bsc:0.05", "--matrix",
                           "peg:3,6", "--n", "200", "--trials", "4", "--anchors", "0.01,0.02",
                           "--no-metadata")
    assert code == 0
    res = json.loads(out)["result"]
    assert len(res["reports"]) == 3 and res["spread"] >= 0


def test_de_commands(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "de-threshold", "--regular", "3,6", "--tol", "0.02",
                           "--n-pop", "5000", "--de-iters", "200", "--no-metadata")
    assert code == 0
    rep = json.loads(out)["result"]
    assert rep["lo"] <= rep["p_star"] <= rep["hi"]
    f = tmp_path / "search.json"
    code, _, _ = run_cli(capsys, "de-search", "--rate", "0.5", "--cap", "6", "--budget", "1",
                         "--tol", "0.02", "--out", str(f))
    assert code == 0
    code, out, _ = run_cli(capsys, "de-threshold", "--ensemble", str(f), "--tol", "0.05",
                           "--n-pop", "2000", "--de-iters", "100", "--no-metadata")
    assert code == 0
    assert json.loads(out)["config"]["ensemble"]["lambda"] == [[3, 1.0]]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "swrecon.cli", "info", "--dist", "bsc:0.1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["command"] == "info"
