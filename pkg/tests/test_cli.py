import json
import math
import os
import subprocess
import sys

import pytest

from shearcount import read_spectrum_csv, read_sweep_csv
from shearcount.cli import main


def run(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---- count ----

def test_count_rowslice(capsys):
    code, out, _ = run(["count", "--x", "0.2", "--y", "1", "--radius", "2.3", "--method", "rowslice"], capsys)
    assert code == 0
    assert out.strip() == "17"


def test_count_tie_case_warns_and_exits_2(capsys):
    code, out, err = run(["count", "--x", "0", "--y", "1", "--radius", "2"], capsys)
    assert code == 2
    assert out.strip() == "9"
    assert "ties" in err


def test_count_formula_json(capsys):
    code, out, _ = run(
        ["count", "--x", "0.5", "--y", "1", "--radius", "1.5", "--method", "formula", "--json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 7
    assert payload["method"] == "formula"
    assert payload["ties"] == 0
    assert payload["remainder"] == pytest.approx(7.0 - 2.25 * math.pi)


def test_count_rejects_negative_height(capsys):
    code, _, err = run(["count", "--y", "-1", "--radius", "2"], capsys)
    assert code == 1
    assert "--y" in err


def test_count_missing_radius(capsys):
    code, _, err = run(["count", "--y", "1"], capsys)
    assert code == 1


# ---- meansquare ----

def test_meansquare_constant_case(capsys):
    code, out, _ = run(["meansquare", "--y", "1", "--radius", "0.5", "--integrator", "breakpoints"], capsys)
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.startswith("T,y,mean_square")
    assert float(row.split(",")[2]) == pytest.approx(0.046053948273188315, abs=1e-12)


def test_meansquare_grid_close_to_breakpoints(capsys):
    code, out_b, _ = run(["meansquare", "--y", "1", "--radius", "20", "--integrator", "breakpoints"], capsys)
    assert code == 0
    code, out_g, _ = run(
        ["meansquare", "--y", "1", "--radius", "20", "--integrator", "grid", "--grid-points", "32768"],
        capsys,
    )
    assert code == 0
    ms_b = float(out_b.strip().splitlines()[1].split(",")[2])
    ms_g = float(out_g.strip().splitlines()[1].split(",")[2])
    assert abs(ms_g - ms_b) < 0.02 * ms_b


def test_meansquare_range_exceeded_suggests_grid(capsys):
    code, _, err = run(["meansquare", "--y", "0.0001", "--radius", "500", "--integrator", "breakpoints"], capsys)
    assert code == 3
    assert "grid" in err


def test_meansquare_parseval(capsys):
    code, out, _ = run(["meansquare", "--y", "1", "--radius", "1.5", "--integrator", "parseval"], capsys)
    assert code == 0
    row = out.strip().splitlines()[1]
    assert row.split(",")[6] == "parseval-assembled"
    assert float(row.split(",")[2]) == pytest.approx(0.8842141576794406, abs=0.01)


# ---- sweep ----

def test_sweep_file_output(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(
        ["sweep", "--y", "1", "--radius-min", "10", "--radius-max", "100", "--samples", "5",
         "--log", "--out", str(out)],
        capsys,
    )
    assert code == 0
    with open(out) as fh:
        reports = read_sweep_csv(fh)
    assert len(reports) == 5
    assert all(r.method == "breakpoints" for r in reports)


def test_sweep_zero_samples_header_only(tmp_path, capsys):
    out = tmp_path / "empty.csv"
    code, _, _ = run(
        ["sweep", "--y", "1", "--radius-min", "10", "--radius-max", "100", "--samples", "0",
         "--out", str(out)],
        capsys,
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines == ["T,y,mean_square,mean_remainder,upper_bound,ratio,method,breakpoints,elapsed_ms"]


def test_sweep_unwritable_out(capsys):
    code, _, err = run(
        ["sweep", "--y", "1", "--radius-min", "10", "--radius-max", "20", "--samples", "1",
         "--out", "/nonexistent-dir/s.csv"],
        capsys,
    )
    assert code == 1
    assert "cannot write" in err


def test_sweep_negative_samples(capsys):
    code, _, _ = run(
        ["sweep", "--y", "1", "--radius-min", "10", "--radius-max", "20", "--samples", "-1",
         "--out", "/tmp/x.csv"],
        capsys,
    )
    assert code == 1


def test_sweep_deterministic_across_thread_env(tmp_path):
    cmd = [sys.executable, "-m", "shearcount", "sweep", "--y", "1", "--y", "2",
           "--radius-min", "5", "--radius-max", "60", "--samples", "4", "--log"]
    outs = []
    for threads, name in (("1", "a.csv"), ("3", "b.csv")):
        path = tmp_path / name
        env = dict(os.environ, SHEARCOUNT_THREADS=threads)
        subprocess.run(cmd + ["--out", str(path)], check=True, env=env)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


# ---- spectrum ----

def test_spectrum_output(tmp_path, capsys):
    out = tmp_path / "coeffs.csv"
    code, _, _ = run(["spectrum", "--y", "1", "--radius", "1.5", "--kmax", "1", "--out", str(out)], capsys)
    assert code == 0
    text = out.read_text().splitlines()
    assert text[0] == "k,c_k"
    assert text[1].startswith("1,0.860")
    assert text[-1].startswith("# l2_truncation_bound=")
    with open(out) as fh:
        coeffs, bound = read_spectrum_csv(fh)
    assert coeffs.size == 1 and bound > 0


def test_spectrum_zero_radius_rows(capsys):
    code, out, _ = run(["spectrum", "--y", "1", "--radius", "0.5", "--kmax", "10"], capsys)
    assert code == 0
    rows = [l for l in out.splitlines() if l and not l.startswith(("k,", "#"))]
    assert len(rows) == 10
    assert all(float(r.split(",")[1]) == 0.0 for r in rows)


def test_spectrum_rejects_zero_kmax(capsys):
    code, _, err = run(["spectrum", "--y", "1", "--radius", "1.5", "--kmax", "0"], capsys)
    assert code == 1
    assert "--kmax" in err


# ---- verify ----

def test_verify_small_run_passes(capsys):
    code, out, _ = run(["verify", "--seed", "42", "--cases", "20"], capsys)
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_zero_cases_vacuous(capsys):
    code, out, _ = run(["verify", "--cases", "0"], capsys)
    assert code == 0
    assert "vacuous" in out


def test_verify_injected_fault_detected(capsys):
    code, out, _ = run(["verify", "--seed", "42", "--cases", "20", "--inject-fault"], capsys)
    assert code == 4
    assert "FAIL" in out
