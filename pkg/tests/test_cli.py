import json
import subprocess
import sys

import pytest

import reference_values as ref
from elcal.cli import DEFAULT_SEED, main
from test_el import LOG_9_8


def run(argv, capsys):
    rc = main(argv)
    out, err = capsys.readouterr()
    return rc, out, err


@pytest.fixture
def data(tmp_path):
    def write(*values, name="data.txt"):
        p = tmp_path / name
        p.write_text("\n".join(str(v) for v in values) + "\n", encoding="utf-8")
        return str(p)
    return write


def test_elr_zero(data, capsys):
    rc, out, _ = run(["elr", "--data", data(1, 2, 3), "--mu0", "2", "--format", "json"], capsys)
    d = json.loads(out)
    assert rc == 0 and d["statistic"] == 0.0 and d["p_value"] == 1.0


def test_elr_hull_violation(data, capsys):
    rc, out, _ = run(["elr", "--data", data(1, 2, 3), "--mu0", "5", "--format", "json"], capsys)
    d = json.loads(out)
    assert rc == 0 and d["status"] == "HullViolation" and d["p_value"] == 0.0 and d["statistic"] == "inf"


def test_elr_oracle_value(data, capsys):
    rc, out, _ = run(["elr", "--data", data(1, 2, 4), "--mu0", "2", "--format", "csv"], capsys)
    head, vals = out.splitlines()
    row = dict(zip(head.split(","), vals.split(",")))
    assert rc == 0 and float(row["statistic"]) == pytest.approx(LOG_9_8, abs=1e-12)
    assert float(row["lambda"]) == pytest.approx(0.25, abs=1e-12)
    rc, out, _ = run(["elr", "--data", data(1, 2, 4), "--mu0", "2"], capsys)
    assert "Interior" in out and "p_value" in out


def test_elr_bad_line(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("# c\n1.0\nx\n")
    rc, _, err = run(["elr", "--data", str(p), "--mu0", "0"], capsys)
    assert rc == 2 and "bad.txt:3" in err
    rc, _, err = run(["elr", "--data", str(tmp_path / "missing.txt"), "--mu0", "0"], capsys)
    assert rc == 2 and "error" in err


def test_quantiles(capsys):
    rc, out, _ = run(["quantiles", "--format", "csv"], capsys)
    rows = out.splitlines()[1:]
    assert rc == 0 and len(rows) == 9
    for line, (c, q) in zip(rows, zip(ref.COVERAGES, ref.ASYMPTOTIC)):
        cov, val = line.split(",")
        assert float(cov) == c and float(val) == pytest.approx(q, abs=1e-3)
    rc, out, _ = run(["quantiles"], capsys)
    assert "3.841" in out and "6.635" in out and "1.074" in out


def test_table_text_has_na(capsys):
    rc, out, _ = run(["table", "--dist", "chisq(1)", "--n-grid", "10", "--coverage", "0.8,0.99",
                      "--B", "5000", "--format", "text"], capsys)
    line = [ln for ln in out.splitlines() if ln.startswith("10")][0]
    assert rc == 0 and line.split("|")[1].split()[1] == "NA"
    assert f"# seed={DEFAULT_SEED}" in out and "# B=5000" in out


def test_table_bytes_deterministic(tmp_path, capsys):
    outs = []
    for w in ("1", "3"):
        path = tmp_path / f"t{w}.csv"
        rc, _, _ = run(["table", "--dist", "unif(0,1)", "--n-grid", "10,20", "--B", "3000", "--seed", "4",
                        "--workers", w, "--out", str(path)], capsys)
        assert rc == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_cache_dir_from_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ELCAL_CACHE_DIR", str(tmp_path / "cache"))
    rc, first, _ = run(["curve-alpha", "--dist", "exp(1)", "--n", "8", "--B", "1000", "--alpha-grid", "0.05,0.1"], capsys)
    assert rc == 0 and len(list((tmp_path / "cache").iterdir())) == 1
    rc, second, _ = run(["curve-alpha", "--dist", "exp(1)", "--n", "8", "--B", "1000", "--alpha-grid", "0.05,0.1"], capsys)
    assert second == first


def test_curve_commands(capsys):
    rc, out, _ = run(["curve-n", "--dist", "normal", "--n-grid", "10,20", "--B", "1000", "--scaled",
                      "--format", "json"], capsys)
    doc = json.loads(out)
    assert rc == 0 and doc["metadata"]["kind"] == "ScaledDeviation" and len(doc["points"]) == 2
    rc, out, _ = run(["calibrate", "--dist", "normal", "--n", "20", "--alpha", "0.05,0.1", "--B", "5000"], capsys)
    assert rc == 0 and "0.95" in out and "0.9" in out


def test_bad_spec(capsys):
    rc, _, err = run(["table", "--dist", "foo(1)", "--B", "100"], capsys)
    assert rc == 2 and "'foo'" in err


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit) as info:
        main(["table", "--dist", "normal", "--B", "10"])
    assert info.value.code != 0
    rc, _, err = run(["curve-n", "--dist", "t(2)", "--n-grid", "10", "--B", "100"], capsys)
    assert rc == 1 and "variance" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "elcal.cli", "quantiles", "--coverage", "0.95"],
                          capture_output=True, text=True, check=True)
    assert "3.841" in proc.stdout
