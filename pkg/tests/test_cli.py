import csv
import io
import json

import pytest

from sortnet.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert run(capsys, "count", "4") == (0, "16\n", "")


def test_theorem1(capsys):
    code, out, _ = run(capsys, "theorem1", "4", "2")
    assert code == 0 and out.startswith("9/4")


def test_subnet_of_figure_network(capsys, tmp_path):
    f = tmp_path / "nets.txt"
    f.write_text("# example\n5: 2 1 3 4 2 3 4 2 1 2\n")
    code, out, _ = run(capsys, "subnet", "--input", str(f), "--subset", "1,2,4")
    assert code == 0 and out == "3: 2 1 2\n"


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "3")
    assert code == 0 and out.splitlines() == ["3: 1 2 1", "3: 2 1 2"]


def test_enumerate_large_guard(capsys):
    code, _, err = run(capsys, "enumerate", "7")
    assert code == 2 and "allow" in err


def test_sample_reproducible(capsys, tmp_path):
    out1 = tmp_path / "a.txt"
    assert run(capsys, "sample", "8", "--seed", "3", "--count", "4", "--out", str(out1))[0] == 0
    _, out2, _ = run(capsys, "sample", "8", "--seed", "3", "--count", "4")
    assert out1.read_text() == out2 and len(out2.splitlines()) == 4


def test_missing_seed_is_usage_error(capsys):
    code, _, err = run(capsys, "sample", "8")
    assert code == 2 and "--seed" in err


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_pmf_formats(capsys):
    _, text, _ = run(capsys, "pmf-first-swap", "4")
    assert "5/16" in text
    _, out, _ = run(capsys, "pmf-first-swap", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["numerator"] + "/" + r["denominator"] for r in rows] == ["5/16", "3/8", "5/16"]
    _, out, _ = run(capsys, "pmf-first-swap", "4", "--format", "json")
    data = json.loads(out)
    assert data[1]["parameters"] == {"n": 4, "k": 2} and data[1]["numerator"] == 3


def test_verify_and_lemma(capsys):
    code, out, _ = run(capsys, "verify-theorem1", "--nmax", "4")
    assert code == 0 and out.rstrip().endswith("PASS")
    code, out, _ = run(capsys, "lemma6", "--nmax", "12")
    assert code == 0 and "0 failures" in out


def test_verify_range(capsys):
    assert run(capsys, "verify-theorem1", "--nmax", "9")[0] == 2


def test_corollary2(capsys):
    code, out, _ = run(capsys, "corollary2", "5")
    assert code == 0 and out.startswith("1/4")
    assert run(capsys, "corollary2")[0] == 2
    code, out, _ = run(capsys, "corollary2", "--mc", "6", "--samples", "2000", "--seed", "1")
    assert code == 0 and "z=" in out


def test_urn(capsys, tmp_path):
    code, out, _ = run(capsys, "urn-pmf", "4")
    assert code == 0 and "3/8" in out
    path = tmp_path / "paths.csv"
    assert run(capsys, "urn-couple", "--nmax", "10", "--seed", "2", "--paths", "3", "--out", str(path))[0] == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 3 * 9 and rows[0]["s"] == "1"


def test_geometry_pipeline(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    assert run(capsys, "geom-sample", "6", "--seed", "4", "--out", str(pts))[0] == 0
    code, out, _ = run(capsys, "geom-network", "--points", str(pts))
    assert code == 0 and out.startswith("6: ") and len(out.split()) == 16
    code, out, _ = run(capsys, "geom-expect", "5", "2")
    assert code == 0 and "quadrature" in out


def test_mc_subnet(capsys):
    code, out, _ = run(capsys, "mc-subnet", "8", "4", "2", "--samples", "2000", "--seed", "1")
    assert code == 0 and "target 9/4" in out


def test_diagram(capsys, tmp_path):
    f = tmp_path / "nets.txt"
    f.write_text("3: 1 2 1\n")
    svg = tmp_path / "d.svg"
    assert run(capsys, "diagram", "--input", str(f), "--out", str(svg))[0] == 0
    assert svg.read_text().lstrip().startswith("<svg")
    assert run(capsys, "diagram", "--input", str(tmp_path / "none.txt"), "--out", str(svg))[0] == 2


def test_invalid_network_file(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("3: 1 1 1\n")
    code, _, err = run(capsys, "subnet", "--input", str(f), "--subset", "1,2")
    assert code == 2 and err


def test_run_config(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"experiment": "corollary2", "parameters": {"n": 5}, "samples": 1000, "seed": 9}))
    log = tmp_path / "log.jsonl"
    code, out, _ = run(capsys, "run", str(cfg), "--log", str(log))
    assert code == 0 and json.loads(out)["result"]["target"] == "1/4"
    assert len(log.read_text().splitlines()) == 1


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "sortnet", "count", "5"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "768\n"


@pytest.mark.parametrize("argv", [["theorem1", "4", "4"], ["count", "x"], ["urn-pmf", "1"]])
def test_bad_arguments(capsys, argv):
    assert run(capsys, *argv)[0] == 2
