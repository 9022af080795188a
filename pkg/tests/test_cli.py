import json

import numpy as np
import pytest

from szewalk import cli

GRAPH2_JSON = '{"n": 2, "rows": [[0.5, 0.5], [1.0, 0.0]]}'
GRAPH3_EDGES = "n 3\n1 2\n1 3\n2 1\n3 2\n"


@pytest.fixture
def g2(tmp_path):
    path = tmp_path / "g2.json"
    path.write_text(GRAPH2_JSON)
    return path


@pytest.fixture
def g3(tmp_path):
    path = tmp_path / "g3.edges"
    path.write_text(GRAPH3_EDGES)
    return path


def test_analyze_matrix(g2, capsys):
    assert cli.main(["analyze", "--matrix", str(g2), "--T", "300"]) == 0
    out = capsys.readouterr().out
    assert "ergodic: yes" in out
    assert "reversible: yes" in out
    assert "stationary: [0.666666666667, 0.333333333333]" in out
    assert "limiting distribution: [0.666666666667, 0.333333333333]" in out
    assert "cesaro average (T=300):" in out
    assert "matches stationary" in out


def test_analyze_highlights_mismatch(g3, capsys):
    assert cli.main(["analyze", "--input", str(g3)]) == 0
    out = capsys.readouterr().out
    assert "reversible: no" in out
    assert "NOTE: limiting distribution deviates from stationary" in out


def test_quantize_json_output(g2, capsys):
    assert cli.main(["quantize", "--matrix", str(g2)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload) == 3


def test_evolve_writes_csv(g2, tmp_path):
    out = tmp_path / "dist.csv"
    assert cli.main(["evolve", "--matrix", str(g2), "--T", "100", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "vertex,probability"
    total = sum(float(row.split(",")[1]) for row in lines[1:])
    assert total == pytest.approx(1.0, abs=1e-9)


def test_line_report_and_files(tmp_path, capsys):
    outdir = tmp_path / "line"
    code = cli.main(
        ["line", "--t", "50", "--init", "1,0,0", "--out", str(outdir)]
    )
    assert code == 0
    report = capsys.readouterr().out
    assert "kolmogorov_distance:" in report
    assert "point_mass_at_zero: 0.288675134595" in report
    for name in ("position.csv", "cdf.csv", "density.csv", "report.txt"):
        assert (outdir / name).exists()
    pos = (outdir / "position.csv").read_text().splitlines()
    assert pos[0] == "x,probability"
    # light cone: no probability outside |x| <= 50
    for row in pos[1:]:
        x, p = row.split(",")
        if abs(int(x)) > 50:
            assert float(p) == 0.0


def test_line_t_zero(capsys):
    assert cli.main(["line", "--t", "0"]) == 0
    out = capsys.readouterr().out
    assert "empirical comparison skipped" in out


def test_line_init_normalization(capsys):
    # unnormalized amplitudes are scaled, not rejected
    assert cli.main(["line", "--t", "1", "--init", "2,0,0"]) == 0
    out = capsys.readouterr().out
    assert "init: 1+0j, 0+0j, 0+0j" in out


def test_conjecture_probe_deterministic(capsys):
    args = ["conjecture-probe", "--n", "3", "--trials", "4", "--seed", "11"]
    assert cli.main(args) == 0
    first = capsys.readouterr().out
    assert cli.main(args) == 0
    second = capsys.readouterr().out
    assert first == second  # byte-identical seeded report
    assert "trial   0" in first
    assert "draws no conclusion" in first


def test_lemmas_report(tmp_path, capsys):
    sym = tmp_path / "sym.json"
    sym.write_text('{"n": 2, "rows": [[0.5, 0.5], [0.5, 0.5]]}')
    assert cli.main(["lemmas", "--matrix", str(sym)]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4  # three lemmas plus the overall line
    assert "overall: PASS" in out


def test_exit_codes(tmp_path, capsys):
    bad_edges = tmp_path / "bad.edges"
    bad_edges.write_text("n 2\n1 oops\n")
    zerodeg = tmp_path / "zero.edges"
    zerodeg.write_text("n 2\n1 2\n")
    badsum = tmp_path / "badsum.json"
    badsum.write_text('{"n": 2, "rows": [[0.9, 0.5], [1.0, 0.0]]}')

    assert cli.main(["analyze"]) == 1  # no input selected
    assert cli.main(["analyze", "--input", str(bad_edges)]) == 2
    assert cli.main(["analyze", "--input", str(tmp_path / "missing.edges")]) == 2
    assert cli.main(["analyze", "--input", str(zerodeg)]) == 3
    assert cli.main(["analyze", "--matrix", str(badsum)]) == 3
    assert cli.main(["line", "--init", "0,0,0"]) == 3
    assert cli.main(["conjecture-probe", "--trials", "0"]) == 1
    capsys.readouterr()


def test_usage_error_both_inputs(g2, g3):
    assert cli.main(["analyze", "--input", str(g3), "--matrix", str(g2)]) == 1
