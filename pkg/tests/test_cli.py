"""Command-line interface: schemas, exit codes, config precedence."""

import csv
import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cwtasym.cli import main
from cwtasym.wavelets import WaveletKind, make_wavelet, small_u_coefficients


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_coeffs_csv_matches_library(tmp_path):
    out = tmp_path / "coeffs.csv"
    code = main(["coeffs", "--wavelet", "haar", "--n", "5", "--out", str(out)])
    assert code == 0
    rows = _read_csv(out)
    assert rows[0] == ["s", "c_re", "c_im"]
    table = small_u_coefficients(make_wavelet(WaveletKind.Haar), 5).coefficients
    assert len(rows) == 6
    for s, row in enumerate(rows[1:]):
        assert int(row[0]) == s
        assert_allclose([float(row[1]), float(row[2])],
                        [table[s].real, table[s].imag], rtol=0, atol=1e-17)


def test_coeffs_json_roundtrip(tmp_path):
    out = tmp_path / "coeffs.json"
    code = main(["coeffs", "--wavelet", "mexhat", "--n", "4",
                 "--format", "json", "--out", str(out)])
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["wavelet"] == "mexhat"
    got = [complex(re, im) for re, im in obj["coefficients"]]
    want = small_u_coefficients(make_wavelet(WaveletKind.MexicanHat), 4).coefficients
    assert_allclose(got, want, rtol=0, atol=1e-17)


def test_cwt_both_routes(tmp_path, capsys):
    code = main(["cwt", "--signal", "gaussian", "--wavelet", "morlet",
                 "--u0", "5", "--a", "0.5", "--b", "0", "--oracle", "both"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split(",")[0] == "route"
    body = [ln.split(",") for ln in lines[1:]]
    routes = {row[0] for row in body}
    assert routes == {"time", "fourier"}
    vals = {row[0]: complex(float(row[1]), float(row[2])) for row in body}
    assert abs(vals["time"] - vals["fourier"]) < 1e-9 * abs(vals["time"])


def test_mellin_known_value(capsys):
    code = main(["mellin", "--signal", "lorentzian", "--b", "1", "--z", "2"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert abs(float(row["value_re"])) < 1e-12
    assert abs(float(row["value_im"]) - math.pi / 2.0) < 1e-10
    assert row["mirror"] == "false"


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"wavelet": "haar", "n": 3}))
    code = main(["coeffs", "--config", str(cfg)])
    assert code == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 4  # header + 3

    # explicit flags win over the file
    code = main(["coeffs", "--config", str(cfg), "--n", "6"])
    assert code == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 7


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"wavelett": "haar"}))
    code = main(["coeffs", "--config", str(cfg)])
    assert code == 2
    assert "wavelett" in capsys.readouterr().err


def test_sweep_csv_schema(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main([
        "sweep", "--signal", "lorentzian", "--wavelet", "morlet", "--u0", "5",
        "--b", "0", "--a-min", "0.02", "--a-max", "0.1", "--a-count", "4",
        "--log", "--n", "2", "--tol", "1e-8", "--out", str(out),
    ])
    assert code == 0
    rows = _read_csv(out)
    assert rows[0] == ["a", "oracle_re", "oracle_im", "expansion_re",
                       "expansion_im", "abs_error", "rel_error", "n",
                       "converged"]
    assert len(rows) == 6  # header, four grid points, summary
    grid = [float(r[0]) for r in rows[1:5]]
    assert grid == sorted(grid)
    assert rows[5][0] == "order"
    # b = 0 with two terms leaves the quadratic order: slope near 2.5
    assert abs(float(rows[5][5]) - 2.5) < 0.2
    for r in rows[1:5]:
        assert r[8] == "true"
        assert float(r[5]) > 0.0


def test_sweep_json(capsys):
    code = main([
        "sweep", "--signal", "gaussian", "--wavelet", "mexhat",
        "--a-min", "0.05", "--a-max", "0.2", "--a-count", "3",
        "--n", "3", "--format", "json",
    ])
    assert code == 0
    obj = json.loads(capsys.readouterr().out)
    assert len(obj["rows"]) == 3
    assert "order" in obj


def test_validate_list_names_every_check(capsys):
    code = main(["validate", "--list"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 10
    names = [ln.split(":")[0] for ln in lines]
    assert "coefficient_tables" in names
    assert "sweep_determinism" in names


def test_validate_only_subset(capsys):
    code = main(["validate", "--only", "coefficient_tables"])
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS coefficient_tables" in out
    assert "1/1 checks passed" in out


def test_validate_unknown_check(capsys):
    code = main(["validate", "--only", "nonexistent_check"])
    assert code == 2
    assert "nonexistent_check" in capsys.readouterr().err


def test_invalid_flag_values_exit_2(capsys):
    assert main(["cwt", "--wavelet", "spline"]) == 2
    capsys.readouterr()
    assert main(["mellin", "--z", "abc"]) == 2
    assert "malformed" in capsys.readouterr().err


def test_divergent_moment_exits_1(capsys):
    code = main(["mellin", "--signal", "two_sided_exp", "--b", "0",
                 "--z", "2.5", "--mellin-method", "eps"])
    assert code == 1
    assert "unstable" in capsys.readouterr().err


def test_mutated_mirror_factor_is_caught(monkeypatch, capsys):
    """Breaking the alternating mirror factor must fail validation: the
    cancellation structure behind the measured orders depends on it."""
    monkeypatch.setattr("cwtasym.expansion.mirror_sign", lambda s, lam: 1.0 + 0.0j)
    code = main(["validate", "--only", "convergence_orders"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL convergence_orders" in out
