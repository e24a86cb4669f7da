import json

import pytest

from zeta_lab.cli import (
    DIGITS_ENV,
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_OK,
    EXIT_TOLERANCE,
    build_parser,
    main,
    make_config,
    matches_decimals,
)
from zeta_lab.report import CSV, JSON, parse_report


def config(argv, environ=None):
    return make_config(build_parser().parse_args(argv), environ or {})


# ---------------------------------------------------------------- configuration


def test_default_digits():
    assert config(["sweep", "identities"]).digits == 40
    assert config(["reproduce", "low_sigma"]).digits == 50


def test_env_digits_used_only_without_flag():
    assert config(["sweep", "identities"], {DIGITS_ENV: "45"}).digits == 45
    assert config(["sweep", "identities", "--digits", "35"], {DIGITS_ENV: "45"}).digits == 35


def test_config_file_and_flag_precedence(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"digits": 33, "t_list": ["1", "2"], "output_format": "json"}))
    cfg = config(["sweep", "identities", "--config", str(path)], {DIGITS_ENV: "45"})
    assert cfg.digits == 33 and len(cfg.t_list) == 2 and cfg.output_format == JSON
    cfg = config(["sweep", "identities", "--config", str(path), "--digits", "31", "--format", "csv"])
    assert cfg.digits == 31 and cfg.output_format == CSV


def test_parses_strip_points():
    cfg = config(["sweep", "contour", "--s", "0.5+2i", "--s", "0.3-1i", "--n-list", "1,2"])
    assert [str(p) for p in cfg.s_list] == ["0.5+2i", "0.3-1i"]
    assert cfg.n_list == [1, 2]


@pytest.mark.parametrize("argv", [
    ["sweep", "identities", "--digits", "20"],
    ["sweep", "contour", "--s", "1.5+2i"],
    ["sweep", "contour", "--n", "40"],
    ["sweep", "zeros", "--t-list", "abc"],
    ["sweep", "convergence", "--n-list", "1,x"],
    ["reproduce", "low_sigma", "--digits", "40"],
])
def test_config_errors_exit_2(argv):
    assert main(argv, {}) == EXIT_CONFIG


def test_bad_env_exit_2():
    assert main(["sweep", "identities"], {DIGITS_ENV: "many"}) == EXIT_CONFIG


def test_bad_config_file_exit_2(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"colour": "red"}))
    assert main(["sweep", "identities", "--config", str(path)], {}) == EXIT_CONFIG
    assert main(["sweep", "identities", "--config", str(tmp_path / "none.json")], {}) == EXIT_CONFIG


def test_matches_decimals_rounded_or_truncated():
    x = "0.1743163420006464208694"
    assert matches_decimals(x, "0.17431634200064642087", 20)
    assert matches_decimals(x, "0.17431634200064642086", 20)
    assert not matches_decimals(x, "0.17431634200064642085", 20)
    assert not matches_decimals(x, "0.17431634200064642088", 20)
    assert matches_decimals("-" + x, "-0.17431634200064642086", 20)


# ---------------------------------------------------------------- sweeps


def test_identities_sweep_three_rows(capsys):
    assert main(["sweep", "identities", "--t-list", "0,2,10"], {}) == EXIT_OK
    rows = parse_report(capsys.readouterr().out, CSV)
    assert len(rows) == 3
    assert all(r["passed"] == "true" for r in rows)
    assert all(float(r["deviation"]) < 1e-30 for r in rows)


def test_contour_sweep(capsys):
    assert main(["sweep", "contour", "--n-list", "1,2", "--s", "0.5+2i", "--digits", "30"], {}) == EXIT_OK
    rows = parse_report(capsys.readouterr().out, CSV)
    assert len(rows) == 2 and all(r["check_cauchy_residual"] == "true" for r in rows)


def test_convergence_sweep_slopes(capsys):
    # stated expectation at sigma = 0.7: slopes -2.3 (prime) and -2.7 (dprime) within 0.1
    main(["sweep", "convergence", "--s", "0.7+5i", "--digits", "30"], {})
    rows = parse_report(capsys.readouterr().out, CSV)
    prime, dprime = float(rows[0]["slope_prime"]), float(rows[0]["slope_dprime"])
    print(f"fitted slopes {prime:.3f} {dprime:.3f}")
    assert abs(prime + 2.3) <= 0.1
    assert abs(dprime + 2.7) <= 0.1


def test_zeros_sweep_bad_seed_exit_1(capsys):
    assert main(["sweep", "zeros", "--t-list", "1", "--n", "100"], {}) == EXIT_TOLERANCE
    rows = parse_report(capsys.readouterr().out, CSV)
    assert rows[0]["passed"] == "false"


def test_quotient_ratio_sweep_json(capsys):
    assert main(["sweep", "quotient_ratio", "--n", "1000", "--s", "0.7+30i", "--format", "json"], {}) == EXIT_OK
    rows = parse_report(capsys.readouterr().out, JSON)
    assert len(rows) == 1 and rows[0].passed


# ---------------------------------------------------------------- reproduce


def test_reproduce_quotient_t30(capsys):
    assert main(["reproduce", "quotient_t30"], {}) == EXIT_OK
    out = capsys.readouterr().out
    assert "diff_prime" in out and "FAIL" not in out


def test_reproduce_low_sigma_default(capsys):
    assert main(["reproduce", "low_sigma"], {}) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out


def test_reproduce_zero25_scaled(capsys):
    assert main(["reproduce", "zero25_scaled"], {}) == EXIT_OK


def test_reproduce_writes_report(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["reproduce", "quotient_t30", "--out", str(path), "--format", "json"], {}) == EXIT_OK
    rows = parse_report(path.read_text(encoding="utf-8"), JSON)
    assert {r.label for r in rows} >= {"diff_prime", "diff_dprime"}


# ---------------------------------------------------------------- output contract


def test_byte_identical_outputs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["sweep", "identities", "--t-list", "0,1", "--out"]
    assert main(argv + [str(a)], {}) == EXIT_OK
    assert main(argv + [str(b)], {}) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_unwritable_path_exit_3(tmp_path):
    out = tmp_path / "no" / "such" / "dir.csv"
    assert main(["sweep", "identities", "--out", str(out)], {}) == EXIT_IO
