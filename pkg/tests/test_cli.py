"""End-to-end checks of the command line interface.

Every test shells out to ``python -m powertail.cli`` so that argument
parsing, environment handling, stream separation, and exit codes are
exercised exactly as a user would hit them.
"""

import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest


def run_cli(*args, env_extra=None, expect=0):
    """Run the CLI and return (stdout, stderr). Asserts the exit code."""
    env = {k: v for k, v in os.environ.items() if k != "GPS_CUTOFF"}
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [sys.executable, "-m", "powertail.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == expect, (
        f"exit {proc.returncode} != {expect}\nstdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
    )
    return proc.stdout, proc.stderr


def run_json(*args, env_extra=None):
    out, _ = run_cli(*args, env_extra=env_extra)
    return json.loads(out)


# ---------------------------------------------------------------- expand


def test_expand_cauchy_stieltjes_records():
    doc = run_json("expand", "--law", "cauchy", "--repr", "stieltjes", "--cutoff", "8")
    assert doc["format"] == "powertail/1"
    assert doc["command"] == "expand"
    assert doc["representation"] == "stieltjes"
    assert doc["monomial"] == "z^(-gamma-1)"
    assert doc["config"]["law"] == "cauchy"
    for rec in doc["records"]:
        n = rec["exponent"]
        assert rec["index"] == [n]
        want = 1j ** n
        assert abs(complex(rec["re"], rec["im"]) - want) < 1e-12


def test_expand_free_stable_moments_are_catalan():
    doc = run_json(
        "expand", "--law", "free-stable", "--alpha", "2", "--b", "1",
        "--repr", "moments", "--cutoff", "10",
    )
    got = {rec["exponent"]: complex(rec["re"], rec["im"]) for rec in doc["records"]}
    catalan = {0: 1, 2: 1, 4: 2, 6: 5, 8: 14, 10: 42}
    for n, c in catalan.items():
        assert abs(got[n] - c) < 1e-9
    for n in (1, 3, 5, 7, 9):
        assert abs(got.get(n, 0)) < 1e-12


def test_expand_pareto_reports_singular_part():
    doc = run_json("expand", "--law", "pareto", "--repr", "fourier", "--beta", "1", "--cutoff", "8")
    sing = doc["singular"]
    assert sing["has_log_term"] is True
    coef_log = complex(sing["coef_log"]["re"], sing["coef_log"]["im"])
    assert abs(coef_log - (-1j)) < 1e-12
    assert doc["monomial"] == "z^gamma"


def test_expand_parses_complex_skew():
    doc = run_json(
        "expand", "--law", "mu-br", "--repr", "stieltjes",
        "--alpha", "0.5", "--b", "1j", "--r", "2", "--cutoff", "4",
    )
    assert doc["config"]["b"] == "1j"
    got = {rec["exponent"]: complex(rec["re"], rec["im"]) for rec in doc["records"]}
    assert abs(got[0] - 1) < 1e-12
    assert abs(got[0.5] - 0.5j) < 1e-12


def test_expand_out_flag_writes_file_and_keeps_stdout_quiet(tmp_path):
    target = tmp_path / "series.json"
    out, _ = run_cli(
        "expand", "--law", "cauchy", "--repr", "moments", "--cutoff", "6",
        "--out", str(target),
    )
    assert out == ""
    doc = json.loads(target.read_text())
    assert doc["command"] == "expand"


# ------------------------------------------------------- cutoff plumbing


def test_cutoff_env_variable_is_honoured():
    doc = run_json(
        "expand", "--law", "cauchy", "--repr", "moments",
        env_extra={"GPS_CUTOFF": "7"},
    )
    assert doc["config"]["cutoff"] == 7
    assert doc["config"]["cutoff_source"] == "env:GPS_CUTOFF"


def test_cutoff_flag_beats_env_variable():
    doc = run_json(
        "expand", "--law", "cauchy", "--repr", "moments", "--cutoff", "9",
        env_extra={"GPS_CUTOFF": "7"},
    )
    assert doc["config"]["cutoff"] == 9
    assert doc["config"]["cutoff_source"] == "flag"


def test_cutoff_env_garbage_is_a_usage_error():
    _, err = run_cli(
        "expand", "--law", "cauchy", "--repr", "moments",
        env_extra={"GPS_CUTOFF": "abc"}, expect=2,
    )
    assert "GPS_CUTOFF must be a number" in err


# ---------------------------------------------------------------- density


def test_density_positive_stable_csv_shape():
    out, err = run_cli(
        "density", "--law", "positive-stable", "--alpha", "0.5",
        "--x-min", "1.5", "--x-max", "6", "--points", "8",
    )
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "density_re", "density_im", "remainder_bound", "flag"]
    assert len(rows) == 9
    # first grid point sits below the validity floor: nan row, flagged,
    # warned about on stderr, but the command still succeeds
    assert rows[1][4] == "outside_validity"
    assert math.isnan(float(rows[1][1]))
    assert "1 of 8 points outside the validity region" in err
    inside = rows[2]
    assert inside[4] == ""
    x = float(inside[0])
    want = x ** -1.5 * math.exp(-1.0 / (4 * x)) / (2 * math.sqrt(math.pi))
    assert abs(float(inside[1]) - want) < 1e-6 * want
    assert float(inside[2]) == 0.0


def test_density_supremum_rows_are_positive_with_remainders():
    out, _ = run_cli(
        "density", "--law", "supremum", "--alpha", "0.43", "--rho", "0.6",
        "--x-min", "1.0", "--x-max", "3.0", "--points", "4",
    )
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    for row in rows:
        assert row["flag"] == ""
        assert float(row["density_re"]) > 0
        assert float(row["remainder_bound"]) >= 0


def test_density_last_passage_runs():
    out, _ = run_cli(
        "density", "--law", "last-passage", "--alpha", "1.5", "--d", "2",
        "--M", "10", "--x-min", "2", "--x-max", "4", "--points", "3",
    )
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["x"]) for r in rows] == [2.0, 3.0, 4.0]
    dens = [float(r["density_re"]) for r in rows]
    assert dens == sorted(dens, reverse=True)
    assert all(d > 0 for d in dens)


# --------------------------------------------------------------- convolve


def test_convolve_free_semicircles_by_law_name():
    doc = run_json(
        "convolve", "--kind", "free", "--law-a", "semicircle",
        "--law-b", "semicircle", "--cutoff", "8",
    )
    got = {rec["exponent"]: complex(rec["re"], rec["im"]) for rec in doc["records"]}
    assert abs(got[2] - 2) < 1e-10
    assert abs(got[4] - 8) < 1e-10


def test_convolve_from_files_doubles_a_cauchy(tmp_path):
    src = tmp_path / "cauchy.json"
    run_cli(
        "expand", "--law", "cauchy", "--repr", "moments", "--cutoff", "6",
        "--out", str(src),
    )
    doc = run_json(
        "convolve", "--kind", "monotone", "--in-a", str(src), "--in-b", str(src),
        "--cutoff", "6",
    )
    got = {rec["exponent"]: complex(rec["re"], rec["im"]) for rec in doc["records"]}
    for n in range(7):
        assert abs(got[n] - (2j) ** n) < 1e-10


# --------------------------------------------------------------- classify


def test_classify_golden_ratio():
    doc = run_json("classify", "--golden")
    assert doc["verdict"] == "NOT_IN_D_EVIDENCE"
    assert doc["certificate"] == "quadratic (1 + sqrt(5))/2"
    assert abs(doc["strongest_b"] - 1.7099759466766968) < 1e-9
    assert doc["precision_limited"] is False
    assert doc["witnesses"]
    assert {"q", "log10_distance", "implied_b"} <= set(doc["witnesses"][0])


def test_classify_rational():
    doc = run_json("classify", "--rational", "22/7")
    assert doc["verdict"] == "RATIONAL"


def test_classify_super_liouville_and_scale_transform():
    doc = run_json("classify", "--super-liouville")
    assert doc["verdict"] == "CERTIFIED_IN_D"
    scaled = run_json("classify", "--super-liouville", "--transform", "scale:2")
    assert scaled["verdict"] == "CERTIFIED_IN_D"


def test_classify_invert_preserves_golden_verdict():
    doc = run_json("classify", "--golden", "--transform", "invert")
    assert doc["verdict"] == "NOT_IN_D_EVIDENCE"


def test_classify_float_is_precision_limited():
    doc = run_json("classify", "--float", "0.7390851332151607")
    assert doc["precision_limited"] is True


def test_classify_profile_section():
    doc = run_json("classify", "--golden", "--profile", "100")
    prof = doc["profile"]
    assert prof["N"] == 100
    assert abs(prof["running_max_log"] - 0.9242543578978548) < 1e-9


# ----------------------------------------------------------------- verify


def test_verify_cauchy_all_pass():
    doc = run_json("verify", "--law", "cauchy")
    assert doc["failed"] == 0
    assert doc["passed"] >= 1
    for check in doc["checks"]:
        assert check["status"] == "pass"
        assert check["discrepancy"] <= check["tolerance"]


def test_verify_pareto_integer_beta_flags_log_term():
    doc = run_json("verify", "--law", "pareto", "--beta", "2")
    by_name = {c["name"]: c for c in doc["checks"]}
    log_check = by_name["log-term-detection"]
    assert log_check["status"] == "pass-with-flag"
    assert log_check["flag"] == "log-term-present"
    assert doc["failed"] == 0


def test_verify_classical_stable_flags_growth_instability():
    doc = run_json("verify", "--law", "classical-stable", "--alpha", "1.5")
    by_name = {c["name"]: c for c in doc["checks"]}
    check = by_name["membership-dichotomy"]
    assert check["status"] == "pass-with-flag"
    assert check["flag"] == "growth-instability-expected"


def test_verify_exit_three_when_a_check_fails():
    out, _ = run_cli(
        "verify", "--law", "cauchy",
        env_extra={"GPS_CUTOFF": "4"}, expect=3,
    )
    doc = json.loads(out)
    assert doc["failed"] >= 1


def test_verify_exit_four_on_numeric_guard():
    _, err = run_cli(
        "verify", "--law", "supremum", "--alpha", "0.6", "--rho", "0.5",
        expect=4,
    )
    assert "numeric guard" in err


# ------------------------------------------------------------ exit code 2


def test_bad_alpha_is_a_usage_error():
    _, err = run_cli(
        "expand", "--law", "classical-stable", "--alpha", "2.5",
        "--repr", "fourier", expect=2,
    )
    assert "stability index must lie in (0, 2]" in err


def test_pareto_rejects_stieltjes_representation():
    _, err = run_cli(
        "expand", "--law", "pareto", "--repr", "stieltjes", "--beta", "1.5",
        expect=2,
    )
    assert "pareto expands on the Fourier side only" in err


# ------------------------------------------------------------ determinism


@pytest.mark.parametrize(
    "args",
    [
        ("expand", "--law", "boolean-stable", "--alpha", "1.3", "--b", "1",
         "--repr", "moments", "--cutoff", "8"),
        ("classify", "--golden"),
        ("verify", "--law", "cauchy"),
    ],
    ids=["expand", "classify", "verify"],
)
def test_repeated_runs_are_byte_identical(args):
    first, _ = run_cli(*args)
    second, _ = run_cli(*args)
    assert first == second
