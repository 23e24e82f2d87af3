import json
from fractions import Fraction

import pytest

from renorm_sums import functions as F
from renorm_sums.verify import (
    FIGURE_SETUPS, REPORT_SCHEMA, AcceptanceConfig, CheckResult, DeviationSweep,
    UndefinedDeviationError, _Context, asymptotic_constant_check, check_figure,
    check_spot_values, deviation_sweep, last_decade_max, load_expected_rho, log_grid,
    run_acceptance_suite, run_figure, select_checks,
)


def test_log_grid():
    g = log_grid(10, 10_000, 4)
    assert g == [10, 100, 1000, 10_000]
    assert log_grid(5, 5) == [5]
    assert log_grid(3, 90, 1) == [3, 90]
    assert len(log_grid(1, 10, 100)) <= 10
    with pytest.raises(ValueError):
        log_grid(0, 10)


def test_liouville_deviation_is_identically_zero(small_sieve):
    sweep = deviation_sweep(F.get("lambda"), 2, 1, range(1, 3000), table=small_sieve)
    assert all(r == 0 for _, r in sweep.defined())
    # F{lambda;N,1} vanishes at a few N; those points are skipped
    assert sweep.skipped and all(u == 0 for N, u in zip(sweep.N_grid, sweep.F_unscaled)
                                 if N in sweep.skipped)


def test_deviation_is_exact_for_exact_inputs(small_sieve):
    sweep = deviation_sweep(F.get("sigma0"), 2, 1, [10, 100], table=small_sieve)
    # F{sigma0;10,2} = 44, F{sigma0;10,1} = 27, R = 3/2
    assert sweep.F_scaled[0] == 44 and sweep.F_unscaled[0] == 27
    assert sweep.rho[0] == Fraction(44, 27) / Fraction(3, 2) - 1
    assert {row["N"] for row in sweep.rows()} == {10, 100}


def test_zero_renormalization_is_rejected():
    with pytest.raises(UndefinedDeviationError):
        deviation_sweep(F.get("mu2"), 3, 2, [100])


def test_figure_checks_against_stored_tolerances(big_sieve, full_tau):
    expected = load_expected_rho()
    assert expected["provenance"] == "derived"
    assert set(expected["setups"]) == set(FIGURE_SETUPS)
    for name in ("fig1a", "fig3a"):
        sweep = run_figure(name, big_sieve, full_tau)
        chk = check_figure(sweep, name, expected)
        assert chk.passed and chk.last_decade_max == last_decade_max(sweep)


def test_figure_check_fails_without_decay():
    sweep = DeviationSweep("x", 2, 1, [10, 100], [Fraction(1, 100), Fraction(1, 10)], None)
    doc = {"setups": {"x": {"tolerance": 1.0}}}
    assert not check_figure(sweep, "x", doc).passed


def test_asymptotic_constant_report(small_sieve):
    rep = asymptotic_constant_check(F.get("phi"), [1000, 100_000], small_sieve)
    assert abs(rep.final_ratio - 1) < 1e-3
    assert rep.trend in ("toward-1", "flat")


def test_check_selection_by_id_and_tag():
    assert select_checks(None) == list(range(1, 12))
    assert select_checks(["tau"]) == [7, 8, 9]
    assert select_checks([3, "dirichlet"]) == [3, 10]


def test_check_result_formats():
    res = check_spot_values(_Context(AcceptanceConfig()))
    assert res.passed
    assert res.line().startswith("[PASS] criterion 3: ")
    doc = res.to_json()
    assert doc["schema"] == REPORT_SCHEMA and doc["measured"]["sigma0"] == "3/2"
    json.dumps(doc)
    bad = CheckResult(99, "demo", False, detail="x")
    assert bad.line() == "[FAIL] criterion 99: demo (x)"


def test_suite_runs_subset_and_reports_json():
    rep = run_acceptance_suite({"only": [3, 11], "sieve_limit": 20_000})
    assert [r.id for r in rep.results] == [3, 11]
    assert rep.passed
    for line in rep.json_lines():
        assert json.loads(line)["schema"] == REPORT_SCHEMA
