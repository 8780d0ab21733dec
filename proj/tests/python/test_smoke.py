import math

import pytest

import kplus


def test_theta_is_the_first_weight_half_element():
    f = kplus.basis("1/2", 0, 30)
    assert f["weight"] == "1/2"
    squares = {n * n for n in range(1, 6)}
    assert f["coefficients"][0] == 1
    for n in range(1, 30):
        assert f["coefficients"].get(n, 0) == (2 if n in squares else 0)


def test_weight_thirteen_halves():
    f = kplus.basis("13/2", -1, 20)
    assert f["N"] == 1
    c = f["coefficients"]
    assert (c[1], c[4], c[5], c[8]) == (1, -56, 120, -240)


def test_bad_weight_is_rejected():
    with pytest.raises(ValueError):
        kplus.basis("6.5", 0, 20)


def test_theta_cubed_against_class_numbers():
    coeffs = kplus.theta_cubed(200)
    assert coeffs == [kplus.gauss_h(n) for n in range(200)]


def test_arc_values_are_real():
    v = kplus.arc_value("3/2", 16, 0.47 * math.pi)
    assert abs(v["imag_part"]) < 1e-20 * max(1.0, abs(v["value"]))


def test_zero_scan_meets_the_guarantee():
    assert len(kplus.scan_zeros("13/2", 8)) >= 4


def test_residue_and_integral_identities():
    assert kplus.verify_residue_exact("13/2", 1, 60)
    rep = kplus.verify_integral("13/2", 4, 0.45 * math.pi)
    assert rep["ok"] and rep["residual"] < 1e-6


def test_duality_and_thresholds():
    assert kplus.duality_check("5/2", 20)["ok"]
    assert kplus.threshold_solve(0.83353, 706609609, 2) == 109


def test_criterion_one():
    r = kplus.run_criterion(1)
    assert r["passed"], r["detail"]
