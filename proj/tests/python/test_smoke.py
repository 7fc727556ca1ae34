import json
import math

import pytest

import morrad


def test_weight_eval():
    w = morrad.Weight.parse("power:q=2")
    assert w(0.25) == pytest.approx(0.5, rel=1e-15)
    assert w.spec == "power:q=2"


def test_dyadic_morrey_of_constant():
    lower, upper, method = morrad.dyadic_morrey([1.0, 1.0], 1.0, morrad.Weight.parse("one"))
    assert lower == pytest.approx(1.0)
    assert upper == pytest.approx(1.0)
    assert method == "exact"


def test_phi_single_coefficient():
    value = morrad.phi([1.0], morrad.Weight.parse("log:q=2"))
    assert value == pytest.approx(1.0 + 2.0 ** -0.5, rel=1e-14)


def test_rademacher_sum_cells():
    assert morrad.rademacher_sum([1.0, 1.0], 2) == [2.0, 0.0, 0.0, -2.0]


def test_e_counts_smallest_case():
    count_def, _, sigma_def, sigma_paper = morrad.e_counts(2)
    assert (count_def, sigma_def, sigma_paper) == ("6", "0", "8")


def test_bad_weight_raises():
    with pytest.raises(morrad.MorradError):
        morrad.Weight.parse("nonsense")


def test_cli_round_trip():
    code, out, _ = morrad.run(["weights", "check", "--weight", "log:q=3", "--M", "100000"])
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["condition10"]["trend"] == "growing"
    assert math.isfinite(doc["wall_time_s"])


def test_cli_usage_error():
    code, _, err = morrad.run(["norm", "--space", "nowhere", "--coeffs", "1"])
    assert code == 1
    assert "unknown space" in err
