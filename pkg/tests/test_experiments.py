import json
from fractions import Fraction as F

import pytest

from gasket.address import Address
from gasket.experiments import (DIVERGES, EXCLUDED, OSCILLATES, default_experiments, exp_cut, exp_ntrh,
                                exp_pointwise, exp_sides, exp_vertical, published_vertical_classification,
                                run_all, sides_classification, verify_suite, vertical_loop_classification)
from gasket.harmonic import H_ANTI, H_SYM, HarmonicFunction
from gasket.oneform import exact_form, family_form, ray

HS = exact_form(H_SYM)


def test_pointwise_cases():
    rep = exp_pointwise(H_ANTI, HS, Address("", 1))
    assert rep.passed and rep.limit == 3
    rep = exp_pointwise(H_ANTI, HS + family_form(ray("", 0, 1, F(2, 5))), Address("", 0), chi=1, theta=F(2, 5))
    assert rep.passed and rep.limit == 0
    rep = exp_pointwise(H_ANTI, exact_form((1, 0, 0)), Address("1", 2))
    assert rep.limit == EXCLUDED


def test_ntrh():
    rep = exp_ntrh(HS, "", 0, 1, 20)
    assert rep.passed and rep.limit == 1 and all(v == 1 for _, v in rep.sequence)
    rep = exp_ntrh(family_form(ray("", 0, 1, F(7, 10))), "", 0, 1, 20)
    assert rep.passed and rep.limit == DIVERGES


@pytest.mark.parametrize("phi, limit", [
    (F(-7, 10), OSCILLATES), (F(-3, 5), OSCILLATES), (F(-1, 5), 0), (F(0), 0),
    (F(1, 5), 0), (F(2, 5), 0), (F(3, 5), F(15, 2)), (F(7, 10), "+inf"),
])
def test_sides_sweep(phi, limit):
    rep = exp_sides(H_SYM, 1, phi)
    assert rep.passed
    assert rep.limit == limit


def test_sides_other_data():
    for h in (HarmonicFunction((1, 0, 0)), HarmonicFunction((3, 1, -2))):
        for a in (1, F(-2, 3)):
            rep = exp_sides(h, a, F(3, 5))
            assert rep.passed
            assert rep.limit == -15 * F(a) / (2 * h.corners[0] - h.corners[1] - h.corners[2])
    assert sides_classification(1, F(3, 5), -2)[0] == F(15, 2)


def test_vertical():
    rep = exp_vertical("i", H_ANTI, 10, u=H_ANTI)
    assert rep.passed and rep.limit == 1
    rep = exp_vertical("ii", H_ANTI, 20, a=1, phi=F(1, 10))
    assert rep.passed and rep.limit == 10
    rep = exp_vertical("ii", H_ANTI, 20, a=1, phi=F(1, 5))
    assert rep.passed and rep.limit == "+inf"


def test_vertical_tables_differ_only_at_large_phi():
    for phi in (F(-7, 10), F(-1, 5), F(-1, 10), F(0), F(1, 10), F(1, 5), F(2, 5)):
        assert vertical_loop_classification(1, phi, 2) == published_vertical_classification(1, phi, 2)
    assert vertical_loop_classification(1, F(3, 5), 2) == F(-5, 2)


def test_cut():
    rep = exp_cut((1, 1, 1), (0, 0, 0), (0, 1, 2))
    assert rep.passed and rep.limit == 1
    assert all(d == 0 for _, d in rep.sequence)


def test_reports_serialise():
    for rep in run_all(default_experiments()[:4] + default_experiments()[7:8]):
        data = json.loads(json.dumps(rep.to_json()))
        assert set(data) >= {"name", "params", "sequence", "limit", "verdict", "notes"}
        assert all(isinstance(v, str) and isinstance(m, int) for m, v in data["sequence"])
        assert rep.csv_rows()[0] == ["m", "value_num", "value_den", "limit", "residual"]


def test_parallel_matches_serial():
    specs = default_experiments()[7:10]
    assert [r.to_json() for r in run_all(specs, workers=2)] == [r.to_json() for r in run_all(specs, workers=1)]


def test_verify_suite():
    results = verify_suite(1)
    assert all(r["status"] in ("PASS", "INFO") for r in results)
    info = [r for r in results if r["status"] == "INFO"]
    assert [r["computed"] for r in info] == ["30", "50"]
