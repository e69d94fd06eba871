from fractions import Fraction as F

import pytest

from gasket.harmonic import H_ANTI, H_SYM, HarmonicFunction
from gasket.oneform import (NO_LOOPS, LoopCoefficients, LoopFamily, NotDivergenceFree, OneForm,
                            RaySeriesDivergent, basis_gram, compose_cell, divergence_free_check,
                            exact_form, family_form, harmonic_exact_part, inner, loop_form, measure_cell,
                            med_check, norm_sq, pair_measure_brute, pair_measure_cell, ray, tree)
from gasket.pwharmonic import from_harmonic, loop_potential

HS, HA = exact_form(H_SYM), exact_form(H_ANTI)
PSI = loop_form("")


def test_norms():
    assert norm_sq(PSI) == 30
    assert norm_sq(HS) == 2
    assert norm_sq(family_form(ray("", 0, 1, F(1, 5)))) == F(225, 7)
    assert inner(HS, PSI) == 0


def test_ray_norm_against_truncation():
    phi = F(1, 5)
    partial = sum(30 * (F(5, 3) * phi * phi) ** k for k in range(41))
    tail_bound = 30 * (F(5, 75)) ** 41 / (1 - F(5, 75))
    exact = norm_sq(family_form(ray("", 0, 1, phi)))
    assert partial <= exact <= partial + tail_bound


def test_tree_norm():
    t = F(1, 3)
    assert norm_sq(family_form(tree("", 1, t))) == 30 / (1 - 3 * F(5, 3) * t * t)


def test_divergent_families_rejected():
    with pytest.raises(RaySeriesDivergent):
        ray("", 0, 1, F(4, 5))
    with pytest.raises(RaySeriesDivergent):
        tree("", 1, F(1, 2))


def test_basis_gram():
    index, gram = basis_gram(0)
    assert gram == [[30]]
    index, gram = basis_gram(1)
    assert index == ["", "0", "1", "2"]
    assert [gram[k][k] for k in range(4)] == [30, 50, 50, 50]
    assert gram[0][1] == 0


def test_compose_cell():
    assert compose_cell(PSI, "0") == exact_form(HarmonicFunction((0, 1, -1)))
    r = family_form(ray("", 0, 2, F(1, 5)))
    c = compose_cell(r, "0")
    assert harmonic_exact_part(c) == HarmonicFunction((0, 2, -2))
    assert c.loops.coefficient("") == F(2, 5) and c.loops.coefficient("00") == F(2, 125)
    h = HarmonicFunction((1, 4, -2))
    assert harmonic_exact_part(compose_cell(exact_form(h), "21")) == from_harmonic(h).piece_at("21")


def test_measure_cell_examples():
    h = exact_form(HarmonicFunction((1, 0, 0)))
    assert measure_cell(h, "0") == F(6, 5)
    assert measure_cell(PSI, "") == 30
    om = HS + family_form(ray("", 0, 1, F(1, 5)))
    for m in range(5):
        w = "0" * m
        assert measure_cell(om, w, "closed") == measure_cell(om, w, "scale")


@pytest.mark.parametrize("omega", [
    HS + loop_form("0", 3),
    exact_form((1, 0, 0)) + loop_form("", -1) + loop_form("12", F(1, 2)),
    HA + loop_form("1", 2) + loop_form("10", -5),
])
def test_algorithms_agree(omega):
    for w in ("", "0", "1", "12", "021"):
        values = {measure_cell(omega, w, alg) for alg in ("brute", "closed", "scale")}
        assert len(values) == 1


def test_pair_measure():
    assert pair_measure_cell(HS, HA) == 0
    assert pair_measure_brute(PSI, exact_form((3, -1, 2))) == 0
    om = HS + loop_form("2", 1)
    assert pair_measure_cell(om, om, "2") == measure_cell(om, "2")


def test_divergence_free_check():
    assert divergence_free_check(exact_form((1, 0, 0))) == (True, False)
    assert divergence_free_check(PSI) == (True, True)


def test_discontinuous_exact_part_rejected():
    with pytest.raises(ValueError):
        OneForm(loop_potential(""), NO_LOOPS)


def test_closed_algorithm_needs_divergence_free():
    from gasket.pwharmonic import PiecewiseHarmonic
    kinked = PiecewiseHarmonic(1, {"0": HarmonicFunction((0, F(2, 5), F(2, 5))),
                                   "1": HarmonicFunction((F(2, 5), 0, F(1, 5))),
                                   "2": HarmonicFunction((F(2, 5), F(1, 5), 1))})
    om = OneForm(kinked, NO_LOOPS)
    assert divergence_free_check(om)[0] is False
    with pytest.raises(NotDivergenceFree):
        measure_cell(om, "", "closed")
    assert measure_cell(om, "", "brute") > 0


def test_med_check():
    assert med_check(HS)
    assert not med_check(exact_form((2, 2, 2)))
    assert med_check(PSI)


def test_json_round_trip():
    om = HS + loop_form("01", F(-3, 4)) + family_form(ray("2", 1, 2, F(-1, 5))) + family_form(tree("1", 1, F(1, 4)))
    assert OneForm.from_json(om.to_json()) == om
    assert LoopFamily.from_json(ray("0", 2, 1, F(1, 3)).to_json()) == ray("0", 2, 1, F(1, 3))
    assert LoopCoefficients.from_json(om.loops.to_json()) == om.loops
