from fractions import Fraction as F

import pytest

from gasket.address import Address
from gasket.firstorder import (NormalPartZero, domain_check, grad_cell_integral, gradient, hodge_split,
                               loop_function, mean_integral_sequence, ratio, star_is_isomorphism)
from gasket.harmonic import H_ANTI, H_SYM, HarmonicFunction
from gasket.oneform import (LoopCoefficients, exact_form, loop_form, norm_sq, pair_measure_brute,
                            pair_measure_cell)
from gasket.pwharmonic import PiecewiseHarmonic, from_harmonic, loop_potential

HS = exact_form(H_SYM)


def test_star_is_isomorphism():
    assert star_is_isomorphism(HS)
    assert not star_is_isomorphism(exact_form((1, 1, 1)))
    assert star_is_isomorphism(loop_form(""))


def test_grad_cell_integral():
    assert grad_cell_integral(gradient(H_ANTI), HS, "") == 0
    assert grad_cell_integral(gradient(H_SYM), HS, "01") == pair_measure_cell(HS, HS, "01")
    f = loop_function(LoopCoefficients({"": 1}))
    assert grad_cell_integral(f, HS, "0") == pair_measure_brute(loop_form(""), HS, "0")


def test_mean_integrals():
    seq = mean_integral_sequence(gradient(H_ANTI), HS, "", 1, 6)
    assert seq[0] == (0, 0)
    h = HarmonicFunction((2, -1, 5))
    assert all(v == 1 for _, v in mean_integral_sequence(gradient(h), exact_form(h), "", 2, 5))
    assert ratio(gradient(H_ANTI), HS, Address("", 1)) == 3
    assert ratio(gradient(h), exact_form(h), Address("0", 2)) == 1
    with pytest.raises(NormalPartZero):
        ratio(gradient(H_ANTI), exact_form((1, 0, 0)), Address("1", 2))


def test_hodge_split_of_loop_potential():
    xi = hodge_split(loop_potential("1") + from_harmonic(H_ANTI).scale(3))
    assert xi.loops.coefficient("1") == 1
    assert norm_sq(xi - loop_form("1") - exact_form(H_ANTI).scale(3)) == 0


def test_domain_check():
    assert domain_check(loop_potential(""), HS)[0] is False
    assert domain_check(from_harmonic(HarmonicFunction((3, 1, 4)), 2), HS)[0] is True
    left, right = HarmonicFunction((1, 2, 3)), HarmonicFunction((-1, 0, 5))
    # glue two harmonic halves along the vertical line of h = (1,0,0), continuous elsewhere
    pieces = {"1": left, "2": right}
    pieces["0"] = HarmonicFunction((0, left.corners[0], right.corners[0]))
    u = PiecewiseHarmonic(1, pieces)
    assert domain_check(u, exact_form((1, 0, 0)))[0] is True
    assert domain_check(u, HS)[0] is True  # h_s shares the mirror symmetry
    assert domain_check(u, exact_form((0, 1, 2)))[0] is False


def test_isometry_for_finite_loops():
    xi = exact_form((1, -2, 0)) + loop_form("0", 2) + loop_form("", -1)
    assert pair_measure_cell(xi, xi, "") == norm_sq(xi)
