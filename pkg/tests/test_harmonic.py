from fractions import Fraction as F

import pytest

import oracles
from gasket.address import Address
from gasket.harmonic import (H_ANTI, H_SYM, AddressOutsideCell, HarmonicFunction, constant, energy,
                             energy_pair, eval_at, extend_to_child, from_jet,
                             graph_normal_derivative, jet_decompose, normal_derivative,
                             tangential_derivative)

H100 = HarmonicFunction((1, 0, 0))


def test_extend_to_child():
    assert extend_to_child(H100, 0).corners == (1, F(2, 5), F(2, 5))
    assert extend_to_child(constant(7), 2).corners == (7, 7, 7)
    assert extend_to_child(H_SYM, 0).corners == (0, F(3, 5), F(3, 5))


def test_eval_at():
    assert eval_at(H_ANTI, Address("00", 1)) == F(1, 25)
    assert eval_at(H_SYM, Address("00", 1)) == F(9, 25)
    assert eval_at(H100, Address("0", 1)) == F(2, 5)


@pytest.mark.parametrize("word", ["0", "12", "201", "0212"])
def test_eval_matches_dirichlet_oracle(word):
    h = HarmonicFunction((3, -1, F(1, 2)))
    for j in range(3):
        assert eval_at(h, Address(word, j)) == oracles.harmonic_value(h.corners, word, j)


def test_jet_formulas_along_side():
    for n in range(1, 9):
        assert eval_at(H_ANTI, Address("0" * n, 1)) == F(1, 5**n)
        assert eval_at(H_SYM, Address("0" * n, 1)) == F(3, 5) ** n


def test_derivatives():
    assert normal_derivative(H_SYM, 0) == -2
    assert normal_derivative(H100, 0) == 2
    assert normal_derivative(H_ANTI, 0) == 0
    assert tangential_derivative(H_ANTI, 0) == 2
    assert tangential_derivative(H_SYM, 0) == 0
    assert tangential_derivative(H100, 1) == -1


def test_graph_normal_derivative_is_level_free():
    for h in (H100, H_SYM, HarmonicFunction((2, -3, 5))):
        for i in range(3):
            assert {graph_normal_derivative(h, i, m) for m in range(9)} == {normal_derivative(h, i)}


def test_energy():
    assert energy_pair(H100, H100) == 2
    assert energy_pair(constant(4), H_ANTI) == 0
    assert energy_pair(H_SYM, H_ANTI) == 0
    assert energy(H100) == oracles.cell_graph_energy(H100.corners, 3)


def test_jet_decompose():
    assert jet_decompose(H100, 0) == (-1, 0, 1)
    assert jet_decompose(H_ANTI, 0) == (0, 1, 0)
    assert jet_decompose(H_SYM, 0) == (1, 0, 0)
    h = HarmonicFunction((2, F(-1, 3), 7))
    for i in range(3):
        assert from_jet(*jet_decompose(h, i), i) == h


def test_outside_cell():
    with pytest.raises(AddressOutsideCell):
        eval_at(H100, Address("3", 0))
    with pytest.raises(AddressOutsideCell):
        eval_at(H100, Address("0", 5))
