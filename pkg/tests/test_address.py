import pytest

from gasket.address import (Address, AddressError, canonicalize, cells_containing, corner_addresses,
                            is_boundary, junction_points, parse_address, same_point, twin, words)

A = Address


@pytest.mark.parametrize("a, expected", [
    (A("00", 0), A("", 0)),
    (A("0", 1), A("0", 1)),
    (A("1", 0), A("0", 1)),
    (A("10", 2), A("10", 2)),
    (A("12", 0), A("10", 2)),
])
def test_canonicalize(a, expected):
    assert canonicalize(a) == expected


@pytest.mark.parametrize("a, expected", [
    (A("0", 1), A("1", 0)),
    (A("", 2), None),
    (A("01", 2), A("02", 1)),
    (A("222", 2), None),
])
def test_twin(a, expected):
    assert twin(a) == expected


def test_corner_addresses():
    assert corner_addresses("") == (A("", 0), A("", 1), A("", 2))
    assert corner_addresses("12") == (A("12", 0), A("12", 1), A("12", 2))


@pytest.mark.parametrize("a, n, expected", [
    (A("", 0), 2, {"00"}),
    (A("0", 1), 1, {"0", "1"}),
    (A("0", 1), 2, {"01", "10"}),
    (A("", 1), 0, {""}),
])
def test_cells_containing(a, n, expected):
    assert cells_containing(a, n) == expected


def test_parse_round_trip():
    for text in (":0", "0:1", "0120:2"):
        assert str(parse_address(text)) == text
    for bad in ("03:1", "0:3", "01", "x:0"):
        with pytest.raises(AddressError):
            parse_address(bad)


def test_junction_counts():
    for n in range(5):
        pts = junction_points(n)
        assert len(pts) == (3 ** (n + 1) - 3) // 2
        assert all(len(cells_containing(q, n)) == 2 for q in pts)
        assert all(not is_boundary(q) for q in pts)
    for i in range(3):
        assert all(len(cells_containing(A("", i), n)) == 1 for n in range(5))


def test_same_point_and_words():
    assert same_point(A("0", 1), A("1", 0))
    assert same_point(A("2" * 4, 2), A("", 2))
    assert not same_point(A("0", 1), A("0", 2))
    assert list(words(1)) == ["0", "1", "2"]
    assert len(list(words(4))) == 81
