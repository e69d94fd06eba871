"""Exact harmonic functions on a cell, stored by their three corner values."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .address import Address, AddressError, check_word

RESISTANCE = Fraction(3, 5)
ENERGY_SCALE = 1 / RESISTANCE  # r^{-1} = 5/3


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


@dataclass(frozen=True)
class HarmonicFunction:
    corners: tuple[Fraction, Fraction, Fraction]

    def __init__(self, corners):
        values = tuple(as_fraction(c) for c in corners)
        if len(values) != 3:
            raise ValueError("a harmonic function needs exactly three corner values")
        object.__setattr__(self, "corners", values)

    @classmethod
    def _trusted(cls, values: tuple) -> "HarmonicFunction":
        # values already a 3-tuple of Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "corners", values)
        return obj

    def __getitem__(self, i: int) -> Fraction:
        return self.corners[i]

    def __add__(self, other: "HarmonicFunction") -> "HarmonicFunction":
        return HarmonicFunction._trusted(tuple(a + b for a, b in zip(self.corners, other.corners)))

    def __sub__(self, other: "HarmonicFunction") -> "HarmonicFunction":
        return HarmonicFunction._trusted(tuple(a - b for a, b in zip(self.corners, other.corners)))

    def __neg__(self) -> "HarmonicFunction":
        return HarmonicFunction(-a for a in self.corners)

    def scale(self, c) -> "HarmonicFunction":
        c = as_fraction(c)
        return HarmonicFunction._trusted(tuple(c * a for a in self.corners))

    def is_constant(self) -> bool:
        a, b, c = self.corners
        return a == b == c

    def to_json(self) -> dict:
        return {"corners": [str(c) for c in self.corners]}

    @classmethod
    def from_json(cls, data) -> "HarmonicFunction":
        if isinstance(data, dict):
            data = data["corners"]
        return cls(data)

    def __repr__(self) -> str:
        return "HarmonicFunction(" + ", ".join(str(c) for c in self.corners) + ")"


ZERO = HarmonicFunction((0, 0, 0))
H_SYM = HarmonicFunction((0, 1, 1))
H_ANTI = HarmonicFunction((0, 1, -1))


def constant(c) -> HarmonicFunction:
    return HarmonicFunction((c, c, c))


def extend_to_child(h: HarmonicFunction, i: int) -> HarmonicFunction:
    """h o F_i by the 2/5-1/5 rule."""
    v = h.corners
    out = [v[i], v[i], v[i]]
    for j in (0, 1, 2):
        if j != i:
            k = 3 - i - j
            out[j] = (2 * v[i] + 2 * v[j] + v[k]) / 5
    return HarmonicFunction._trusted(tuple(out))


def extend_along(h: HarmonicFunction, word: str) -> HarmonicFunction:
    """h o F_word."""
    for s in word:
        h = extend_to_child(h, int(s))
    return h


def eval_at(h: HarmonicFunction, a: Address) -> Fraction:
    word, corner = a
    try:
        check_word(word)
    except AddressError as exc:
        raise AddressOutsideCell(str(exc)) from None
    if corner not in (0, 1, 2):
        raise AddressOutsideCell(f"corner {corner!r} is not a corner of the cell")
    return extend_along(h, word).corners[corner]


class AddressOutsideCell(AddressError):
    pass


def normal_derivative(h: HarmonicFunction, i: int) -> Fraction:
    v = h.corners
    return 2 * v[i] - v[(i + 1) % 3] - v[(i + 2) % 3]


def tangential_derivative(h: HarmonicFunction, i: int) -> Fraction:
    v = h.corners
    return v[(i + 1) % 3] - v[(i + 2) % 3]


def energy_pair(h: HarmonicFunction, g: HarmonicFunction) -> Fraction:
    """Energy of a harmonic pair as the boundary sum of normal derivatives times values."""
    return sum((normal_derivative(h, i) * g.corners[i] for i in range(3)), Fraction(0))


def energy(h: HarmonicFunction) -> Fraction:
    return energy_pair(h, h)


def edge_energy_pair(h: HarmonicFunction, g: HarmonicFunction) -> Fraction:
    """Level-0 graph energy: sum over the three edges of the cell."""
    a, b = h.corners, g.corners
    return sum(((a[p] - a[q]) * (b[p] - b[q]) for p, q in ((0, 1), (1, 2), (0, 2))), Fraction(0))


def jet_decompose(h: HarmonicFunction, i: int = 0) -> tuple[Fraction, Fraction, Fraction]:
    """Coordinates (u_s, u_a, c) of h in the symmetric/antisymmetric frame at q_i."""
    v = h.corners
    u_s = -normal_derivative(h, i) / 2
    u_a = (v[(i + 1) % 3] - v[(i + 2) % 3]) / 2
    return u_s, u_a, v[i]


def from_jet(u_s, u_a, c, i: int = 0) -> HarmonicFunction:
    """Inverse of jet_decompose."""
    u_s, u_a, c = as_fraction(u_s), as_fraction(u_a), as_fraction(c)
    out = [c, c, c]
    out[(i + 1) % 3] = c + u_s + u_a
    out[(i + 2) % 3] = c + u_s - u_a
    return HarmonicFunction(out)


def graph_normal_derivative(h: HarmonicFunction, i: int, m: int) -> Fraction:
    """r^{-m}(2h(q_i) - h(F_{i^m} q_{i+1}) - h(F_{i^m} q_{i+2}))."""
    inner = extend_along(h, str(i) * m)
    return ENERGY_SCALE**m * normal_derivative(inner, i)
