"""Piecewise harmonic functions: one harmonic piece per level-n cell.

Pieces are stored in the local coordinates of their cell, so the piece for
word w is the harmonic function u o F_w on the reference cell. Only the
non-default pieces are stored; every other cell carries ``default``, which
must be constant. Values at level-n junctions are two-sided.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

from . import kernels
from .address import (Address, canonicalize, check_word, deepen, is_boundary, level as point_level,
                      reduce, twin)
from .harmonic import (ENERGY_SCALE, RESISTANCE, ZERO, HarmonicFunction, as_fraction, constant,
                       energy_pair, extend_along, extend_to_child, normal_derivative,
                       tangential_derivative)


@dataclass(frozen=True)
class PiecewiseHarmonic:
    level: int
    pieces: Mapping[str, HarmonicFunction]
    default: HarmonicFunction = field(default=ZERO)

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be non-negative")
        if not self.default.is_constant():
            raise ValueError("the default piece must be constant")
        clean = {}
        for w, h in self.pieces.items():
            check_word(w)
            if len(w) != self.level:
                raise ValueError(f"piece {w!r} does not have length {self.level}")
            if not isinstance(h, HarmonicFunction):
                h = HarmonicFunction(h)
            if h != self.default:
                clean[w] = h
        object.__setattr__(self, "pieces", dict(sorted(clean.items())))

    def piece(self, word: str) -> HarmonicFunction:
        return self.pieces.get(word, self.default)

    def piece_at(self, word: str) -> HarmonicFunction:
        """Harmonic function u o F_word for |word| >= level."""
        if len(word) < self.level:
            raise ValueError(f"word {word!r} is shorter than the level {self.level}")
        head = word[: self.level]
        h = self.pieces.get(head)
        if h is None:
            return self.default
        return extend_along(h, word[self.level:])

    def __add__(self, other: "PiecewiseHarmonic") -> "PiecewiseHarmonic":
        return combine([(1, self), (1, other)])

    def __sub__(self, other: "PiecewiseHarmonic") -> "PiecewiseHarmonic":
        return combine([(1, self), (-1, other)])

    def __neg__(self) -> "PiecewiseHarmonic":
        return self.scale(-1)

    def scale(self, c) -> "PiecewiseHarmonic":
        c = as_fraction(c)
        return PiecewiseHarmonic(self.level, {w: h.scale(c) for w, h in self.pieces.items()},
                                 self.default.scale(c))

    def to_json(self) -> dict:
        data = {"level": self.level,
                "pieces": {w: h.to_json() for w, h in self.pieces.items()}}
        if self.default != ZERO:
            data["default"] = self.default.to_json()
        return data

    @classmethod
    def from_json(cls, data) -> "PiecewiseHarmonic":
        default = HarmonicFunction.from_json(data["default"]) if "default" in data else ZERO
        pieces = {w: HarmonicFunction.from_json(h) for w, h in data.get("pieces", {}).items()}
        return cls(int(data["level"]), pieces, default)


def from_harmonic(h: HarmonicFunction, level: int = 0) -> PiecewiseHarmonic:
    return refine(PiecewiseHarmonic(0, {"": h}), level)


def constant_function(c) -> PiecewiseHarmonic:
    return PiecewiseHarmonic(0, {}, constant(c))


def combine(terms: Iterable[tuple[object, PiecewiseHarmonic]]) -> PiecewiseHarmonic:
    """Linear combination sum c_k u_k at the finest level involved."""
    terms = [(as_fraction(c), u) for c, u in terms]
    n = max((u.level for _, u in terms), default=0)
    terms = [(c, refine(u, n)) for c, u in terms]
    keys = set()
    for _, u in terms:
        keys.update(u.pieces)
    default = ZERO
    for c, u in terms:
        default = default + u.default.scale(c)
    pieces = {}
    for w in keys:
        acc = ZERO
        for c, u in terms:
            acc = acc + u.piece(w).scale(c)
        pieces[w] = acc
    return PiecewiseHarmonic(n, pieces, default)


def loop_potential(word: str) -> PiecewiseHarmonic:
    """psi_w: on K_{wi} the corners carry 0 at position i, +1 at i+1 and -1 at i+2."""
    check_word(word)
    pieces = {}
    for i in range(3):
        corners = [0, 0, 0]
        corners[(i + 1) % 3] = 1
        corners[(i + 2) % 3] = -1
        pieces[word + str(i)] = HarmonicFunction(corners)
    return PiecewiseHarmonic(len(word) + 1, pieces)


@lru_cache(maxsize=8192)
def restricted_loop_potential(word: str, cell: str) -> PiecewiseHarmonic:
    """psi_word o F_cell, memoised; callers must treat the result as immutable."""
    return restrict_to_cell(loop_potential(word), cell)


def refine(u: PiecewiseHarmonic, m: int) -> PiecewiseHarmonic:
    if m < u.level:
        raise ValueError(f"cannot refine level {u.level} down to {m}")
    pieces = dict(u.pieces)
    for _ in range(m - u.level):
        nxt = {}
        for w, h in pieces.items():
            for i in range(3):
                nxt[w + str(i)] = extend_to_child(h, i)
        pieces = nxt
    return PiecewiseHarmonic(m, pieces, u.default)


def restrict_to_cell(u: PiecewiseHarmonic, word: str) -> PiecewiseHarmonic:
    """u o F_word at level max(level - |word|, 0)."""
    check_word(word)
    if len(word) >= u.level:
        return PiecewiseHarmonic(0, {"": u.piece_at(word)}, u.default)
    k = len(word)
    pieces = {w[k:]: h for w, h in u.pieces.items() if w.startswith(word)}
    return PiecewiseHarmonic(u.level - k, pieces, u.default)


def local_value(u: PiecewiseHarmonic, a: Address) -> Fraction:
    """Value at F_w q_i of the piece covering K_w (deepened to the level of u)."""
    word, corner = deepen(a, u.level)
    return u.piece_at(word).corners[corner]


def side_addresses(q: Address) -> list[Address]:
    r = reduce(q)
    other = twin(r)
    return [r] if other is None else [r, other]


def side_values(u: PiecewiseHarmonic, q: Address) -> list[Fraction]:
    return [local_value(u, a) for a in side_addresses(q)]


def is_continuous_at(u: PiecewiseHarmonic, q: Address) -> bool:
    values = side_values(u, q)
    return all(v == values[0] for v in values)


def point_normal_derivative(u: PiecewiseHarmonic, a: Address) -> Fraction:
    """Normal derivative at F_w q_i seen from K_w: r^{-|w|} d_n(u o F_w)(q_i)."""
    word, corner = deepen(a, u.level)
    return ENERGY_SCALE ** len(word) * normal_derivative(u.piece_at(word), corner)


def point_tangential_derivative(u: PiecewiseHarmonic, a: Address) -> Fraction:
    """Tangential derivative at F_w q_i seen from K_w: 5^{|w|} d_T(u o F_w)(q_i)."""
    word, corner = deepen(a, u.level)
    return 5 ** len(word) * tangential_derivative(u.piece_at(word), corner)


def _require_junction(u: PiecewiseHarmonic, q: Address) -> int:
    if is_boundary(q):
        raise ValueError(f"{q} is a boundary point, not a junction")
    lev = point_level(q)
    if lev > u.level:
        raise ValueError(f"{q} is not in V_{u.level}")
    return lev


def matching_defect(u: PiecewiseHarmonic, q: Address) -> Fraction:
    """Sum of the two oriented normal derivatives at a junction of level L.

    The value is reported in the scale of the two level-L cells meeting at q,
    i.e. multiplied by r^L; it vanishes exactly when the Kirchhoff condition holds.
    """
    lev = _require_junction(u, q)
    total = sum((point_normal_derivative(u, a) for a in side_addresses(q)), Fraction(0))
    return RESISTANCE**lev * total


def junctions(u: PiecewiseHarmonic) -> list[Address]:
    """Canonical junction points of V_level touching a stored piece."""
    found = set()
    for w in u.pieces:
        for i in range(3):
            a = Address(w, i)
            if not is_boundary(a):
                found.add(canonicalize(a))
    return sorted(found)


def _common(u: PiecewiseHarmonic, v: PiecewiseHarmonic) -> tuple[PiecewiseHarmonic, PiecewiseHarmonic]:
    n = max(u.level, v.level)
    return refine(u, n), refine(v, n)


def energy_measure_pair(u: PiecewiseHarmonic, v: PiecewiseHarmonic, word: str) -> Fraction:
    """nu_{u,v}(K_word) as a sum of scaled harmonic energies over sub-cells."""
    check_word(word)
    u, v = _common(u, v)
    n = u.level
    if len(word) >= n:
        return ENERGY_SCALE ** len(word) * energy_pair(u.piece_at(word), v.piece_at(word))
    total = Fraction(0)
    for w in set(u.pieces) | set(v.pieces):
        if w.startswith(word):
            total += energy_pair(u.piece(w), v.piece(w))
    return ENERGY_SCALE**n * total


def cell_energy(u: PiecewiseHarmonic, word: str) -> Fraction:
    return energy_measure_pair(u, u, word)


def energy(u: PiecewiseHarmonic) -> Fraction:
    """Sum of cell energies over all level-n cells."""
    return cell_energy(u, "")


def _flatten(u: PiecewiseHarmonic, v: PiecewiseHarmonic) -> tuple[list[int], list[int], int]:
    keys = sorted(set(u.pieces) | set(v.pieces))
    denom = 1
    for w in keys:
        for c in u.piece(w).corners + v.piece(w).corners:
            denom = lcm(denom, c.denominator)
    a, b = [], []
    for w in keys:
        a.extend(int(c * denom) for c in u.piece(w).corners)
        b.extend(int(c * denom) for c in v.piece(w).corners)
    return a, b, denom


def graph_energy_pair(u: PiecewiseHarmonic, v: PiecewiseHarmonic, m: int, backend=None) -> Fraction:
    """Level-m graph energy r^{-m} sum over edges inside level-m cells."""
    u, v = _common(u, v)
    if m < u.level:
        raise ValueError(f"graph energy needs m >= {u.level}")
    a, b, denom = _flatten(u, v)
    if not a:
        return Fraction(0)
    depth = m - u.level
    total = kernels.edge_pair_sum(a, b, depth, backend=backend)
    return ENERGY_SCALE**m * Fraction(total, denom * denom * 25**depth)


def graph_energy(u: PiecewiseHarmonic, m: int, backend=None) -> Fraction:
    return graph_energy_pair(u, u, m, backend=backend)
