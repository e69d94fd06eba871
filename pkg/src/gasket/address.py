"""Symbolic addresses of cells and vertices of the Sierpinski gasket.

A word is a string over "012"; the empty string is the whole gasket.
A vertex address ``(word, corner)`` names the point F_word(q_corner).
"""
from __future__ import annotations

from itertools import product
from typing import Iterator, NamedTuple

SYMBOLS = "012"


class AddressError(ValueError):
    pass


class Address(NamedTuple):
    word: str
    corner: int

    def __str__(self) -> str:
        return f"{self.word}:{self.corner}"


def check_word(word: str) -> str:
    if any(ch not in SYMBOLS for ch in word):
        raise AddressError(f"invalid word {word!r}: symbols must be 0, 1 or 2")
    return word


def make_address(word: str, corner: int) -> Address:
    check_word(word)
    if corner not in (0, 1, 2):
        raise AddressError(f"invalid corner {corner!r}")
    return Address(word, corner)


def parse_address(text: str) -> Address:
    """Parse ``"w:i"``, e.g. ``"01:2"`` or ``":0"``."""
    word, sep, corner = text.strip().partition(":")
    if not sep or corner not in ("0", "1", "2"):
        raise AddressError(f"invalid address {text!r}, expected 'word:corner'")
    return make_address(word, int(corner))


def words(n: int) -> Iterator[str]:
    """All words of length n in lexicographic order."""
    for letters in product(SYMBOLS, repeat=n):
        yield "".join(letters)


def reduce(a: Address) -> Address:
    """Shortest address of the same point (strip trailing corner symbols)."""
    word, corner = a
    symbol = SYMBOLS[corner]
    end = len(word)
    while end and word[end - 1] == symbol:
        end -= 1
    return Address(word[:end], corner)


def level(a: Address) -> int:
    """Smallest n such that the point lies in V_n."""
    return len(reduce(a).word)


def is_boundary(a: Address) -> bool:
    return reduce(a).word == ""


def twin(a: Address) -> Address | None:
    """The other minimal-length address of a junction point, None on V_0.

    Uses F_{wi} q_j = F_{wj} q_i for i != j.
    """
    word, corner = reduce(a)
    if not word:
        return None
    return Address(word[:-1] + SYMBOLS[corner], int(word[-1]))


def canonicalize(a: Address) -> Address:
    r = reduce(a)
    other = twin(r)
    if other is not None and other.word < r.word:
        return other
    return r


def same_point(a: Address, b: Address) -> bool:
    return canonicalize(a) == canonicalize(b)


def corner_addresses(word: str) -> tuple[Address, Address, Address]:
    check_word(word)
    return (Address(word, 0), Address(word, 1), Address(word, 2))


def deepen(a: Address, n: int) -> Address:
    """Equivalent address whose word has length at least n."""
    word, corner = a
    if len(word) >= n:
        return a
    return Address(word + SYMBOLS[corner] * (n - len(word)), corner)


def cells_containing(a: Address, n: int) -> set[str]:
    """All level-n words w with the point in K_w."""
    if n < 0:
        raise AddressError("level must be non-negative")
    r = reduce(a)
    if len(r.word) > n:
        return {r.word[:n]}
    found = {deepen(r, n).word}
    other = twin(r)
    if other is not None:
        found.add(deepen(other, n).word)
    return found


def junctions_of_cell(word: str) -> list[Address]:
    """Canonical addresses of the non-boundary corners of K_word."""
    out = []
    for a in corner_addresses(word):
        if not is_boundary(a):
            out.append(canonicalize(a))
    return out


def junction_points(n: int) -> list[Address]:
    """Canonical addresses of all points of V_n outside V_0, sorted."""
    found = set()
    for w in words(n):
        found.update(junctions_of_cell(w))
    return sorted(found)
