"""Normal and tangential parts of one-forms at junction points."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .address import Address, check_word
from .harmonic import ENERGY_SCALE, HarmonicFunction
from .oneform import (OneForm, _chain_terms, chain_sum, compose_cell, exact_form, inner,
                      is_divergence_free, NotDivergenceFree)
from .pwharmonic import (PiecewiseHarmonic, local_value, loop_potential, point_normal_derivative,
                         point_tangential_derivative, restrict_to_cell, side_addresses)

CRITICAL_RATIO = Fraction(3, 5)


class TangentialPartMissing(ValueError):
    """The descendant loop series defining the tangential part diverges."""


def normal_part(omega: OneForm, a: Address) -> Fraction:
    """n.omega(F_w q_i) seen from K_w; only loops on the ancestor chain of w contribute."""
    word = a.word
    value = point_normal_derivative(omega.exact, a)
    for k in range(len(word)):
        anc = word[:k]
        theta = omega.loops.coefficient(anc)
        if theta:
            value += theta * point_normal_derivative(loop_potential(anc), a)
    return value


def normal_matching_defect(omega: OneForm, q: Address) -> Fraction:
    sides = side_addresses(q)
    if len(sides) != 2:
        raise ValueError(f"{q} is a boundary point")
    return sum((normal_part(omega, s) for s in sides), Fraction(0))


def tangential_part(omega: OneForm, a: Address) -> Fraction:
    """t.omega(F_w q_i) = 5^{|w|} (d_T of the folded exact part + 10 sum_m Theta_{w i^m} 5^m)."""
    word, i = a
    local = compose_cell(omega, word)
    try:
        loops = chain_sum(local.loops, "", i, None)
    except ValueError as exc:
        raise TangentialPartMissing(str(exc)) from None
    exact = point_tangential_derivative(local.exact, Address("", i))
    return 5 ** len(word) * (exact + 10 * loops)


def gauss_green_defect(omega: OneForm, phi: PiecewiseHarmonic, m: int) -> Fraction:
    """<omega, d^{(m)} phi> minus the boundary sum of n.omega times phi over level-m cells."""
    if not is_divergence_free(omega):
        raise NotDivergenceFree("the volume term is only dropped for divergence-free forms")
    if phi.level > m:
        raise ValueError(f"test function has level {phi.level} > {m}")
    from .address import words
    pairing = Fraction(0)
    boundary = Fraction(0)
    for w in words(m):
        piece = restrict_to_cell(phi, w)
        pairing += ENERGY_SCALE ** len(w) * inner(compose_cell(omega, w), exact_form(piece))
        for i in range(3):
            val = local_value(phi, Address(w, i))
            if val:
                boundary += normal_part(omega, Address(w, i)) * val
    return pairing - boundary


def orientation_sign(i: int, j: int) -> int:
    """+1 when j follows i cyclically, -1 when it precedes."""
    if (j - i) % 3 == 1:
        return 1
    if (j - i) % 3 == 2:
        return -1
    raise ValueError("j must differ from i")


@dataclass
class NormalPartSequence:
    word: str
    corner: int
    side: int
    values: list[tuple[int, Fraction]]
    base_limit: Fraction
    theta: Fraction
    classification: str
    offset_limit: Fraction | None = None
    limit: Fraction | None = None
    notes: list[str] = field(default_factory=list)

    def offsets(self) -> list[tuple[int, Fraction]]:
        return [(m, v - self.base_limit) for m, v in self.values]


def chain_ratio(omega: OneForm, word: str, i: int) -> tuple[Fraction, list[tuple[int, Fraction, Fraction]]]:
    """Largest |ratio| of infinite loop families along word i^k, and those families.

    Each family is reported as (first index j, coefficient at j, ratio).
    """
    local = compose_cell(omega, word)
    chains = []
    for f in local.loops.families:
        terms = _chain_terms(f, "", i)
        if terms is None:
            continue
        j, first, ratio = terms
        if ratio is not None and first != 0:
            chains.append((j, first, ratio))
    theta = max((abs(r) for _, _, r in chains), default=Fraction(0))
    return theta, chains


def offset_closed_form(omega: OneForm, word: str, i: int, j: int, m: int) -> Fraction:
    """Loop contribution to n.omega(F_{w i^m} q_j): +-(5/3)^{|w|} 15 3^{-m} sum_{k<m} Theta 5^k."""
    s = orientation_sign(i, j)
    return s * ENERGY_SCALE ** len(word) * 15 * chain_sum(omega.loops, word, i, m) / 3**m


def normal_part_sequence(omega: OneForm, word: str, i: int, j: int, m_max: int) -> NormalPartSequence:
    check_word(word)
    if not is_divergence_free(omega):
        raise NotDivergenceFree("normal part sequences need a divergence-free form")
    s = orientation_sign(i, j)
    values = [(m, normal_part(omega, Address(word + str(i) * m, j))) for m in range(m_max + 1)]
    base = -normal_part(omega, Address(word, i)) / 2
    theta, chains = chain_ratio(omega, word, i)
    seq = NormalPartSequence(word, i, j, values, base, theta, "converges")
    scale = s * ENERGY_SCALE ** len(word) * 15
    if theta < CRITICAL_RATIO:
        seq.offset_limit = Fraction(0)
        seq.limit = base
    elif theta > CRITICAL_RATIO:
        seq.classification = "diverges"
        seq.notes.append(f"offset grows geometrically with factor {5 * theta / 3} > 1")
    elif any(r == -CRITICAL_RATIO for _, _, r in chains):
        seq.classification = "oscillates"
        seq.notes.append("offset alternates in sign with non-vanishing amplitude")
    else:
        # 3^{-m} sum_{k<m} c (5/3)^... : each critical family adds c (5/3)^j / 2 in the limit
        acc = Fraction(0)
        for jj, first, r in chains:
            if r == CRITICAL_RATIO:
                acc += first * ENERGY_SCALE**jj / 2
        seq.offset_limit = scale * acc
        seq.limit = base + seq.offset_limit
    return seq
