"""Square-integrable functions f = star_omega(xi) and the first-order operators.

An element f of L^2(nu_omega) is never evaluated pointwise. It is carried by
the one-form xi with f omega = xi, and every integral of f against nu_omega
is the mixed energy measure nu_{xi, omega}.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .address import Address, canonicalize, check_word, deepen, is_boundary, words
from .boundary import normal_part
from .harmonic import ENERGY_SCALE, constant
from .oneform import (LOOP_NORM, LoopCoefficients, OneForm, compose_cell, is_divergence_free,
                      measure_cell, med_check, pair_measure_cell)
from .pwharmonic import (PiecewiseHarmonic, combine, energy_measure_pair, is_continuous_at,
                         junctions, local_value, loop_potential, refine, side_addresses)


class NormalPartZero(ZeroDivisionError):
    """The normal part of omega vanishes at the requested point."""


class ZeroMeasureCell(ZeroDivisionError):
    pass


def _cell_neighbours(n: int):
    """Level-n junctions as pairs of (cell, corner) sides."""
    seen = set()
    for w in words(n):
        for i in range(3):
            a = Address(w, i)
            if is_boundary(a):
                continue
            q = canonicalize(a)
            if q in seen:
                continue
            seen.add(q)
            yield [deepen(s, n) for s in side_addresses(q)]


def hodge_split(u: PiecewiseHarmonic) -> OneForm:
    """Write d^{(n)} u as d(eta) + sum_{|w|<n} Theta_w d(psi_w) with eta continuous."""
    n = u.level
    u = refine(u, n)
    theta = {}
    for k in range(n):
        for w in words(k):
            c = energy_measure_pair(u, loop_potential(w), "") / (LOOP_NORM * ENERGY_SCALE**k)
            if c:
                theta[w] = c
    rest = combine([(1, u)] + [(-c, loop_potential(w)) for w, c in theta.items()])
    rest = refine(rest, n)
    # rest differs from a continuous function by one constant per cell
    shift = {"0" * n: Fraction(0)}
    adjacency = {}
    for (w1, i1), (w2, i2) in _cell_neighbours(n):
        jump = rest.piece_at(w1)[i1] - rest.piece_at(w2)[i2]
        adjacency.setdefault(w1, []).append((w2, jump))
        adjacency.setdefault(w2, []).append((w1, -jump))
    queue = deque(["0" * n])
    while queue:
        w = queue.popleft()
        for v, jump in adjacency.get(w, []):
            if v not in shift:
                shift[v] = shift[w] + jump
                queue.append(v)
    pieces = {w: rest.piece_at(w) + constant(s) for w, s in shift.items()}
    eta = PiecewiseHarmonic(n, pieces, rest.default)
    return OneForm(eta, LoopCoefficients(theta))


@dataclass(frozen=True)
class L2Function:
    """f with f omega = xi for the reference form omega."""
    xi: OneForm

    def __add__(self, other: "L2Function") -> "L2Function":
        return L2Function(self.xi + other.xi)

    def scale(self, c) -> "L2Function":
        return L2Function(self.xi.scale(c))


def gradient(u) -> L2Function:
    """star_omega d^{(n)} u for a piecewise harmonic u (continuity not required)."""
    from .oneform import exact_form
    if not isinstance(u, PiecewiseHarmonic):
        return L2Function(exact_form(u))
    return L2Function(hodge_split(u))


def loop_function(loops: LoopCoefficients) -> L2Function:
    return L2Function(OneForm(loops=loops))


def star_is_isomorphism(omega: OneForm) -> bool:
    return med_check(omega)


def _boundary_sum(f: L2Function, omega: OneForm, word: str) -> Fraction | None:
    local = compose_cell(f.xi, word)
    if not local.loops.is_zero():
        return None
    total = Fraction(0)
    for i in range(3):
        val = local_value(local.exact, Address("", i))
        if val:
            total += val * normal_part(omega, Address(word, i))
    return total


def grad_cell_integral(f: L2Function, omega: OneForm, word: str = "") -> Fraction:
    """Integral of f over K_word against nu_omega."""
    check_word(word)
    if is_divergence_free(omega):
        fast = _boundary_sum(f, omega, word)
        if fast is not None:
            return fast
    return pair_measure_cell(f.xi, omega, word)


def mean_integral_sequence(f: L2Function, omega: OneForm, word: str, i: int,
                           m_max: int) -> list[tuple[int, Fraction]]:
    out = []
    for m in range(m_max + 1):
        cell = word + str(i) * m
        mass = measure_cell(omega, cell)
        if mass == 0:
            raise ZeroMeasureCell(f"nu_omega(K_{cell}) = 0")
        out.append((m, grad_cell_integral(f, omega, cell) / mass))
    return out


def ratio(f: L2Function, omega: OneForm, a: Address) -> Fraction:
    """n.(f omega)(a) / n.omega(a)."""
    den = normal_part(omega, a)
    if den == 0:
        raise NormalPartZero(f"n.omega vanishes at {a}")
    return normal_part(f.xi, a) / den


def _in_kernel(omega: OneForm, q: Address) -> bool:
    return all(normal_part(omega, s) == 0 for s in side_addresses(q))


def domain_check(u: PiecewiseHarmonic, omega: OneForm) -> tuple[bool, bool, str]:
    """(u in the domain of the perpendicular operator, V_0-constrained variant, description)."""
    jumps = [q for q in junctions(u) if not is_continuous_at(u, q)]
    bad = [q for q in jumps if not _in_kernel(omega, q)]
    inside = not bad
    boundary_ok = all(local_value(u, Address("", i)) == 0
                      for i in range(3) if normal_part(omega, Address("", i)) != 0)
    if not inside:
        text = "discontinuous at " + ", ".join(str(q) for q in bad) + " where n.omega != 0"
    elif is_divergence_free(omega):
        text = f"perp(u) = star_omega d^({u.level}) u"
        if jumps:
            text += "; jumps at " + ", ".join(str(q) for q in jumps) + " lie in ker n.omega"
    else:
        text = f"perp(u) = star_omega d^({u.level}) u - u div(omega)"
    return inside, inside and boundary_ok, text
