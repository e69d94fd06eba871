"""One-forms omega = d(eta) + sum_w Theta_w d(psi_w) with exact energy measures.

The exact part eta is a continuous piecewise harmonic function. Loop
coefficients come from a finite map plus geometric families: a family with
base b, directions D, amplitude a and ratio t assigns Theta_{bv} = a t^{|v|}
to every v in D* (a ray when D has one symbol, the full tree when D = "012").
Families may overlap each other and the finite map; coefficients add.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .address import check_word, words
from .harmonic import (ENERGY_SCALE, RESISTANCE, ZERO, HarmonicFunction, as_fraction,
                       normal_derivative, tangential_derivative)
from .pwharmonic import (PiecewiseHarmonic, combine, energy_measure_pair, from_harmonic,
                         is_continuous_at, junctions, local_value, loop_potential,
                         matching_defect, point_normal_derivative, restrict_to_cell,
                         restricted_loop_potential)
from .address import Address

LOOP_NORM = 30  # squared norm of d(psi) for the root loop


class RaySeriesDivergent(ValueError):
    """A geometric loop family whose coefficients are not square summable."""


class NotDivergenceFree(ValueError):
    pass


class AlgorithmMismatch(AssertionError):
    pass


class UnsupportedGeometry(ValueError):
    """The brute-force measure cannot see infinitely many loops in the cell."""


def _under(word: str, dirs: str) -> bool:
    return all(s in dirs for s in word)


@dataclass(frozen=True)
class LoopFamily:
    base: str
    dirs: str
    amplitude: Fraction
    ratio: Fraction

    def __post_init__(self):
        check_word(self.base)
        dirs = "".join(sorted(set(self.dirs)))
        check_word(dirs)
        object.__setattr__(self, "dirs", dirs)
        object.__setattr__(self, "amplitude", as_fraction(self.amplitude))
        object.__setattr__(self, "ratio", as_fraction(self.ratio) if dirs else Fraction(1))
        if dirs and ENERGY_SCALE * len(dirs) * self.ratio**2 >= 1:
            raise RaySeriesDivergent(
                f"family at {self.base!r} along {dirs!r} with ratio {self.ratio} is not square summable")

    @property
    def is_finite(self) -> bool:
        return not self.dirs

    def coefficient(self, word: str) -> Fraction:
        if not word.startswith(self.base):
            return Fraction(0)
        rest = word[len(self.base):]
        if not _under(rest, self.dirs):
            return Fraction(0)
        return self.amplitude * self.ratio ** len(rest)

    def meets_cell(self, word: str) -> bool:
        """True if some loop of the family sits in K_word (itself included)."""
        if word.startswith(self.base):
            return _under(word[len(self.base):], self.dirs)
        return self.base.startswith(word)

    def restrict(self, word: str) -> "LoopFamily | None":
        """The family seen from inside K_word, re-based at the empty word."""
        if self.base.startswith(word):
            return LoopFamily(self.base[len(word):], self.dirs, self.amplitude, self.ratio)
        if word.startswith(self.base) and _under(word[len(self.base):], self.dirs) and self.dirs:
            d = len(word) - len(self.base)
            return LoopFamily("", self.dirs, self.amplitude * self.ratio**d, self.ratio)
        return None

    def scale(self, c) -> "LoopFamily":
        return LoopFamily(self.base, self.dirs, self.amplitude * as_fraction(c), self.ratio)

    def to_json(self) -> dict:
        if len(self.dirs) == 1:
            return {"base": self.base, "dir": int(self.dirs), "a": str(self.amplitude),
                    "phi": str(self.ratio)}
        return {"base": self.base, "dirs": self.dirs, "a": str(self.amplitude),
                "ratio": str(self.ratio)}

    @classmethod
    def from_json(cls, data) -> "LoopFamily":
        if "dir" in data:
            return cls(data["base"], str(data["dir"]), data["a"], data["phi"])
        return cls(data["base"], data["dirs"], data["a"], data["ratio"])


def ray(base: str, direction: int, a, phi) -> LoopFamily:
    """Theta_{base i^k} = a phi^k."""
    return LoopFamily(base, str(direction), a, phi)


def tree(base: str, a, theta) -> LoopFamily:
    """Theta_{base v} = a theta^{|v|} for every word v."""
    return LoopFamily(base, "012", a, theta)


def _common_cell(f: LoopFamily, g: LoopFamily, word: str):
    """Deepest word B with every loop shared by f and g inside K_word of the form B u."""
    cands = sorted((f.base, g.base, word), key=len)
    top = cands[-1]
    if not all(top.startswith(c) for c in cands):
        return None
    for fam in (f, g):
        if not _under(top[len(fam.base):], fam.dirs):
            return None
    return top


def _pair_family(f: LoopFamily, g: LoopFamily, word: str) -> Fraction:
    """sum of Theta^f_x Theta^g_x (5/3)^{|x|} over x in K_word."""
    top = _common_cell(f, g, word)
    if top is None:
        return Fraction(0)
    first = (f.coefficient(top) * g.coefficient(top) * ENERGY_SCALE ** len(top))
    shared = len(set(f.dirs) & set(g.dirs))
    if not shared or first == 0:
        return first
    q = shared * f.ratio * g.ratio * ENERGY_SCALE
    return first / (1 - q)


def _chain_terms(f: LoopFamily, word: str, i: int):
    """Loops of f on the chain word i^k: (j, Theta_{word i^j}, ratio or None) or None."""
    sym = str(i)
    if f.base.startswith(word):
        tail = f.base[len(word):]
        if not _under(tail, sym):
            return None
        return len(tail), f.amplitude, (f.ratio if sym in f.dirs else None)
    if word.startswith(f.base) and _under(word[len(f.base):], f.dirs):
        coef = f.coefficient(word)
        return 0, coef, (f.ratio if sym in f.dirs else None)
    return None


@dataclass(frozen=True)
class LoopCoefficients:
    finite: Mapping[str, Fraction] = field(default_factory=dict)
    families: tuple[LoopFamily, ...] = ()

    def __post_init__(self):
        clean = {}
        for w, c in self.finite.items():
            check_word(w)
            c = as_fraction(c)
            if c:
                clean[w] = c
        object.__setattr__(self, "finite", dict(sorted(clean.items())))
        fams = tuple(f for f in self.families if f.amplitude != 0)
        object.__setattr__(self, "families", fams)

    @property
    def is_finite(self) -> bool:
        return not self.families

    def is_zero(self) -> bool:
        return not self.finite and not self.families

    def coefficient(self, word: str) -> Fraction:
        return self.finite.get(word, Fraction(0)) + sum(
            (f.coefficient(word) for f in self.families), Fraction(0))

    def max_depth(self) -> int:
        """Deepest finite word or family base, -1 when there are no loops."""
        depths = [len(w) for w in self.finite] + [len(f.base) for f in self.families]
        return max(depths, default=-1)

    def infinite_in_cell(self, word: str) -> bool:
        return any(f.meets_cell(word) for f in self.families)

    def restrict(self, word: str) -> "LoopCoefficients":
        finite = {w[len(word):]: c for w, c in self.finite.items() if w.startswith(word)}
        fams = []
        for f in self.families:
            g = f.restrict(word)
            if g is not None:
                fams.append(g)
        return LoopCoefficients(finite, tuple(fams))

    def __add__(self, other: "LoopCoefficients") -> "LoopCoefficients":
        finite = dict(self.finite)
        for w, c in other.finite.items():
            finite[w] = finite.get(w, Fraction(0)) + c
        return LoopCoefficients(finite, self.families + other.families)

    def scale(self, c) -> "LoopCoefficients":
        c = as_fraction(c)
        if c == 0:
            return LoopCoefficients()
        return LoopCoefficients({w: v * c for w, v in self.finite.items()},
                                tuple(f.scale(c) for f in self.families))

    def to_json(self) -> dict:
        data = {"finite": {w: str(c) for w, c in self.finite.items()}}
        rays = [f.to_json() for f in self.families if len(f.dirs) == 1]
        others = [f.to_json() for f in self.families if len(f.dirs) != 1]
        data["rays"] = rays
        if others:
            data["families"] = others
        return data

    @classmethod
    def from_json(cls, data) -> "LoopCoefficients":
        fams = [LoopFamily.from_json(d) for d in data.get("rays", [])]
        fams += [LoopFamily.from_json(d) for d in data.get("families", [])]
        return cls(dict(data.get("finite", {})), tuple(fams))


NO_LOOPS = LoopCoefficients()


def loop_inner_sum(a: LoopCoefficients, b: LoopCoefficients, word: str = "") -> Fraction:
    """sum over loops x in K_word of Theta^a_x Theta^b_x (5/3)^{|x|}."""
    total = Fraction(0)
    for x, c in a.finite.items():
        if x.startswith(word):
            total += c * b.coefficient(x) * ENERGY_SCALE ** len(x)
    for x, c in b.finite.items():
        if x.startswith(word):
            cones = sum((f.coefficient(x) for f in a.families), Fraction(0))
            total += c * cones * ENERGY_SCALE ** len(x)
    for f in a.families:
        for g in b.families:
            total += _pair_family(f, g, word)
    return total


def chain_sum(loops: LoopCoefficients, word: str, i: int, m: int | None, weight=5) -> Fraction:
    """sum_{k<m} Theta_{word i^k} weight^k; m=None sums the whole chain.

    The infinite sum raises ValueError when a family along the chain has
    |weight * ratio| >= 1.
    """
    weight = as_fraction(weight)
    total = Fraction(0)
    sym = str(i)
    for x, c in loops.finite.items():
        if x.startswith(word) and _under(x[len(word):], sym):
            k = len(x) - len(word)
            if m is None or k < m:
                total += c * weight**k
    for f in loops.families:
        terms = _chain_terms(f, word, i)
        if terms is None:
            continue
        j, first, ratio = terms
        if first == 0 or (m is not None and j >= m):
            continue
        head = first * weight**j
        if ratio is None:
            total += head
            continue
        q = weight * ratio
        if m is None:
            if abs(q) >= 1:
                raise ValueError(f"chain series along {word!r}{sym}^k diverges (ratio {q})")
            total += head / (1 - q)
        else:
            n = m - j
            total += head * (n if q == 1 else (1 - q**n) / (1 - q))
    return total


def _harmonic_part(u: PiecewiseHarmonic) -> HarmonicFunction:
    """Corner values of u on the whole cell."""
    return HarmonicFunction(local_value(u, Address("", i)) for i in range(3))


@dataclass(frozen=True)
class OneForm:
    exact: PiecewiseHarmonic = field(default_factory=lambda: from_harmonic(ZERO))
    loops: LoopCoefficients = NO_LOOPS

    def __post_init__(self):
        if isinstance(self.exact, HarmonicFunction):
            object.__setattr__(self, "exact", from_harmonic(self.exact))
        for q in junctions(self.exact):
            if not is_continuous_at(self.exact, q):
                raise ValueError(f"exact part is discontinuous at {q}")

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(combine([(1, self.exact), (1, other.exact)]), self.loops + other.loops)

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self + other.scale(-1)

    def __neg__(self) -> "OneForm":
        return self.scale(-1)

    def scale(self, c) -> "OneForm":
        return OneForm(self.exact.scale(c), self.loops.scale(c))

    def to_json(self) -> dict:
        return {"exact": self.exact.to_json(), "loops": self.loops.to_json()}

    @classmethod
    def from_json(cls, data) -> "OneForm":
        exact = data.get("exact")
        if exact is None:
            eta = from_harmonic(ZERO)
        elif "corners" in exact:
            eta = from_harmonic(HarmonicFunction.from_json(exact))
        else:
            eta = PiecewiseHarmonic.from_json(exact)
        return cls(eta, LoopCoefficients.from_json(data.get("loops", {})))


def exact_form(h) -> OneForm:
    if isinstance(h, PiecewiseHarmonic):
        return OneForm(h)
    if not isinstance(h, HarmonicFunction):
        h = HarmonicFunction(h)
    return OneForm(from_harmonic(h))


def loop_form(word: str = "", coefficient=1) -> OneForm:
    return OneForm(loops=LoopCoefficients({word: coefficient}))


def family_form(family: LoopFamily) -> OneForm:
    return OneForm(loops=LoopCoefficients({}, (family,)))


def inner(a: OneForm, b: OneForm) -> Fraction:
    """<a, b> using orthogonality of exact parts and loops."""
    exact = energy_measure_pair(a.exact, b.exact, "")
    return exact + LOOP_NORM * loop_inner_sum(a.loops, b.loops)


def norm_sq(omega: OneForm) -> Fraction:
    return inner(omega, omega)


def basis_gram(n: int) -> tuple[list[str], list[list[Fraction]]]:
    """Gram matrix of d(psi_w), |w| <= n, from cell energies of the potentials."""
    index = [w for k in range(n + 1) for w in words(k)]
    pots = {w: loop_potential(w) for w in index}
    gram = [[Fraction(0)] * len(index) for _ in index]
    for a, wa in enumerate(index):
        for b in range(a, len(index)):
            wb = index[b]
            val = energy_measure_pair(pots[wa], pots[wb], "")
            gram[a][b] = gram[b][a] = val
    return index, gram


def compose_cell(omega: OneForm, word: str) -> OneForm:
    """omega o F_word: ancestor loops fold into the exact part, deeper loops shift."""
    check_word(word)
    terms = [(1, restrict_to_cell(omega.exact, word))]
    for k in range(len(word)):
        anc = word[:k]
        theta = omega.loops.coefficient(anc)
        if theta:
            terms.append((theta, restricted_loop_potential(anc, word)))
    return OneForm(combine(terms), omega.loops.restrict(word))


def divergence_free_check(omega: OneForm) -> tuple[bool, bool]:
    """(in the V_0-relative kernel, in the full kernel of the codifferential)."""
    eta = omega.exact
    kirchhoff = all(matching_defect(eta, q) == 0 for q in junctions(eta))
    if not kirchhoff:
        return False, False
    flux_free = all(point_normal_derivative(eta, Address("", i)) == 0 for i in range(3))
    return True, flux_free


def is_divergence_free(omega: OneForm) -> bool:
    return divergence_free_check(omega)[0]


def _measure_scale(omega: OneForm, word: str) -> Fraction:
    return ENERGY_SCALE ** len(word) * norm_sq(compose_cell(omega, word))


def brute_force_level(omega: OneForm, word: str) -> int:
    """Level at which the brute-force measure on K_word is computed."""
    deepest = max((len(x) + 1 for x in omega.loops.finite if x.startswith(word)), default=0)
    return max(omega.exact.level, deepest, len(word))


def _measure_brute(omega: OneForm, word: str, other: OneForm | None = None) -> Fraction:
    """Sum of scaled cell energies of the local piecewise harmonic potentials."""
    def potential(form: OneForm) -> PiecewiseHarmonic:
        if form.loops.infinite_in_cell(word):
            raise UnsupportedGeometry(f"infinitely many loops inside K_{word or 'root'}")
        terms = [(1, restrict_to_cell(form.exact, word))]
        xs = {word[:k] for k in range(len(word) + 1)}
        xs.update(x for x in form.loops.finite if x.startswith(word))
        for x in sorted(xs):
            theta = form.loops.coefficient(x)
            if theta:
                terms.append((theta, restricted_loop_potential(x, word)))
        return combine(terms)

    g = potential(omega)
    h = g if other is None else potential(other)
    return ENERGY_SCALE ** len(word) * energy_measure_pair(g, h, "")


def _measure_closed(omega: OneForm, word: str) -> Fraction:
    """Closed form at the corner chain ending the word; needs a harmonic exact part."""
    if not is_divergence_free(omega):
        raise NotDivergenceFree("closed-form measure needs a divergence-free form")
    if word:
        i = int(word[-1])
        stem = word.rstrip(word[-1])
        m = len(word) - len(stem)
    else:
        i, stem, m = 0, "", 0
    local = compose_cell(omega, stem)
    eta = _harmonic_part(local.exact)
    dn = normal_derivative(eta, i)
    dt = tangential_derivative(eta, i) + 10 * chain_sum(local.loops, "", i, m)
    inside = loop_inner_sum(local.loops, local.loops, str(i) * m)
    value = (RESISTANCE**m * dn * dn / 2 + Fraction(3, 2) * Fraction(1, 15**m) * dt * dt
             + LOOP_NORM * inside)
    return ENERGY_SCALE ** len(stem) * value


CROSS_CHECK_CELLS = 3**6


def measure_cell(omega: OneForm, word: str = "", algorithm: str = "auto") -> Fraction:
    """nu_omega(K_word).

    "brute" sums cell energies of the local potentials (finitely many loops in
    the cell); "closed" uses the corner-chain formula (divergence-free forms);
    "scale" composes with F_word and takes the squared norm. "auto" picks the
    closed form when possible, otherwise the scaling route, and cross-checks
    against the brute-force sum when that is cheap.
    """
    check_word(word)
    if algorithm == "brute":
        return _measure_brute(omega, word)
    if algorithm == "closed":
        return _measure_closed(omega, word)
    if algorithm == "scale":
        return _measure_scale(omega, word)
    if algorithm != "auto":
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if is_divergence_free(omega):
        value = _measure_closed(omega, word)
        scaled = _measure_scale(omega, word)
        if scaled != value:
            raise AlgorithmMismatch(f"nu(K_{word}): closed form {value} != scaled {scaled}")
    else:
        value = _measure_scale(omega, word)
    cheap = 3 ** (brute_force_level(omega, word) - len(word)) <= CROSS_CHECK_CELLS
    if cheap and not omega.loops.infinite_in_cell(word):
        brute = _measure_brute(omega, word)
        if brute != value:
            raise AlgorithmMismatch(f"nu(K_{word}): closed/scaled {value} != brute force {brute}")
    return value


def pair_measure_cell(a: OneForm, b: OneForm, word: str = "", algorithm: str = "auto") -> Fraction:
    """nu_{a,b}(K_word) by polarization."""
    plus = measure_cell(a + b, word, algorithm)
    minus = measure_cell(a - b, word, algorithm)
    return (plus - minus) / 4


def pair_measure_brute(a: OneForm, b: OneForm, word: str = "") -> Fraction:
    """nu_{a,b}(K_word) as a direct bilinear cell sum."""
    return _measure_brute(a, word, b)


def _cell_potentials(omega: OneForm, level: int) -> Iterable[tuple[str, HarmonicFunction | None]]:
    for w in words(level):
        if omega.loops.infinite_in_cell(w):
            yield w, None
            continue
        local = compose_cell(omega, w)
        yield w, _harmonic_part(local.exact) if local.loops.is_zero() else None


def med_check(omega: OneForm) -> bool:
    """Sufficient test for minimal energy-dominance.

    Certifies when, at the first level where every cell carries a single
    harmonic potential, each of those potentials is nonconstant. Cells that
    still hold loops (infinite families) are not certified.
    """
    level = max(omega.exact.level, omega.loops.max_depth() + 1)
    for _, h in _cell_potentials(omega, level):
        if h is None or h.is_constant():
            return False
    return True


def harmonic_exact_part(omega: OneForm) -> HarmonicFunction:
    """Corner data of a divergence-free form's exact part."""
    if not is_divergence_free(omega):
        raise NotDivergenceFree("exact part is not harmonic")
    return _harmonic_part(omega.exact)
