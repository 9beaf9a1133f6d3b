"""Current, Sugawara and Coulomb-gas modes acting on insertion lists.

A mode word is written outermost first: in ``L_2 a_-1`` the current mode
a_-1 is applied first (integrated on the innermost contour). Every word is
expanded into a linear combination of pure current words, which are then
evaluated as nested discrete contour integrals

    <a_{n_j} ... a_{n_1} P> = pi^(-j/2) sum over edges of gamma_j, ..., gamma_1
        prod_k (v - u) z^[n_k](diamond flank) * <J(medial flanks) ... P>

with gamma_1 innermost. Antianalytic modes use conj(v - u) conj(z^[n]) and Jbar.

A contour current contracts with another current through half of the
current covariance [dK]: [dK] is the current covariance of the field together
with an independent copy on the dual lattice, and inside contour integrals
the two copies contribute equally. With this weight [a_m, a_n] = m d(m+n).
"""

import enum
import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .contour import Contour, rectangle_contour
from .correlator import (
    CurrentPoint, GaussianCorrelator, Geometry, Insertion, InsertionList,
    Sector, default_correlator, pair_partitions,
)
from .errors import ContourTooSmallError, GeometryMismatchError
from .lattice import Site
from .monomials import MonomialFamily, default_monomials
from .scalar import INV_PI, INV_SQRT_PI, ONE, ZERO, PiScalar

logger = logging.getLogger(__name__)

CURRENT_PAIRING = Fraction(1, 2)


class GeneratorKind(enum.Enum):
    CURRENT = 'a'
    CURRENT_BAR = 'abar'
    VIRASORO = 'L'
    VIRASORO_BAR = 'Lbar'
    COULOMB = 'Lb'
    COULOMB_BAR = 'Lbarb'


_KIND_SECTOR = {
    GeneratorKind.CURRENT: Sector.ANALYTIC,
    GeneratorKind.CURRENT_BAR: Sector.ANTIANALYTIC,
    GeneratorKind.VIRASORO: Sector.ANALYTIC,
    GeneratorKind.VIRASORO_BAR: Sector.ANTIANALYTIC,
    GeneratorKind.COULOMB: Sector.ANALYTIC,
    GeneratorKind.COULOMB_BAR: Sector.ANTIANALYTIC,
}

_CHARGED = (GeneratorKind.COULOMB, GeneratorKind.COULOMB_BAR)
_CURRENTS = (GeneratorKind.CURRENT, GeneratorKind.CURRENT_BAR)


@dataclass(frozen=True)
class Generator:
    kind: GeneratorKind
    index: int
    charge: Fraction = Fraction(0)

    @property
    def sector(self) -> Sector:
        return _KIND_SECTOR[self.kind]

    def __str__(self) -> str:
        if self.kind in _CHARGED:
            return f"{self.kind.value}[{self.charge}]_{self.index}"
        return f"{self.kind.value}_{self.index}"


def current(n: int) -> Generator:
    return Generator(GeneratorKind.CURRENT, n)


def current_bar(n: int) -> Generator:
    return Generator(GeneratorKind.CURRENT_BAR, n)


def virasoro(n: int) -> Generator:
    return Generator(GeneratorKind.VIRASORO, n)


def virasoro_bar(n: int) -> Generator:
    return Generator(GeneratorKind.VIRASORO_BAR, n)


def coulomb(n: int, b) -> Generator:
    """L^b_n = L_n + b (n + 1) a_n."""
    return Generator(GeneratorKind.COULOMB, n, Fraction(b))


def coulomb_bar(n: int, b) -> Generator:
    """Lbar^b_n = Lbar_n + b (n + 1) abar_n."""
    return Generator(GeneratorKind.COULOMB_BAR, n, Fraction(b))


def coulomb_central_charge(b) -> Fraction:
    return 1 - 12 * Fraction(b) ** 2


@dataclass(frozen=True)
class ModeWord:
    """Product of generators, outermost (last applied) first."""

    generators: Tuple[Generator, ...] = ()

    @classmethod
    def of(cls, *generators: Generator) -> 'ModeWord':
        return cls(tuple(generators))

    def __mul__(self, other: 'ModeWord') -> 'ModeWord':
        return ModeWord(self.generators + other.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        return ' '.join(str(g) for g in self.generators) or '1'


# (sector, index) of a current mode; a CurrentWord is written outermost first
CurrentMode = Tuple[Sector, int]
CurrentWord = Tuple[CurrentMode, ...]


def truncation_bound(ins: InsertionList) -> int:
    """Index beyond which current modes annihilate the insertions.

    1 + 2 max norm1 over field points (1 for no fields); a fixed current at w
    needs 2 + 2 norm1(w).
    """
    bound = 1 + 2 * math.ceil(ins.max_field_norm)
    if ins.currents:
        bound = max(bound, 2 + math.ceil(2 * ins.max_current_norm))
    return bound


def _insertion_radius(ins: InsertionList) -> int:
    """Smallest rectangle radius enclosing every point where the insertions are singular."""
    radius = math.ceil(ins.max_field_norm)
    if ins.currents:
        radius = max(radius, math.ceil(ins.max_current_norm + Fraction(1, 2)))
    return radius


def auto_radii(indices: Sequence[int], ins: InsertionList, growth: int = 0) -> List[int]:
    """Rectangle radii for current modes n_1, ..., n_j listed innermost first."""
    radii: List[int] = []
    for k, n in enumerate(indices):
        needed = max(0, math.ceil(Fraction(-n, 2)))
        if k == 0:
            radii.append(max(_insertion_radius(ins), needed))
        else:
            radii.append(max(radii[-1] + 1, needed))
    return [r + growth for r in radii]


def auto_contours(indices: Sequence[int], ins: InsertionList, growth: int = 0) -> List[Contour]:
    """Nested rectangle contours for current modes listed innermost first."""
    return [rectangle_contour(r) for r in auto_radii(indices, ins, growth)]


def check_radii(indices: Sequence[int], ins: InsertionList, radii: Sequence[int]) -> None:
    """Validate explicitly chosen radii against radial ordering and the singular balls.

    Raises:
        ContourTooSmallError: If a contour is too small or the nesting is broken
    """
    if len(radii) != len(indices):
        raise ContourTooSmallError(f"Expected {len(indices)} radii, got {len(radii)}")
    minimal = auto_radii(indices, ins)
    previous = None
    for n, r, floor in zip(indices, radii, minimal):
        if previous is None and r < floor:
            raise ContourTooSmallError(f"Innermost radius {r} does not enclose the insertions (need {floor})")
        if r < math.ceil(Fraction(-n, 2)):
            raise ContourTooSmallError(f"Radius {r} does not enclose the ball of mode {n}")
        if previous is not None and r <= previous:
            raise ContourTooSmallError(f"Radii {list(radii)} are not strictly increasing")
        previous = r


# -- word expansion -----------------------------------------------------------

def _sugawara_terms(sector: Sector, n: int, bound: int) -> List[Tuple[CurrentWord, Fraction]]:
    half = Fraction(1, 2)
    terms = [(((sector, n - j), (sector, j)), half) for j in range(0, bound + 1)]
    terms += [(((sector, j), (sector, n - j)), half) for j in range(n - bound, 0)]
    return terms


def _generator_terms(gen: Generator, inner: CurrentWord, field_bound: int,
                     padding: int) -> List[Tuple[CurrentWord, Fraction]]:
    if gen.kind in _CURRENTS:
        return [(((gen.sector, gen.index),), Fraction(1))]
    sector = gen.sector
    bound = max([field_bound] + [-k for s, k in inner if s is sector]) + padding
    terms = _sugawara_terms(sector, gen.index, bound)
    shift = gen.charge * (gen.index + 1)
    if gen.kind in _CHARGED and shift:
        terms.append((((sector, gen.index),), shift))
    return terms


def expand_word(word: ModeWord, ins: InsertionList, padding: int = 0) -> Dict[CurrentWord, Fraction]:
    """Rewrite a mode word as an exact linear combination of current words.

    Generators are unfolded right to left; each Sugawara generator is
    truncated at max(M_G, max(-k) over the same-sector modes inside it) plus
    ``padding``, beyond which every further term acts as zero.
    """
    field_bound = truncation_bound(ins)
    terms: Dict[CurrentWord, Fraction] = {(): Fraction(1)}
    for gen in reversed(word.generators):
        expanded: Dict[CurrentWord, Fraction] = defaultdict(Fraction)
        for inner, coeff in terms.items():
            for outer, c in _generator_terms(gen, inner, field_bound, padding):
                expanded[outer + inner] += coeff * c
        terms = {w: c for w, c in expanded.items() if c}
    return terms


class Parity(enum.Enum):
    EVEN = 'even'
    ODD = 'odd'
    MIXED = 'mixed'


def parity_of_action(word: ModeWord, ins: InsertionList) -> Parity:
    """Wick parity of the slot count; ODD actions vanish identically."""
    if any(g.kind in _CHARGED and g.charge for g in word.generators):
        return Parity.MIXED
    currents = sum(1 for g in word.generators if g.kind in _CURRENTS)
    return Parity.ODD if (currents + len(ins)) % 2 else Parity.EVEN


# -- evaluation ---------------------------------------------------------------

class ModeEvaluator:
    """Exact mode actions with cached contour integrals.

    The fast path factorizes the Wick expansion: each current mode pairs
    either with a fixed insertion (a single contour integral) or with
    another current mode (a double contour integral). Integrals are cached by
    the actual contour radius, so grown contours are recomputed honestly.
    """

    def __init__(self, correlator: Optional[GaussianCorrelator] = None,
                 monomials: Optional[MonomialFamily] = None,
                 growth: int = 0, padding: int = 0, reference: bool = False):
        self.correlator = correlator or default_correlator()
        self.monomials = monomials or default_monomials()
        self.growth = growth
        self.padding = padding
        self.reference = reference
        self._edge_weights: Dict[Tuple[Sector, int, int], List[Tuple[Site, PiScalar]]] = {}
        self._single: Dict[Tuple, PiScalar] = {}
        self._double: Dict[Tuple, PiScalar] = {}
        self._inner: Dict[Tuple, Dict[Site, PiScalar]] = {}
        self.stats: Dict[str, int] = defaultdict(int)

    def with_growth(self, growth: int) -> 'ModeEvaluator':
        """An evaluator sharing kernels and monomials but using grown contours."""
        return ModeEvaluator(self.correlator, self.monomials, growth=growth, padding=self.padding,
                             reference=self.reference)

    # -- contour data ------------------------------------------------------

    def edge_weights(self, sector: Sector, n: int, r: int) -> List[Tuple[Site, PiScalar]]:
        """(medial flank, (v - u) z^[n](diamond flank)) per edge, conjugated for Jbar."""
        key = (sector, n, r)
        cached = self._edge_weights.get(key)
        if cached is None:
            mono = self.monomials.function(n)
            cached = []
            for edge in rectangle_contour(r).edges:
                weight = edge.direction * mono(edge.diamond)
                if sector is Sector.ANTIANALYTIC:
                    weight = weight.conjugate()
                if weight:
                    cached.append((edge.medial, weight))
            self._edge_weights[key] = cached
        return cached

    def single_integral(self, mode: CurrentMode, r: int, slot: Insertion, geometry: Geometry) -> PiScalar:
        """pi^(-1/2) times the contour integral of <J(z) slot> against z^[n].

        A current slot is contracted with weight CURRENT_PAIRING.
        """
        key = (mode, r, slot, geometry)
        value = self._single.get(key)
        if value is None:
            sector, n = mode
            total = ZERO
            for site, weight in self.edge_weights(sector, n, r):
                c = self.correlator.covariance(CurrentPoint(site, sector, geometry), slot, geometry)
                if c:
                    total = total + weight * c
            if isinstance(slot, CurrentPoint):
                total = total.scale(CURRENT_PAIRING)
            value = self._single.setdefault(key, total * INV_SQRT_PI)
            self.stats['single_integrals'] += 1
        return value

    def _inner_values(self, inner: CurrentMode, r_inner: int, outer_sector: Sector,
                      geometry: Geometry, sites: Sequence[Site]) -> Dict[Site, PiScalar]:
        key = (inner, r_inner, outer_sector, geometry)
        table = self._inner.setdefault(key, {})
        sector, n = inner
        weights = self.edge_weights(sector, n, r_inner)
        for w in sites:
            if w in table:
                continue
            outer_point = CurrentPoint(w, outer_sector, geometry)
            total = ZERO
            for z, weight in weights:
                c = self.correlator.cov_J_J(CurrentPoint(z, sector, geometry), outer_point)
                if c:
                    total = total + weight * c
            table[w] = total
        return table

    def double_integral(self, inner: CurrentMode, r_inner: int, outer: CurrentMode, r_outer: int,
                        geometry: Geometry) -> PiScalar:
        """pi^-1 CURRENT_PAIRING times the nested integral of <J(z) J(w)> z^[n_inner] w^[n_outer]."""
        key = (inner, r_inner, outer, r_outer, geometry)
        value = self._double.get(key)
        if value is None:
            outer_weights = self.edge_weights(outer[0], outer[1], r_outer)
            inner_values = self._inner_values(inner, r_inner, outer[0], geometry,
                                              [w for w, _ in outer_weights])
            total = ZERO
            for w, weight in outer_weights:
                g = inner_values[w]
                if g:
                    total = total + weight * g
            value = self._double.setdefault(key, total.scale(CURRENT_PAIRING) * INV_PI)
            self.stats['double_integrals'] += 1
        return value

    # -- current words -----------------------------------------------------

    def _radii(self, word: CurrentWord, ins: InsertionList, radii: Optional[Sequence[int]]) -> List[int]:
        indices = [n for _, n in reversed(word)]
        if radii is None:
            return auto_radii(indices, ins, self.growth)
        check_radii(indices, ins, radii)
        return list(radii)

    def current_word_value(self, word: CurrentWord, ins: InsertionList,
                           radii: Optional[Sequence[int]] = None) -> PiScalar:
        """<word P> by factorized Wick pairing; ``radii`` are listed innermost first."""
        if (len(word) + len(ins)) % 2:
            return ZERO
        modes = list(reversed(word))
        radii = self._radii(word, ins, radii)
        fixed = ins.points
        geometry = ins.geometry
        slots = list(range(len(modes) + len(fixed)))
        j = len(modes)
        pair_cache: Dict[Tuple[int, int], PiScalar] = {}

        def pair_value(a: int, b: int) -> PiScalar:
            value = pair_cache.get((a, b))
            if value is None:
                if b < j:
                    value = self.double_integral(modes[a], radii[a], modes[b], radii[b], geometry)
                elif a < j:
                    value = self.single_integral(modes[a], radii[a], fixed[b - j], geometry)
                else:
                    value = self.correlator.covariance(fixed[a - j], fixed[b - j], geometry)
                pair_cache[(a, b)] = value
            return value

        total = ZERO
        for matching in pair_partitions(slots):
            product = ONE
            for a, b in matching:
                value = pair_value(a, b)
                if not value:
                    product = ZERO
                    break
                product = product * value
            if product:
                total = total + product
        self.stats['current_words'] += 1
        return total

    def reference_current_word_value(self, word: CurrentWord, ins: InsertionList,
                                     radii: Optional[Sequence[int]] = None) -> PiScalar:
        """<word P> by literal nested summation with a full Wick expansion per edge tuple."""
        if (len(word) + len(ins)) % 2:
            return ZERO
        modes = list(reversed(word))
        radii = self._radii(word, ins, radii)
        geometry = ins.geometry
        per_contour = []
        for (sector, n), r in zip(modes, radii):
            per_contour.append([(CurrentPoint(site, sector, geometry), weight)
                                for site, weight in self.edge_weights(sector, n, r)])
        total = ZERO
        for combination in itertools.product(*per_contour):
            weight = ONE
            for _, w in combination:
                weight = weight * w
            points = tuple(point for point, _ in combination) + ins.points
            value = self._contour_wick(points, len(modes), geometry)
            if value:
                total = total + weight * value
        return total * INV_SQRT_PI ** len(modes)

    # -- mode words --------------------------------------------------------

    def action(self, word: ModeWord, ins: InsertionList) -> PiScalar:
        """Exact <word P> with the configured evaluator."""
        if self.reference:
            return self.reference_action(word, ins)
        total = ZERO
        for current_word, coeff in expand_word(word, ins, self.padding).items():
            value = self.current_word_value(current_word, ins)
            if value:
                total = total + value.scale(coeff)
        return total

    def reference_action(self, word: ModeWord, ins: InsertionList) -> PiScalar:
        total = ZERO
        for current_word, coeff in expand_word(word, ins, self.padding).items():
            value = self.reference_current_word_value(current_word, ins)
            if value:
                total = total + value.scale(coeff)
        return total

    def mode_action(self, word: ModeWord, ins: InsertionList,
                    radii: Optional[Sequence[int]] = None) -> PiScalar:
        """Action of a pure current word, optionally on explicit contour radii."""
        current_word: List[CurrentMode] = []
        for gen in word.generators:
            if gen.kind not in _CURRENTS:
                raise ValueError(f"mode_action takes current generators only, got {gen}")
            current_word.append((gen.sector, gen.index))
        return self.current_word_value(tuple(current_word), ins, radii)

    def sugawara_action(self, n: int, ins: InsertionList, sector: Sector = Sector.ANALYTIC) -> PiScalar:
        gen = virasoro(n) if sector is Sector.ANALYTIC else virasoro_bar(n)
        return self.action(ModeWord.of(gen), ins)

    def upper_half_action(self, n: int, ins: InsertionList, radius: Optional[int] = None) -> PiScalar:
        """Half-plane <a_n P> using only contour edges in the closed upper half plane.

        The lower half of the contour is folded onto the upper half through
        J(conj z) = -Jbar(z) and conj(z)^[n] = conj(z^[n]); edges crossing
        the real axis are kept as they are.
        """
        if ins.geometry is not Geometry.HALF_PLANE:
            raise GeometryMismatchError("upper_half_action needs a half-plane insertion list")
        r = radius if radius is not None else auto_radii([n], ins, self.growth)[0]
        check_radii([n], ins, [r])
        mono = self.monomials.function(n)
        total = ZERO
        for edge in rectangle_contour(r).edges:
            if edge.start.qy < 0 or edge.end.qy < 0:
                if edge.start.qy > 0 or edge.end.qy > 0:
                    analytic = edge.direction * mono(edge.diamond)
                    total = total + analytic * self._current_expectation(edge.medial, Sector.ANALYTIC, ins)
                continue
            analytic = edge.direction * mono(edge.diamond)
            total = total + analytic * self._current_expectation(edge.medial, Sector.ANALYTIC, ins)
            total = total + analytic.conjugate() * self._current_expectation(edge.medial, Sector.ANTIANALYTIC, ins)
        return total * INV_SQRT_PI

    def _current_expectation(self, site: Site, sector: Sector, ins: InsertionList) -> PiScalar:
        points = (CurrentPoint(site, sector, ins.geometry),) + ins.points
        return self._contour_wick(points, 1, ins.geometry)

    def _contour_wick(self, points: Sequence[Insertion], contour_points: int,
                      geometry: Geometry) -> PiScalar:
        """Wick sum in which the first ``contour_points`` points sit on mode contours."""
        def pair(i: int, k: int) -> PiScalar:
            value = self.correlator.covariance(points[i], points[k], geometry)
            if i < contour_points and isinstance(points[k], CurrentPoint):
                return value.scale(CURRENT_PAIRING)
            return value

        return self.correlator.wick(points, geometry, pair)


def mode_action(word: ModeWord, ins: InsertionList, evaluator: Optional[ModeEvaluator] = None) -> PiScalar:
    return (evaluator or ModeEvaluator()).action(word, ins)


def sugawara_action(n: int, ins: InsertionList, sector: Sector = Sector.ANALYTIC,
                    evaluator: Optional[ModeEvaluator] = None) -> PiScalar:
    return (evaluator or ModeEvaluator()).sugawara_action(n, ins, sector)
