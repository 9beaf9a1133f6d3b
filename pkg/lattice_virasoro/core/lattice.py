"""Sites of the refined grid (Z/4)^2 and the finite-difference operators.

A site stores integer quarter-lattice coordinates, so the square lattice,
its dual, the medial lattice and the contour grid all embed exactly:

    VERTEX        qx = 0, qy = 0 (mod 4)
    DUAL          qx = 2, qy = 2 (mod 4)
    MEDIAL_H      qx = 2, qy = 0 (mod 4)
    MEDIAL_V      qx = 0, qy = 2 (mod 4)
    CONTOUR_NODE  qx, qy both odd
"""

import enum
import logging
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from .errors import SiteClassError
from .scalar import ZERO, GaussianRational, PiScalar, gaussian

logger = logging.getLogger(__name__)


class SiteClass(enum.Enum):
    VERTEX = 'vertex'
    DUAL = 'dual'
    MEDIAL_H = 'medial_h'
    MEDIAL_V = 'medial_v'
    CONTOUR_NODE = 'contour_node'


DIAMOND: FrozenSet[SiteClass] = frozenset({SiteClass.VERTEX, SiteClass.DUAL})
MEDIAL: FrozenSet[SiteClass] = frozenset({SiteClass.MEDIAL_H, SiteClass.MEDIAL_V})
FUNCTION_CLASSES: FrozenSet[SiteClass] = DIAMOND | MEDIAL

_EVEN_CLASSES = {
    (0, 0): SiteClass.VERTEX,
    (2, 2): SiteClass.DUAL,
    (2, 0): SiteClass.MEDIAL_H,
    (0, 2): SiteClass.MEDIAL_V,
}


class Site(NamedTuple):
    """A point (qx/4, qy/4) of the refined grid."""

    qx: int
    qy: int

    @classmethod
    def at(cls, x, y=0) -> 'Site':
        """Build a site from true coordinates (ints or Fractions on the quarter grid)."""
        qx, qy = Fraction(x) * 4, Fraction(y) * 4
        if qx.denominator != 1 or qy.denominator != 1:
            raise SiteClassError(f"({x}, {y}) is not on the quarter grid")
        return cls(int(qx), int(qy))

    @property
    def site_class(self) -> SiteClass:
        if self.qx % 2 and self.qy % 2:
            return SiteClass.CONTOUR_NODE
        key = (self.qx % 4, self.qy % 4)
        if key not in _EVEN_CLASSES:
            raise SiteClassError(f"{self} lies on no lattice of the refined grid")
        return _EVEN_CLASSES[key]

    def is_in(self, classes: Iterable[SiteClass]) -> bool:
        try:
            return self.site_class in classes
        except SiteClassError:
            return False

    @property
    def norm1(self) -> Fraction:
        return Fraction(abs(self.qx) + abs(self.qy), 4)

    @property
    def value(self) -> PiScalar:
        """The site as an exact complex number."""
        return gaussian(Fraction(self.qx, 4), Fraction(self.qy, 4))

    def shifted(self, dqx: int, dqy: int) -> 'Site':
        return Site(self.qx + dqx, self.qy + dqy)

    def __add__(self, other: 'Site') -> 'Site':  # type: ignore[override]
        return Site(self.qx + other.qx, self.qy + other.qy)

    def __sub__(self, other: 'Site') -> 'Site':
        return Site(self.qx - other.qx, self.qy - other.qy)

    def __neg__(self) -> 'Site':
        return Site(-self.qx, -self.qy)

    def conjugate(self) -> 'Site':
        return Site(self.qx, -self.qy)

    def times_i(self) -> 'Site':
        return Site(-self.qy, self.qx)

    def __str__(self) -> str:
        x, y = Fraction(self.qx, 4), Fraction(self.qy, 4)
        return f"({x}, {y})"


ORIGIN = Site(0, 0)

# a in {1/2, -1/2, i/2, -i/2} as quarter-unit shifts
HALF_STEPS: Tuple[Tuple[int, int], ...] = ((2, 0), (-2, 0), (0, 2), (0, -2))
_STEP_WEIGHTS = {
    (2, 0): GaussianRational(Fraction(1, 2)),
    (-2, 0): GaussianRational(Fraction(-1, 2)),
    (0, 2): GaussianRational(0, Fraction(1, 2)),
    (0, -2): GaussianRational(0, Fraction(-1, 2)),
}
DBAR_WEIGHTS: Tuple[Tuple[Tuple[int, int], PiScalar], ...] = tuple(
    (step, PiScalar.coerce(w)) for step, w in _STEP_WEIGHTS.items()
)
DEE_WEIGHTS: Tuple[Tuple[Tuple[int, int], PiScalar], ...] = tuple(
    (step, PiScalar.coerce(w.conjugate())) for step, w in _STEP_WEIGHTS.items()
)
UNIT_STEPS: Tuple[Tuple[int, int], ...] = ((4, 0), (-4, 0), (0, 4), (0, -4))


def derived_classes(classes: FrozenSet[SiteClass]) -> FrozenSet[SiteClass]:
    """Sites where dee/dbar of a function on ``classes`` is defined."""
    result = set()
    if DIAMOND <= classes:
        result |= MEDIAL
    if MEDIAL <= classes:
        result |= DIAMOND
    return frozenset(result)


class LatticeFunction:
    """A lazily evaluated, memoized function on one or more site classes.

    Evaluating at a site outside ``classes`` raises SiteClassError. The cache
    tolerates concurrent readers and duplicate fills of the same value.
    """

    def __init__(self, classes: Iterable[SiteClass], evaluate: Callable[[Site], PiScalar],
                 name: str = 'f'):
        self.classes: FrozenSet[SiteClass] = frozenset(classes)
        self.name = name
        self._evaluate = evaluate
        self._cache: Dict[Site, PiScalar] = {}

    def __call__(self, z: Site) -> PiScalar:
        value = self._cache.get(z)
        if value is not None:
            return value
        if not z.is_in(self.classes):
            raise SiteClassError(f"{self.name} is not defined at {z}")
        value = PiScalar.coerce(self._evaluate(z))
        return self._cache.setdefault(z, value)

    def conjugated(self) -> 'LatticeFunction':
        """The function z -> conj(f(conj z))."""
        return LatticeFunction(self.classes, lambda z: self(z.conjugate()).conjugate(),
                               name=f"conj({self.name})")

    def __repr__(self) -> str:
        classes = ','.join(sorted(c.value for c in self.classes))
        return f"LatticeFunction({self.name} on {classes})"

    @classmethod
    def constant(cls, value, classes: Iterable[SiteClass] = FUNCTION_CLASSES) -> 'LatticeFunction':
        value = PiScalar.coerce(value)
        return cls(classes, lambda z: value, name=str(value))

    @classmethod
    def identity(cls, classes: Iterable[SiteClass] = FUNCTION_CLASSES) -> 'LatticeFunction':
        return cls(classes, lambda z: z.value, name='z')

    @classmethod
    def from_mapping(cls, classes: Iterable[SiteClass], values: Dict[Site, PiScalar],
                     name: str = 'f') -> 'LatticeFunction':
        """Finitely supported function, zero away from ``values``."""
        frozen = {site: PiScalar.coerce(v) for site, v in values.items()}
        return cls(classes, lambda z: frozen.get(z, ZERO), name=name)

    @classmethod
    def indicator(cls, site: Site, classes: Optional[Iterable[SiteClass]] = None) -> 'LatticeFunction':
        if classes is None:
            classes = MEDIAL if site.is_in(MEDIAL) else DIAMOND
        return cls.from_mapping(classes, {site: PiScalar.coerce(1)}, name=f"1[{site}]")


def _weighted_sum(f: LatticeFunction, z: Site, weights) -> PiScalar:
    total = ZERO
    for (dqx, dqy), w in weights:
        total = total + w * f(Site(z.qx + dqx, z.qy + dqy))
    return total


def dee(f: LatticeFunction, z: Site) -> PiScalar:
    """[df](z) = sum_a conj(a) f(z + a) over a in {+-1/2, +-i/2}."""
    return _weighted_sum(f, z, DEE_WEIGHTS)


def dbar(f: LatticeFunction, z: Site) -> PiScalar:
    """[dbar f](z) = sum_a a f(z + a) over a in {+-1/2, +-i/2}."""
    return _weighted_sum(f, z, DBAR_WEIGHTS)


def laplacian(f: LatticeFunction, z: Site) -> PiScalar:
    """Quarter-averaged Laplacian over the four unit neighbors."""
    total = ZERO
    for dqx, dqy in UNIT_STEPS:
        total = total + f(Site(z.qx + dqx, z.qy + dqy))
    return total.scale(Fraction(1, 4)) - f(z)


def dee_function(f: LatticeFunction) -> LatticeFunction:
    return LatticeFunction(derived_classes(f.classes), lambda z: dee(f, z), name=f"d({f.name})")


def dbar_function(f: LatticeFunction) -> LatticeFunction:
    return LatticeFunction(derived_classes(f.classes), lambda z: dbar(f, z), name=f"dbar({f.name})")


def laplacian_function(f: LatticeFunction) -> LatticeFunction:
    return LatticeFunction(f.classes, lambda z: laplacian(f, z), name=f"lap({f.name})")


def sites_in_ball(radius, classes: Iterable[SiteClass] = FUNCTION_CLASSES) -> Iterator[Site]:
    """All sites of ``classes`` with norm1 <= radius, in a deterministic order."""
    classes = frozenset(classes)
    bound = int(Fraction(radius) * 4)
    if bound < 0:
        return
    for qx in range(-bound, bound + 1):
        rest = bound - abs(qx)
        for qy in range(-rest, rest + 1):
            z = Site(qx, qy)
            if z.is_in(classes):
                yield z


def transpose_identity_check(f: LatticeFunction, g: LatticeFunction, window) -> bool:
    """Check sum f [dg] = -sum [df] g and the dbar analogue exactly.

    One of ``f`` (medial) and ``g`` (diamond) must vanish outside the norm1 ball
    of radius ``window``; the sums then run over the ball of radius window + 1/2,
    which contains every nonzero term.
    """
    reach = Fraction(window) + Fraction(1, 2)
    medial_sites: List[Site] = list(sites_in_ball(reach, MEDIAL))
    diamond_sites: List[Site] = list(sites_in_ball(reach, DIAMOND))
    for op in (dee, dbar):
        lhs = ZERO
        for z in medial_sites:
            fz = f(z)
            if fz:
                lhs = lhs + fz * op(g, z)
        rhs = ZERO
        for z in diamond_sites:
            gz = g(z)
            if gz:
                rhs = rhs + op(f, z) * gz
        if lhs != -rhs:
            logger.debug(f"Transpose identity failed for {op.__name__}: {lhs} != {-rhs}")
            return False
    return True
