"""Gaussian correlations of the discrete free field and its current.

The field phi lives on vertices (pinned at the origin in the full plane,
zero on the real axis in the half plane) and extends by zero to dual sites.
The current J = d phi and its conjugate Jbar = dbar phi live on medial sites.
Every correlation of a product of insertions is the sum over pair partitions
of products of two-point covariances.
"""

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import GeometryMismatchError, SiteClassError
from .kernel import KernelFunctions, default_kernels
from .lattice import DBAR_WEIGHTS, DEE_WEIGHTS, DIAMOND, MEDIAL, ORIGIN, Site, SiteClass
from .scalar import ONE, ZERO, PiScalar

logger = logging.getLogger(__name__)


class Geometry(enum.Enum):
    FULL_PLANE = 'full'
    HALF_PLANE = 'half'


class Sector(enum.Enum):
    ANALYTIC = 'analytic'
    ANTIANALYTIC = 'antianalytic'

    @property
    def opposite(self) -> 'Sector':
        return Sector.ANTIANALYTIC if self is Sector.ANALYTIC else Sector.ANALYTIC


@dataclass(frozen=True)
class FieldPoint:
    """An insertion phi(x) at a vertex or dual site."""

    site: Site

    def __post_init__(self):
        if not self.site.is_in(DIAMOND):
            raise SiteClassError(f"Field insertions live on vertices or dual sites, got {self.site}")

    @property
    def is_trivial(self) -> bool:
        """phi vanishes identically at dual sites."""
        return self.site.site_class is SiteClass.DUAL


@dataclass(frozen=True)
class CurrentPoint:
    """An insertion J(z) or Jbar(z) at a medial site."""

    site: Site
    sector: Sector = Sector.ANALYTIC
    geometry: Geometry = Geometry.FULL_PLANE

    def __post_init__(self):
        if not self.site.is_in(MEDIAL):
            raise SiteClassError(f"Current insertions live on medial sites, got {self.site}")


Insertion = Union[FieldPoint, CurrentPoint]


@dataclass(frozen=True)
class InsertionList:
    """Current insertions followed by field insertions, all in one geometry."""

    currents: Tuple[CurrentPoint, ...] = ()
    fields: Tuple[FieldPoint, ...] = ()
    geometry: Geometry = Geometry.FULL_PLANE

    def __post_init__(self):
        object.__setattr__(self, 'currents', tuple(self.currents))
        object.__setattr__(self, 'fields', tuple(self.fields))
        for current in self.currents:
            if current.geometry is not self.geometry:
                raise GeometryMismatchError(f"Current at {current.site} is not in the {self.geometry.value} geometry")
        if self.geometry is Geometry.HALF_PLANE:
            for point in self.points:
                if point.site.qy <= 0:
                    raise GeometryMismatchError(f"{point.site} is not in the open upper half plane")

    @classmethod
    def of_fields(cls, *sites: Site, geometry: Geometry = Geometry.FULL_PLANE) -> 'InsertionList':
        return cls(fields=tuple(FieldPoint(site) for site in sites), geometry=geometry)

    @property
    def points(self) -> Tuple[Insertion, ...]:
        return self.currents + self.fields

    def __len__(self) -> int:
        return len(self.currents) + len(self.fields)

    @property
    def max_field_norm(self) -> Fraction:
        return max((f.site.norm1 for f in self.fields), default=Fraction(0))

    @property
    def max_current_norm(self) -> Optional[Fraction]:
        return max((c.site.norm1 for c in self.currents), default=None)

    def describe(self) -> str:
        parts = [f"{'J' if c.sector is Sector.ANALYTIC else 'Jbar'}{c.site}" for c in self.currents]
        parts += [f"phi{f.site}" for f in self.fields]
        return ' '.join(parts) if parts else '1'


def insertion_functional(point: Insertion) -> Dict[Site, PiScalar]:
    """The insertion as a linear combination of diamond field values."""
    if isinstance(point, FieldPoint):
        return {} if point.is_trivial else {point.site: ONE}
    weights = DEE_WEIGHTS if point.sector is Sector.ANALYTIC else DBAR_WEIGHTS
    return {point.site.shifted(dqx, dqy): w for (dqx, dqy), w in weights}


def pair_partitions(items: Sequence) -> Iterator[List[Tuple]]:
    """All perfect matchings of ``items``, pairing the first item recursively."""
    if not items:
        yield []
        return
    if len(items) % 2:
        return
    first, rest = items[0], items[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for matching in pair_partitions(remaining):
            yield [(first, partner)] + matching


class GaussianCorrelator:
    """Two-point covariances and Wick products for one set of kernel functions."""

    def __init__(self, kernels: Optional[KernelFunctions] = None):
        self.kernels = kernels or default_kernels()

    # -- kernel derivatives at diamond offsets -----------------------------

    def _second_derivative(self, first: Sector, second: Sector, u: Site) -> PiScalar:
        """[D1 D2 a](u) for D = d (analytic) or dbar (antianalytic), u a diamond site."""
        if first is not second:
            return ONE if u == ORIGIN else ZERO
        value = self.kernels.dee_cauchy(u)
        return value if first is Sector.ANALYTIC else value.conjugate()

    def _first_derivative(self, sector: Sector, z: Site) -> PiScalar:
        """[D a](z) at a medial site: K(z) or conj(K(z))."""
        if sector is Sector.ANALYTIC:
            return self.kernels.cauchy(z)
        return self.kernels.cauchy_bar(z)

    # -- covariances -------------------------------------------------------

    def cov_phi(self, x: FieldPoint, y: FieldPoint,
                geometry: Geometry = Geometry.FULL_PLANE) -> PiScalar:
        """<phi(x) phi(y)>: a(x) + a(y) - a(x - y), or a(x - conj y) - a(x - y) in the half plane.

        Half-plane points may sit on the real axis, where the covariance vanishes.
        """
        if x.is_trivial or y.is_trivial:
            return ZERO
        a = self.kernels.potential
        if geometry is Geometry.HALF_PLANE:
            _check_upper(x.site, y.site, boundary=True)
            return a(x.site - y.site.conjugate()) - a(x.site - y.site)
        return a(x.site) + a(y.site) - a(x.site - y.site)

    def cov_J_phi(self, z: CurrentPoint, x: FieldPoint) -> PiScalar:
        """<D J(z) phi(x)>; in the half plane [D a](z - conj x) - [D a](z - x)."""
        if x.is_trivial:
            return ZERO
        if z.geometry is Geometry.HALF_PLANE:
            _check_upper(x.site)
            return (self._first_derivative(z.sector, z.site - x.site.conjugate())
                    - self._first_derivative(z.sector, z.site - x.site))
        return self._first_derivative(z.sector, z.site) - self._first_derivative(z.sector, z.site - x.site)

    def cov_J_J(self, z: CurrentPoint, w: CurrentPoint) -> PiScalar:
        """<D1 J(z) D2 J(w)> = [D1 D2 a](w - z), minus the reflected term in the half plane."""
        if z.geometry is not w.geometry:
            raise GeometryMismatchError(f"Currents at {z.site} and {w.site} use different geometries")
        value = self._second_derivative(z.sector, w.sector, w.site - z.site)
        if z.geometry is Geometry.HALF_PLANE:
            value = value - self._second_derivative(z.sector, w.sector.opposite, z.site - w.site.conjugate())
        return value

    def covariance(self, first: Insertion, second: Insertion,
                   geometry: Geometry = Geometry.FULL_PLANE) -> PiScalar:
        """Covariance of any two insertions."""
        if isinstance(first, CurrentPoint):
            if isinstance(second, CurrentPoint):
                return self.cov_J_J(first, second)
            _check_geometry(first, geometry)
            return self.cov_J_phi(first, second)
        if isinstance(second, CurrentPoint):
            _check_geometry(second, geometry)
            return self.cov_J_phi(second, first)
        return self.cov_phi(first, second, geometry)

    def wick_correlator(self, insertions: InsertionList) -> PiScalar:
        """Sum over pair partitions of products of covariances; 0 for an odd count."""
        return self.wick(insertions.points, insertions.geometry)

    def wick(self, points: Sequence[Insertion], geometry: Geometry = Geometry.FULL_PLANE,
             pair: Optional[Callable[[int, int], PiScalar]] = None) -> PiScalar:
        """Wick sum over ``points``; ``pair(i, j)`` for i < j overrides the two-point values."""
        n = len(points)
        if n % 2:
            return ZERO
        if n == 0:
            return ONE
        pair_values: Dict[Tuple[int, int], PiScalar] = {}
        for i in range(n):
            for j in range(i + 1, n):
                pair_values[(i, j)] = (pair(i, j) if pair is not None
                                       else self.covariance(points[i], points[j], geometry))
        total = ZERO
        for matching in pair_partitions(list(range(n))):
            product = ONE
            for i, j in matching:
                c = pair_values[(i, j)]
                if not c:
                    product = ZERO
                    break
                product = product * c
            if product:
                total = total + product
        return total


def _check_upper(*sites: Site, boundary: bool = False) -> None:
    for site in sites:
        if site.qy < 0 or (site.qy == 0 and not boundary):
            raise GeometryMismatchError(f"{site} is not in the open upper half plane")


def _check_geometry(current: CurrentPoint, geometry: Geometry) -> None:
    if current.geometry is not geometry:
        raise GeometryMismatchError(f"Current at {current.site} is not in the {geometry.value} geometry")


def double_factorial(n: int) -> int:
    """(2k-1)!! for n = 2k, the number of pair partitions of n items."""
    result = 1
    for odd in range(n - 1, 0, -2):
        result *= odd
    return result


_default: Optional[GaussianCorrelator] = None


def default_correlator() -> GaussianCorrelator:
    global _default
    if _default is None or _default.kernels is not default_kernels():
        _default = GaussianCorrelator()
    return _default


def cov_phi(x: FieldPoint, y: FieldPoint, geometry: Geometry = Geometry.FULL_PLANE) -> PiScalar:
    return default_correlator().cov_phi(x, y, geometry)


def cov_J_phi(z: CurrentPoint, x: FieldPoint) -> PiScalar:
    return default_correlator().cov_J_phi(z, x)


def cov_J_J(z: CurrentPoint, w: CurrentPoint) -> PiScalar:
    return default_correlator().cov_J_J(z, w)


def wick_correlator(insertions: InsertionList) -> PiScalar:
    """<product of the insertions> for the default kernel table."""
    return default_correlator().wick_correlator(insertions)
