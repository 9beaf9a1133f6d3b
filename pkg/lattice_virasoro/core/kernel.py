"""Exact potential kernel of simple random walk on Z^2 and the discrete Cauchy kernel.

Values of the potential kernel lie in Q + Q/pi. They are generated column by
column inside the octant 0 <= y <= x from the seeds a(0,0) = 0, a(1,0) = 1,
the diagonal a(n,n) = (4/pi) * sum_{j<=n} 1/(2j-1) and the harmonicity of a
away from the origin.
"""

import logging
import threading
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import SiteClassError
from .lattice import (
    DIAMOND, MEDIAL, ORIGIN, LatticeFunction, Site, SiteClass,
    dbar, dee, dee_function, dbar_function, laplacian, sites_in_ball,
)
from .scalar import ONE, ZERO, PiScalar

logger = logging.getLogger(__name__)

# (rational part p, coefficient q of 1/pi)
KernelValue = Tuple[Fraction, Fraction]

CACHE_VERSION = 'v1'


def _combine(*pairs: Tuple[int, KernelValue]) -> KernelValue:
    p = Fraction(0)
    q = Fraction(0)
    for coeff, (vp, vq) in pairs:
        p += coeff * vp
        q += coeff * vq
    return p, q


def _diagonal(n: int) -> KernelValue:
    return Fraction(0), 4 * sum((Fraction(1, 2 * j - 1) for j in range(1, n + 1)), Fraction(0))


class PotentialKernelTable:
    """Octant table of the potential kernel, extended on demand.

    ``radius`` is the largest column x for which every (x, y), 0 <= y <= x, is
    stored; by dihedral symmetry every vertex with norm1 <= radius is then
    available. Extension is serialized by a lock, and a column becomes visible
    to readers only once it is complete.
    """

    def __init__(self, radius: int = 1):
        self._lock = threading.RLock()
        self._values: Dict[Tuple[int, int], KernelValue] = {
            (0, 0): (Fraction(0), Fraction(0)),
            (1, 0): (Fraction(1), Fraction(0)),
            (1, 1): _diagonal(1),
        }
        self._radius = 1
        self._scalars: Dict[Tuple[int, int], PiScalar] = {}
        if radius > 1:
            self.extend(radius)

    @classmethod
    def from_values(cls, radius: int, values: Dict[Tuple[int, int], KernelValue]) -> 'PotentialKernelTable':
        """Rebuild a table from stored octant values (used by the cache loader)."""
        table = cls()
        expected = {(x, y) for x in range(radius + 1) for y in range(x + 1)}
        missing = expected - set(values)
        if missing:
            raise ValueError(f"Table values missing {len(missing)} octant entries")
        table._values = {key: values[key] for key in expected}
        table._radius = radius
        return table

    @property
    def radius(self) -> int:
        return self._radius

    def __len__(self) -> int:
        return len(self._values)

    def extend(self, radius: int) -> None:
        """Make every octant column up to ``radius`` available."""
        if radius <= self._radius:
            return
        with self._lock:
            start = self._radius
            while self._radius < radius:
                self._add_column()
            logger.debug(f"Potential kernel table extended from radius {start} to {self._radius}")

    def _add_column(self) -> None:
        x = self._radius
        a = self._values
        column: Dict[Tuple[int, int], KernelValue] = {}
        for y in range(x):
            below = a[(x, abs(y - 1))]
            column[(x + 1, y)] = _combine(
                (4, a[(x, y)]), (-1, a[(x - 1, y)]), (-1, a[(x, y + 1)]), (-1, below)
            )
        column[(x + 1, x)] = _combine((2, a[(x, x)]), (-1, a[(x, x - 1)]))
        column[(x + 1, x + 1)] = _diagonal(x + 1)
        a.update(column)
        self._radius = x + 1

    def value(self, x: int, y: int) -> KernelValue:
        """Exact a(x, y) as (p, q) meaning p + q/pi."""
        ax, ay = abs(x), abs(y)
        if ay > ax:
            ax, ay = ay, ax
        if ax > self._radius:
            self.extend(ax)
        return self._values[(ax, ay)]

    def scalar(self, x: int, y: int) -> PiScalar:
        ax, ay = abs(x), abs(y)
        if ay > ax:
            ax, ay = ay, ax
        key = (ax, ay)
        cached = self._scalars.get(key)
        if cached is None:
            p, q = self.value(ax, ay)
            cached = self._scalars.setdefault(key, PiScalar({0: p, -2: q}))
        return cached

    def octant_items(self) -> Iterator[Tuple[int, int, Fraction, Fraction]]:
        """Stored entries ordered by column then row."""
        for x in range(self._radius + 1):
            for y in range(x + 1):
                p, q = self._values[(x, y)]
                yield x, y, p, q

    def pi_support(self) -> set:
        support = set()
        for _, _, p, q in self.octant_items():
            if p:
                support.add(0)
            if q:
                support.add(-2)
        return support

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PotentialKernelTable):
            return NotImplemented
        return self._radius == other._radius and self._values == other._values


class KernelFunctions:
    """The potential kernel and its derivatives as memoized lattice functions.

    Attributes:
        potential: a on vertices
        potential_diamond: a on vertices, 0 on dual sites
        cauchy: K = [d a] on medial sites
        cauchy_bar: [dbar a] = conj(K) on medial sites
        dee_cauchy: [d K] on diamond sites
        dbar_cauchy: [dbar K] on diamond sites (the delta function at 0)
    """

    def __init__(self, table: Optional[PotentialKernelTable] = None):
        self.table = table if table is not None else PotentialKernelTable()
        self.potential = LatticeFunction({SiteClass.VERTEX}, self._potential, name='a')
        self.potential_diamond = LatticeFunction(DIAMOND, self._potential_diamond, name='a_diamond')
        self.cauchy = LatticeFunction(MEDIAL, lambda z: dee(self.potential_diamond, z), name='K')
        self.cauchy_bar = LatticeFunction(MEDIAL, lambda z: self.cauchy(z).conjugate(), name='Kbar')
        self.dee_cauchy = dee_function(self.cauchy)
        self.dbar_cauchy = dbar_function(self.cauchy)

    def _potential(self, z: Site) -> PiScalar:
        return self.table.scalar(z.qx // 4, z.qy // 4)

    def _potential_diamond(self, z: Site) -> PiScalar:
        if z.site_class is SiteClass.DUAL:
            return ZERO
        return self._potential(z)

    def laplacian_failures(self, radius: int) -> List[Site]:
        """Vertices with norm1 < radius where [Laplacian a] differs from delta_0."""
        failures = []
        for z in sites_in_ball(max(radius - 1, 0), {SiteClass.VERTEX}):
            expected = ONE if z == ORIGIN else ZERO
            if laplacian(self.potential, z) != expected:
                failures.append(z)
        return failures

    def cauchy_failures(self, radius: int) -> List[Site]:
        """Diamond sites with norm1 <= radius where [dbar K] differs from delta_0."""
        failures = []
        for z in sites_in_ball(radius, DIAMOND):
            expected = ONE if z == ORIGIN else ZERO
            if dbar(self.cauchy, z) != expected:
                failures.append(z)
        return failures


_default_lock = threading.Lock()
_default_kernels: Optional[KernelFunctions] = None


def default_kernels() -> KernelFunctions:
    """Process-wide kernel functions sharing a single table."""
    global _default_kernels
    with _default_lock:
        if _default_kernels is None:
            _default_kernels = KernelFunctions()
        return _default_kernels


def set_default_table(table: PotentialKernelTable) -> KernelFunctions:
    """Install ``table`` (e.g. loaded from the cache) as the shared table."""
    global _default_kernels
    with _default_lock:
        _default_kernels = KernelFunctions(table)
        return _default_kernels


def potential_kernel(z: Site, kernels: Optional[KernelFunctions] = None) -> PiScalar:
    """Exact a(z) for a vertex z."""
    if not z.is_in({SiteClass.VERTEX}):
        raise SiteClassError(f"Potential kernel needs a vertex, got {z}")
    return (kernels or default_kernels()).potential(z)


def potential_kernel_diamond(z: Site, kernels: Optional[KernelFunctions] = None) -> PiScalar:
    """a(z) on vertices and 0 on dual sites."""
    if not z.is_in(DIAMOND):
        raise SiteClassError(f"Diamond potential kernel needs a vertex or dual site, got {z}")
    return (kernels or default_kernels()).potential_diamond(z)


def cauchy_kernel(z: Site, kernels: Optional[KernelFunctions] = None) -> PiScalar:
    """K(z) = [d a](z) for a medial site z."""
    if not z.is_in(MEDIAL):
        raise SiteClassError(f"Cauchy kernel needs a medial site, got {z}")
    return (kernels or default_kernels()).cauchy(z)
