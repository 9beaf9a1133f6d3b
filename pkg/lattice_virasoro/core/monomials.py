"""Discrete monomials z^[k] on the diamond and medial lattices.

z^[0] = 1 and z^[1] = z. Negative powers come from the Cauchy kernel,
z^[-1] = 2 pi K on medial sites and (pi/2) sum_a K(z + a) on diamond sites,
followed by z^[k-1] = [d z^[k]] / k. Positive powers k >= 2 are discrete
primitives of k z^[k-1], integrated along an axis-first staircase from a
base point of each sublattice.
"""

import logging
import random
import threading
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import SiteClassError, SublatticeError
from .kernel import KernelFunctions, default_kernels
from .lattice import (
    FUNCTION_CLASSES, HALF_STEPS, MEDIAL, ORIGIN,
    LatticeFunction, Site, SiteClass, dee, sites_in_ball,
)
from .scalar import ONE, PI, ZERO, PiScalar

logger = logging.getLogger(__name__)

Edge = Tuple[Site, Site]

# base point of the staircase primitive per sublattice
_BASE_POINTS = {
    SiteClass.VERTEX: ORIGIN,
    SiteClass.MEDIAL_H: Site(2, 0),
    SiteClass.MEDIAL_V: Site(0, 2),
    SiteClass.DUAL: Site(2, 2),
}

_DUAL_CORNERS = (Site(2, 2), Site(-2, 2), Site(-2, -2), Site(2, -2))


def _direction(u: Site, v: Site) -> PiScalar:
    """v - u as an exact complex number; the pair must be lattice neighbors."""
    return (v - u).value


def _midpoint(u: Site, v: Site) -> Site:
    return Site((u.qx + v.qx) // 2, (u.qy + v.qy) // 2)


def _check_unit_edge(u: Site, v: Site) -> None:
    dqx, dqy = v.qx - u.qx, v.qy - u.qy
    if sorted((abs(dqx), abs(dqy))) != [0, 4]:
        raise SublatticeError(f"Edge {u} -> {v} is not a unit lattice step")


class MonomialFamily:
    """Memoized discrete monomials over one set of kernel functions."""

    def __init__(self, kernels: Optional[KernelFunctions] = None):
        self.kernels = kernels or default_kernels()
        self._functions: Dict[int, LatticeFunction] = {}
        self._relative: Dict[int, Dict[Site, PiScalar]] = {}
        self._dual_constants: Dict[int, PiScalar] = {}
        self._lock = threading.Lock()

    def function(self, k: int) -> LatticeFunction:
        """z^[k] as a lattice function on diamond and medial sites."""
        f = self._functions.get(k)
        if f is None:
            with self._lock:
                f = self._functions.get(k)
                if f is None:
                    f = LatticeFunction(FUNCTION_CLASSES, lambda z, k=k: self._compute(k, z), name=f"z^[{k}]")
                    self._functions[k] = f
        return f

    def __call__(self, k: int, z: Site) -> PiScalar:
        return self.function(k)(z)

    def _compute(self, k: int, z: Site) -> PiScalar:
        if k == 0:
            return ONE
        if k == 1:
            return z.value
        if k == -1:
            return self._inverse(z)
        if k < -1:
            return dee(self.function(k + 1), z).scale(Fraction(1, k + 1))
        return self._base_value(k, z.site_class) + self._relative_integral(k, z)

    def _inverse(self, z: Site) -> PiScalar:
        K = self.kernels.cauchy
        if z.is_in(MEDIAL):
            return PI * K(z).scale(2)
        total = ZERO
        for dqx, dqy in HALF_STEPS:
            total = total + K(z.shifted(dqx, dqy))
        return PI.scale(Fraction(1, 2)) * total

    def _base_value(self, k: int, site_class: SiteClass) -> PiScalar:
        if site_class is SiteClass.DUAL:
            return self.dual_constant(k)
        return ZERO

    def dual_constant(self, k: int) -> PiScalar:
        """Value of z^[k] at (1+i)/2, chosen so the four dual sums cancel."""
        if k < 2:
            return self(k, _BASE_POINTS[SiteClass.DUAL])
        constant = self._dual_constants.get(k)
        if constant is None:
            total = ZERO
            for corner in _DUAL_CORNERS:
                total = total + self._relative_integral(k, corner)
            constant = self._dual_constants.setdefault(k, -total.scale(Fraction(1, 4)))
        return constant

    @staticmethod
    def _staircase_predecessor(base: Site, z: Site) -> Site:
        """Previous node on the path from ``base``: horizontal leg first, then vertical."""
        if z.qy != base.qy:
            return Site(z.qx, z.qy - (4 if z.qy > base.qy else -4))
        return Site(z.qx - (4 if z.qx > base.qx else -4), z.qy)

    def _edge_integral(self, k: int, u: Site, v: Site) -> PiScalar:
        return _direction(u, v) * self(k - 1, _midpoint(u, v)).scale(k)

    def _relative_integral(self, k: int, z: Site) -> PiScalar:
        """Staircase integral of k z^[k-1] from the base point of z's sublattice."""
        base = _BASE_POINTS[z.site_class]
        memo = self._relative.setdefault(k, {})
        path: List[Site] = []
        current = z
        while current != base and current not in memo:
            path.append(current)
            current = self._staircase_predecessor(base, current)
        value = ZERO if current == base else memo[current]
        for site in reversed(path):
            value = value + self._edge_integral(k, self._staircase_predecessor(base, site), site)
            memo[site] = value
        return value

    def vanishing_sums(self, k: int) -> Dict[str, PiScalar]:
        """The four normalizing sums that must vanish for k >= 2."""
        return {
            'vertex': self(k, ORIGIN),
            'medial_h': self(k, Site(2, 0)) + self(k, Site(-2, 0)),
            'medial_v': self(k, Site(0, 2)) + self(k, Site(0, -2)),
            'dual': sum((self(k, corner) for corner in _DUAL_CORNERS), ZERO),
        }

    def path_integral(self, k: int, edges: Sequence[Edge]) -> PiScalar:
        """Sum of (v - u) * k * z^[k-1](midpoint) along oriented unit edges.

        All endpoints must lie on one sublattice (vertex, dual, horizontal
        medial or vertical medial).
        """
        if not edges:
            return ZERO
        site_class = edges[0][0].site_class
        total = ZERO
        for u, v in edges:
            for site in (u, v):
                if not site.is_in(FUNCTION_CLASSES) or site.site_class is not site_class:
                    raise SublatticeError(f"Path leaves the {site_class.value} sublattice at {site}")
            _check_unit_edge(u, v)
            total = total + self._edge_integral(k, u, v)
        return total

    def table(self, k: int, window) -> List[Tuple[Site, PiScalar]]:
        """(site, z^[k](site)) for every function site with norm1 <= window."""
        return [(z, self(k, z)) for z in sites_in_ball(window, FUNCTION_CLASSES)]


def edges_from_nodes(nodes: Sequence[Site]) -> List[Edge]:
    """Consecutive node pairs of an open path."""
    return list(zip(nodes[:-1], nodes[1:]))


def random_staircase(start: Site, end: Site, rng: random.Random) -> List[Edge]:
    """A monotone unit-step path from ``start`` to ``end`` in random step order."""
    if start.site_class is not end.site_class:
        raise SublatticeError(f"{start} and {end} lie on different sublattices")
    dx, dy = (end.qx - start.qx) // 4, (end.qy - start.qy) // 4
    steps = [(4 if dx > 0 else -4, 0)] * abs(dx) + [(0, 4 if dy > 0 else -4)] * abs(dy)
    rng.shuffle(steps)
    nodes = [start]
    for dqx, dqy in steps:
        nodes.append(nodes[-1].shifted(dqx, dqy))
    return edges_from_nodes(nodes)


def random_loop(start: Site, rng: random.Random, length: int = 8) -> List[Edge]:
    """A closed unit-step walk through ``start``."""
    nodes = [start]
    for _ in range(length):
        dqx, dqy = rng.choice(((4, 0), (-4, 0), (0, 4), (0, -4)))
        nodes.append(nodes[-1].shifted(dqx, dqy))
    return edges_from_nodes(nodes) + random_staircase(nodes[-1], start, rng)


_default_lock = threading.Lock()
_default_family: Optional[MonomialFamily] = None


def default_monomials() -> MonomialFamily:
    global _default_family
    with _default_lock:
        if _default_family is None:
            _default_family = MonomialFamily()
        return _default_family


def monomial(k: int, z: Site, family: Optional[MonomialFamily] = None) -> PiScalar:
    """Exact z^[k] at a diamond or medial site."""
    if not z.is_in(FUNCTION_CLASSES):
        raise SiteClassError(f"Monomials are defined on diamond and medial sites, got {z}")
    return (family or default_monomials())(k, z)


def path_integral_monomial(k: int, edges: Sequence[Edge],
                           family: Optional[MonomialFamily] = None) -> PiScalar:
    """Discrete line integral of k z^[k-1] along ``edges``."""
    return (family or default_monomials()).path_integral(k, edges)
