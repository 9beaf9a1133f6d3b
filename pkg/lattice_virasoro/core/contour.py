"""Discrete contours on the contour-node grid and the discrete contour integral.

A contour is a closed, simple, counterclockwise polygon whose nodes have odd
quarter-unit coordinates and whose edges have length 1/2. Every edge is
flanked, at distance 1/4 on either side, by one medial site and one diamond
site; the product integral pairs a medial function with a diamond function
across each edge.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import ContourError, ContourTooSmallError
from .lattice import DIAMOND, MEDIAL, Site, SiteClass, dbar, sites_in_ball
from .monomials import MonomialFamily, default_monomials
from .scalar import I, PI, ZERO, PiScalar

logger = logging.getLogger(__name__)

SiteFunction = Callable[[Site], PiScalar]


class ContourEdge(NamedTuple):
    start: Site
    end: Site
    medial: Site
    diamond: Site

    @property
    def direction(self) -> PiScalar:
        """end - start as an exact complex number (+-1/2 or +-i/2)."""
        return (self.end - self.start).value


def _flanks(u: Site, v: Site) -> Tuple[Site, Site]:
    mx, my = (u.qx + v.qx) // 2, (u.qy + v.qy) // 2
    if u.qy == v.qy:
        left, right = Site(mx, my + 1), Site(mx, my - 1)
    else:
        left, right = Site(mx + 1, my), Site(mx - 1, my)
    if left.is_in(MEDIAL):
        return left, right
    return right, left


@dataclass(frozen=True)
class Contour:
    """A validated discrete contour; build it with ``from_nodes``.

    Attributes:
        nodes: Polygon nodes in counterclockwise order, without repeating the first
    """

    nodes: Tuple[Site, ...]

    @classmethod
    def from_nodes(cls, nodes: Iterable[Site]) -> 'Contour':
        """Validate and build a contour.

        Raises:
            ContourError: If the polygon is too short, leaves the node grid,
                has a non half-unit edge, self-intersects or runs clockwise
        """
        nodes = tuple(nodes)
        if len(nodes) < 4:
            raise ContourError(f"A contour needs at least 4 nodes, got {len(nodes)}")
        for node in nodes:
            if not node.is_in({SiteClass.CONTOUR_NODE}):
                raise ContourError(f"{node} is not a contour node")
        if len(set(nodes)) != len(nodes):
            raise ContourError("Contour is not simple: a node repeats")
        for u, v in zip(nodes, nodes[1:] + nodes[:1]):
            if sorted((abs(v.qx - u.qx), abs(v.qy - u.qy))) != [0, 2]:
                raise ContourError(f"Edge {u} -> {v} is not a half-unit step")
        if _signed_area(nodes) <= 0:
            raise ContourError("Contour must be positively oriented")
        return cls(nodes)

    def reversed(self) -> 'Contour':
        """The same polygon traversed clockwise.

        The result is not a valid contour on its own; it is used to check that
        reversing orientation negates the product integral.
        """
        return Contour(tuple(reversed(self.nodes)))

    @cached_property
    def edges(self) -> Tuple[ContourEdge, ...]:
        result = []
        for u, v in zip(self.nodes, self.nodes[1:] + self.nodes[:1]):
            medial, diamond = _flanks(u, v)
            result.append(ContourEdge(u, v, medial, diamond))
        return tuple(result)

    def winding_number(self, z: Site) -> int:
        """Winding number around a site that is not a contour node."""
        winding = 0
        for u, v in zip(self.nodes, self.nodes[1:] + self.nodes[:1]):
            if u.qx != v.qx or u.qx <= z.qx:
                continue
            if min(u.qy, v.qy) < z.qy < max(u.qy, v.qy):
                winding += 1 if v.qy > u.qy else -1
        return winding

    @cached_property
    def _bounding_box(self) -> Tuple[int, int, int, int]:
        xs = [n.qx for n in self.nodes]
        ys = [n.qy for n in self.nodes]
        return min(xs), max(xs), min(ys), max(ys)

    def _interior(self, classes: FrozenSet[SiteClass]) -> FrozenSet[Site]:
        x0, x1, y0, y1 = self._bounding_box
        inside = set()
        for qx in range(x0 + 1, x1, 2):
            for qy in range(y0 + 1, y1, 2):
                z = Site(qx, qy)
                if z.is_in(classes) and self.winding_number(z) != 0:
                    inside.add(z)
        return frozenset(inside)

    @cached_property
    def interior_medial(self) -> FrozenSet[Site]:
        return self._interior(MEDIAL)

    @cached_property
    def interior_diamond(self) -> FrozenSet[Site]:
        return self._interior(DIAMOND)

    @cached_property
    def closure_medial(self) -> FrozenSet[Site]:
        """Interior medial sites plus the medial flanks of every edge."""
        return self.interior_medial | {edge.medial for edge in self.edges}

    @cached_property
    def closure_diamond(self) -> FrozenSet[Site]:
        return self.interior_diamond | {edge.diamond for edge in self.edges}

    def encloses_ball(self, radius) -> bool:
        """True if every medial and diamond site with norm1 <= radius is inside."""
        for z in sites_in_ball(radius, MEDIAL):
            if z not in self.interior_medial:
                return False
        for z in sites_in_ball(radius, DIAMOND):
            if z not in self.interior_diamond:
                return False
        return True

    def encloses(self, other: 'Contour') -> bool:
        """True if ``other``'s closure lies strictly inside this contour."""
        return (other.closure_medial <= self.interior_medial
                and other.closure_diamond <= self.interior_diamond)

    def __len__(self) -> int:
        return len(self.nodes)


def _signed_area(nodes: Sequence[Site]) -> int:
    total = 0
    for u, v in zip(nodes, tuple(nodes[1:]) + tuple(nodes[:1])):
        total += u.qx * v.qy - v.qx * u.qy
    return total


def rectangle_contour(r: int) -> Contour:
    """Square contour with corners at +-(r + 3/4)(1 + i), 4r + 3 edges per side.

    It encloses the norm1 ball of radius r; its closure reaches out to r + 1.
    """
    if r < 0:
        raise ContourError(f"Rectangle radius must be nonnegative, got {r}")
    q = 4 * r + 3
    span = range(-q, q, 2)
    nodes: List[Site] = []
    nodes.extend(Site(x, -q) for x in span)
    nodes.extend(Site(q, y) for y in span)
    nodes.extend(Site(-x, q) for x in span)
    nodes.extend(Site(-q, -y) for y in span)
    return Contour(tuple(nodes))


def product_integral(f: SiteFunction, g: SiteFunction, contour: Contour) -> PiScalar:
    """sum over edges of (v - u) f(medial flank) g(diamond flank)."""
    total = ZERO
    for edge in contour.edges:
        fz = f(edge.medial)
        if not fz:
            continue
        gz = g(edge.diamond)
        if gz:
            total = total + edge.direction * fz * gz
    return total


def stokes_sum(f: SiteFunction, g: SiteFunction, contour: Contour) -> PiScalar:
    """i sum_{interior medial} f [dbar g] + i sum_{interior diamond} [dbar f] g."""
    total = ZERO
    for z in contour.interior_medial:
        fz = f(z)
        if fz:
            total = total + fz * dbar(g, z)
    for z in contour.interior_diamond:
        gz = g(z)
        if gz:
            total = total + dbar(f, z) * gz
    return I * total


def min_radius(m: int, n: int) -> int:
    """Smallest rectangle radius enclosing the ball where z^[m] and z^[n] fail to be holomorphic."""
    return max(0, math.ceil(Fraction(-m, 2)), math.ceil(Fraction(-n, 2)))


def residue_pairing(m: int, n: int, contour: Contour,
                    family: Optional[MonomialFamily] = None) -> PiScalar:
    """(1 / (2 pi i)) times the product integral of z^[m] (medial) and z^[n] (diamond).

    Raises:
        ContourTooSmallError: If the contour does not enclose the ball of
            radius max(0, -m/2, -n/2)
    """
    family = family or default_monomials()
    needed = max(Fraction(0), Fraction(-m, 2), Fraction(-n, 2))
    if not contour.encloses_ball(needed):
        raise ContourTooSmallError(f"Contour does not enclose the ball of radius {needed} for ({m}, {n})")
    integral = product_integral(family.function(m), family.function(n), contour)
    return integral / (PI.scale(2) * I)
