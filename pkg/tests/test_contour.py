import random

import pytest

from lattice_virasoro.core.contour import (
    Contour, min_radius, product_integral, rectangle_contour, residue_pairing, stokes_sum,
)
from lattice_virasoro.core.errors import ContourError, ContourTooSmallError
from lattice_virasoro.core.lattice import DIAMOND, MEDIAL, LatticeFunction, Site, sites_in_ball
from lattice_virasoro.core.scalar import I, ONE, PI, ZERO, GaussianRational, PiScalar


def _random_function(classes, radius, seed):
    rng = random.Random(seed)
    values = {z: PiScalar({0: GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4))})
              for z in sites_in_ball(radius, classes)}
    return LatticeFunction.from_mapping(classes, values)


@pytest.mark.parametrize('r', [0, 1, 3])
def test_rectangle_shape(r):
    contour = rectangle_contour(r)
    assert len(contour.edges) == 4 * (4 * r + 3)
    assert all(sorted((abs(e.end.qx - e.start.qx), abs(e.end.qy - e.start.qy))) == [0, 2]
               for e in contour.edges)
    assert Contour.from_nodes(contour.nodes) == contour
    assert contour.encloses_ball(r)
    assert not contour.encloses_ball(r + 1)


def test_edge_flanks():
    for edge in rectangle_contour(1).edges:
        assert edge.medial.is_in(MEDIAL)
        assert edge.diamond.is_in(DIAMOND)


def test_winding_numbers():
    contour = rectangle_contour(1)
    assert contour.winding_number(Site(0, 0)) == 1
    assert contour.winding_number(Site(4, 4)) == 1
    assert contour.winding_number(Site(12, 0)) == 0
    assert Site(0, 0) in contour.interior_diamond
    assert Site(8, 0) not in contour.interior_diamond


def test_nesting():
    assert rectangle_contour(2).encloses(rectangle_contour(1))
    assert not rectangle_contour(1).encloses(rectangle_contour(1))


@pytest.mark.parametrize('nodes', [
    [Site(1, 1), Site(-1, 1), Site(-1, -1)],
    [Site(1, 1), Site(1, -1), Site(-1, -1), Site(-1, 1)],
    [Site(1, 1), Site(-1, 1), Site(-1, -1), Site(2, -1)],
    [Site(1, 1), Site(-3, 1), Site(-3, -1), Site(1, -1)],
    [Site(1, 1), Site(-1, 1), Site(-1, -1), Site(1, -1), Site(1, 1)],
])
def test_invalid_contours(nodes):
    with pytest.raises(ContourError):
        Contour.from_nodes(nodes)


def test_smallest_contour():
    contour = Contour.from_nodes([Site(1, -1), Site(1, 1), Site(-1, 1), Site(-1, -1)])
    assert len(contour.edges) == 4
    assert contour.interior_diamond | contour.interior_medial == {Site(0, 0)}


def test_negative_radius():
    with pytest.raises(ContourError):
        rectangle_contour(-1)


def test_reversal_negates(monomials):
    contour = rectangle_contour(1)
    f, g = monomials.function(-1), monomials.function(2)
    assert product_integral(f, g, contour.reversed()) == -product_integral(f, g, contour)


def test_cauchy_integral(monomials):
    integral = product_integral(monomials.function(0), monomials.function(-1), rectangle_contour(1))
    assert integral == PI.scale(2) * I


@pytest.mark.parametrize('r', [0, 2])
def test_stokes(r):
    contour = rectangle_contour(r)
    f = _random_function(MEDIAL, r + 2, seed=r)
    g = _random_function(DIAMOND, r + 2, seed=r + 10)
    assert stokes_sum(f, g, contour) == product_integral(f, g, contour)
    one = LatticeFunction.constant(1, DIAMOND)
    assert stokes_sum(f, one, contour) == product_integral(f, one, contour)


@pytest.mark.parametrize('m, n, r, expected', [
    (0, -1, 1, ONE),
    (2, 1, 3, ZERO),
    (-3, 2, 2, ONE),
    (-2, -2, 3, ZERO),
    (-1, 0, 1, ONE),
    (1, -2, 1, ONE),
])
def test_residue_examples(monomials, m, n, r, expected):
    assert residue_pairing(m, n, rectangle_contour(r), monomials) == expected


def test_residue_grid(monomials):
    for m in range(-3, 4):
        for n in range(-3, 4):
            expected = ONE if m + n == -1 else ZERO
            r = min_radius(m, n)
            assert residue_pairing(m, n, rectangle_contour(r), monomials) == expected, (m, n, r)
            assert residue_pairing(m, n, rectangle_contour(r + 1), monomials) == expected, (m, n, r + 1)


def test_min_radius():
    assert min_radius(3, 4) == 0
    assert min_radius(-1, 0) == 1
    assert min_radius(-4, -1) == 2


def test_contour_too_small(monomials):
    with pytest.raises(ContourTooSmallError):
        residue_pairing(-4, 0, rectangle_contour(1), monomials)
