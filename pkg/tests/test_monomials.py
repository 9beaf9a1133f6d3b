import random
from fractions import Fraction

import pytest

from lattice_virasoro.core.errors import SiteClassError, SublatticeError
from lattice_virasoro.core.lattice import FUNCTION_CLASSES, Site, SiteClass, sites_in_ball
from lattice_virasoro.core.monomials import (
    MonomialFamily, edges_from_nodes, monomial, path_integral_monomial, random_loop, random_staircase,
)
from lattice_virasoro.core.scalar import I, ONE, PI, ZERO, gaussian
from lattice_virasoro.core.suites import monomial_checks

HALF = Fraction(1, 2)


class ShiftedDualFamily(MonomialFamily):
    """z^[2] with a wrong constant on the dual sublattice."""

    def dual_constant(self, k):
        value = super().dual_constant(k)
        return value + ONE if k == 2 else value


def test_low_powers(monomials):
    for z in sites_in_ball(2):
        assert monomials(0, z) == ONE
        assert monomials(1, z) == z.value


@pytest.mark.parametrize('k, site, expected', [
    (2, Site.at(1, 0), ONE),
    (2, Site.at(HALF, HALF), gaussian(0, HALF)),
    (2, Site.at(HALF, 0), ZERO),
    (-1, Site.at(HALF, 0), PI),
    (-1, Site.at(0, HALF), -I * PI),
])
def test_known_values(monomials, k, site, expected):
    assert monomial(k, site, monomials) == expected


def test_vanishing_near_origin(monomials):
    for k in range(1, 6):
        for z in sites_in_ball(Fraction(k - 1, 2)):
            assert monomials(k, z) == ZERO, (k, z)


def test_normalizing_sums(monomials):
    for k in range(2, 6):
        assert all(value == ZERO for value in monomials.vanishing_sums(k).values())


@pytest.mark.parametrize('k', range(-3, 5))
def test_monomial_axioms(monomials, k):
    residuals = monomial_checks(monomials, k, 3)
    assert residuals
    for name, residual in residuals.items():
        assert residual == ZERO, name


def test_wrong_dual_constant_is_caught(kernels):
    family = ShiftedDualFamily(kernels)
    residuals = monomial_checks(family, 2, 2)
    assert residuals['normalizing sums vanish'] != ZERO
    assert residuals['((1+i)/2)^[2] = i/2'] == ONE


def test_single_edge_integral(monomials):
    edge = [(Site.at(0, 0), Site.at(1, 0))]
    assert path_integral_monomial(2, edge, monomials) == ONE
    assert path_integral_monomial(2, [], monomials) == ZERO


@pytest.mark.parametrize('start', [Site.at(0, 0), Site.at(HALF, HALF), Site.at(HALF, 0), Site.at(-1, 2)])
def test_closed_loops_integrate_to_zero(monomials, start):
    rng = random.Random(start.qx * 31 + start.qy)
    for k in range(1, 5):
        for _ in range(3):
            assert monomials.path_integral(k, random_loop(start, rng, 6)) == ZERO


def test_path_independence(monomials):
    rng = random.Random(7)
    pairs = [
        (Site.at(-2, 1), Site.at(2, -1)),
        (Site.at(Fraction(-3, 2), HALF), Site.at(Fraction(3, 2), Fraction(5, 2))),
        (Site.at(HALF, -2), Site.at(Fraction(-5, 2), 1)),
    ]
    for k in (2, 3):
        for start, end in pairs:
            expected = monomials(k, end) - monomials(k, start)
            for _ in range(3):
                assert monomials.path_integral(k, random_staircase(start, end, rng)) == expected


def test_paths_must_stay_on_one_sublattice(monomials):
    with pytest.raises(SublatticeError):
        monomials.path_integral(2, [(Site(0, 0), Site(4, 0)), (Site(4, 0), Site(6, 2))])
    with pytest.raises(SublatticeError):
        monomials.path_integral(2, [(Site(0, 0), Site(8, 0))])
    with pytest.raises(SublatticeError):
        random_staircase(Site(0, 0), Site(2, 2), random.Random(0))


def test_monomials_need_function_sites(monomials):
    with pytest.raises(SiteClassError):
        monomial(1, Site(1, 1), monomials)


def test_table_covers_the_window(monomials):
    rows = monomials.table(2, 2)
    assert [site for site, _ in rows] == list(sites_in_ball(2, FUNCTION_CLASSES))
    assert dict(rows)[Site.at(1, 0)] == ONE


def test_edges_from_nodes():
    nodes = [Site(0, 0), Site(4, 0), Site(4, 4)]
    assert edges_from_nodes(nodes) == [(Site(0, 0), Site(4, 0)), (Site(4, 0), Site(4, 4))]


def test_staircase_endpoints():
    start, end = Site.at(1, -2), Site.at(-2, 3)
    edges = random_staircase(start, end, random.Random(3))
    assert edges[0][0] == start
    assert edges[-1][1] == end
    assert len(edges) == 8
    assert all(site.site_class is SiteClass.VERTEX for edge in edges for site in edge)
