import itertools
from fractions import Fraction

import pytest

from lattice_virasoro.core.correlator import (
    CurrentPoint, FieldPoint, Geometry, InsertionList, Sector, double_factorial, pair_partitions,
)
from lattice_virasoro.core.errors import GeometryMismatchError, SiteClassError
from lattice_virasoro.core.lattice import MEDIAL, Site, SiteClass, sites_in_ball
from lattice_virasoro.core.oracles import brute_force_covariance
from lattice_virasoro.core.scalar import ONE, ZERO, PiScalar

HALF = Fraction(1, 2)
FULL, HALF_PLANE = Geometry.FULL_PLANE, Geometry.HALF_PLANE


def phi(x, y):
    return FieldPoint(Site.at(x, y))


def J(x, y, sector=Sector.ANALYTIC, geometry=FULL):
    return CurrentPoint(Site.at(x, y), sector, geometry)


def test_field_covariance(correlator):
    assert correlator.cov_phi(phi(0, 0), phi(0, 0)) == ZERO
    assert correlator.cov_phi(phi(1, 0), phi(1, 0)) == PiScalar({0: 2})
    assert correlator.cov_phi(phi(1, 0), phi(0, 1)) == PiScalar({0: 2, -2: -4})
    assert correlator.cov_phi(phi(HALF, HALF), phi(1, 0)) == ZERO


def test_field_covariance_is_symmetric(correlator):
    points = [FieldPoint(z) for z in sites_in_ball(2, {SiteClass.VERTEX})]
    for x, y in itertools.combinations(points, 2):
        assert correlator.cov_phi(x, y) == correlator.cov_phi(y, x)


def test_current_field_covariance(correlator, kernels):
    z = J(HALF, 0)
    assert correlator.cov_J_phi(z, phi(0, 0)) == ZERO
    assert correlator.cov_J_phi(z, phi(1, 0)) == kernels.cauchy(Site.at(HALF, 0)) - kernels.cauchy(Site.at(-HALF, 0))
    zbar = J(HALF, 0, Sector.ANTIANALYTIC)
    assert correlator.cov_J_phi(zbar, phi(1, 1)) == correlator.cov_J_phi(z, phi(1, 1)).conjugate()


def test_current_current_covariance(correlator, kernels):
    z, w = J(HALF, 0), J(Fraction(3, 2), 1)
    assert correlator.cov_J_J(z, w) == kernels.dee_cauchy(w.site - z.site)
    assert correlator.cov_J_J(z, w) == correlator.cov_J_J(w, z)
    assert correlator.cov_J_J(z, J(HALF, 0, Sector.ANTIANALYTIC)) == ONE
    assert correlator.cov_J_J(z, J(Fraction(3, 2), 0, Sector.ANTIANALYTIC)) == ZERO


def test_half_plane_reflection(correlator, kernels):
    z = J(0, HALF, geometry=HALF_PLANE)
    w = J(0, -HALF, geometry=HALF_PLANE)
    assert correlator.cov_J_J(z, w) == kernels.dee_cauchy(w.site - z.site) - ONE


def test_half_plane_field_covariance(correlator, kernels):
    x, y = phi(0, 1), phi(1, 2)
    a = kernels.potential
    expected = a(x.site - y.site.conjugate()) - a(x.site - y.site)
    assert correlator.cov_phi(x, y, HALF_PLANE) == expected
    assert correlator.cov_phi(x, phi(3, 0), HALF_PLANE) == ZERO
    with pytest.raises(GeometryMismatchError):
        correlator.cov_phi(x, phi(1, -1), HALF_PLANE)


@pytest.mark.parametrize('geometry', [FULL, HALF_PLANE])
def test_covariances_match_the_diamond_model(correlator, kernels, geometry):
    upper = geometry is HALF_PLANE
    fields = [FieldPoint(z) for z in sites_in_ball(Fraction(3, 2), {SiteClass.VERTEX, SiteClass.DUAL})
              if not upper or z.qy > 0]
    currents = [CurrentPoint(z, sector, geometry) for z in sites_in_ball(Fraction(3, 2), MEDIAL)
                for sector in Sector if not upper or z.qy > 0]
    points = fields + currents
    for first, second in itertools.combinations_with_replacement(points, 2):
        exact = correlator.covariance(first, second, geometry)
        assert exact == brute_force_covariance(first, second, kernels, upper), (first, second)


def test_wick(correlator):
    x = phi(1, 0)
    c = correlator.cov_phi(x, x)
    assert correlator.wick([]) == ONE
    assert correlator.wick([x, x, x]) == ZERO
    assert correlator.wick([x] * 4) == (c * c).scale(3)
    assert correlator.wick([x] * 6) == (c * c * c).scale(15)


def test_wick_pair_override(correlator):
    x = phi(1, 0)
    assert correlator.wick([x] * 4, pair=lambda i, j: ONE) == 3
    c = correlator.cov_phi(x, x)
    halved = correlator.wick([x] * 4, pair=lambda i, j: c.scale(Fraction(1, 2)) if i == 0 else c)
    assert halved == (c * c).scale(Fraction(3, 2))


def test_wick_is_symmetric(correlator):
    points = [phi(1, 0), phi(0, 1), J(HALF, 0), J(0, -HALF, Sector.ANTIANALYTIC)]
    value = correlator.wick(points)
    for perm in itertools.permutations(points):
        assert correlator.wick(list(perm)) == value


def test_wick_pairs(correlator):
    x, y = phi(1, 0), phi(1, 1)
    assert correlator.wick_correlator(InsertionList.of_fields(x.site, y.site)) == correlator.cov_phi(x, y)


def test_pair_partitions():
    assert double_factorial(6) == 15
    assert double_factorial(0) == 1
    assert len(list(pair_partitions(list(range(6))))) == 15
    assert list(pair_partitions([1, 2, 3])) == []
    assert list(pair_partitions([])) == [[]]


def test_insertion_validation():
    with pytest.raises(SiteClassError):
        FieldPoint(Site.at(HALF, 0))
    with pytest.raises(SiteClassError):
        CurrentPoint(Site.at(1, 0))
    with pytest.raises(GeometryMismatchError):
        InsertionList.of_fields(Site.at(1, 0), geometry=HALF_PLANE)
    with pytest.raises(GeometryMismatchError):
        InsertionList(currents=(J(HALF, 1),), geometry=HALF_PLANE)
    with pytest.raises(GeometryMismatchError):
        InsertionList(currents=(J(HALF, -1, geometry=HALF_PLANE),), geometry=HALF_PLANE)


def test_describe():
    ins = InsertionList(currents=(J(HALF, 0),), fields=(phi(1, 0),))
    assert ins.describe() == 'J(1/2, 0) phi(1, 0)'
    assert InsertionList().describe() == '1'
    assert ins.max_field_norm == 1
    assert ins.max_current_norm == HALF
