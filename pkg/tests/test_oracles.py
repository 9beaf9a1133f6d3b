import math

import pytest

from lattice_virasoro.core.errors import SiteClassError
from lattice_virasoro.core.lattice import Site
from lattice_virasoro.core.oracles import (
    asymptotic_error, asymptotic_potential, diamond_covariance, half_plane_green_oracle,
    massive_green_oracle, massive_green_values,
)
from lattice_virasoro.core.scalar import ZERO


def test_diamond_covariance(kernels):
    one, dual = Site.at(1, 0), Site(2, 2)
    assert diamond_covariance(one, one, kernels) == 2
    assert diamond_covariance(one, dual, kernels) == ZERO
    assert diamond_covariance(dual, Site(-2, 2), kernels) == -kernels.potential(Site.at(1, 0))
    with pytest.raises(SiteClassError):
        diamond_covariance(Site(2, 0), one, kernels)


def test_asymptotics_far_away(kernels):
    assert asymptotic_error(Site.at(12, 9), kernels) < 1e-3
    constant = (2 * 0.5772156649015329 + math.log(8)) / math.pi
    assert asymptotic_potential(Site.at(3, 4)) == pytest.approx(2 / math.pi * math.log(5) + constant, rel=1e-12)


def test_massive_oracle_small_box():
    values = massive_green_values([Site.at(0, 0), Site.at(1, 0)], mass=1e-2, box_radius=40)
    assert values[Site.at(0, 0)] == pytest.approx(0.0)
    assert 0.9 < values[Site.at(1, 0)] < 1.1


@pytest.mark.slow
@pytest.mark.parametrize('x, y', [(1, 0), (1, 1), (2, 0), (3, 3)])
def test_massive_oracle(kernels, x, y):
    site = Site.at(x, y)
    exact = kernels.potential(site).to_float(50).real
    assert massive_green_oracle(site) == pytest.approx(exact, abs=1e-4)


@pytest.mark.slow
def test_half_plane_oracle(kernels):
    z = w = Site.at(0, 1)
    a = kernels.potential
    exact = (a(z - w.conjugate()) - a(z - w)).to_float(50).real
    assert half_plane_green_oracle(z, w, 401, 200) == pytest.approx(exact, abs=1e-4)


@pytest.mark.slow
def test_log_asymptotics(kernels):
    assert asymptotic_error(Site.at(30, 40), kernels) < 1e-3
