"""Shared exact caches for the test session."""

import pytest

from lattice_virasoro.core.correlator import GaussianCorrelator
from lattice_virasoro.core.kernel import KernelFunctions, PotentialKernelTable
from lattice_virasoro.core.modes import ModeEvaluator
from lattice_virasoro.core.monomials import MonomialFamily


@pytest.fixture(scope='session')
def kernels():
    return KernelFunctions(PotentialKernelTable(12))


@pytest.fixture(scope='session')
def monomials(kernels):
    return MonomialFamily(kernels)


@pytest.fixture(scope='session')
def correlator(kernels):
    return GaussianCorrelator(kernels)


@pytest.fixture(scope='session')
def evaluator(correlator, monomials):
    return ModeEvaluator(correlator, monomials)
