"""Independent numerical and brute-force checks for kernels and covariances.

None of these are used by the exact computations; they exist so that the
exact tables can be compared against quantities computed another way.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from mpmath import mp
from scipy import sparse
from scipy.sparse.linalg import spsolve

from .correlator import insertion_functional
from .errors import OracleError, SiteClassError
from .kernel import KernelFunctions, default_kernels
from .lattice import DIAMOND, Site, SiteClass
from .scalar import ZERO, PiScalar

logger = logging.getLogger(__name__)


def _adjacency(n: int) -> sparse.spmatrix:
    ones = np.ones(n)
    return sparse.spdiags([ones, ones], [-1, 1], n, n)


def _box_operator(nx: int, ny: int, mass_squared: float) -> sparse.csc_matrix:
    """(1 + m^2) I - (1/4) * adjacency on an nx-by-ny box, zero outside."""
    adjacency = sparse.kron(sparse.identity(ny), _adjacency(nx)) + sparse.kron(_adjacency(ny), sparse.identity(nx))
    return ((1.0 + mass_squared) * sparse.identity(nx * ny) - 0.25 * adjacency).tocsc()


def _solve(operator: sparse.csc_matrix, source_index: int) -> np.ndarray:
    rhs = np.zeros(operator.shape[0])
    rhs[source_index] = 1.0
    solution = spsolve(operator, rhs)
    if not np.all(np.isfinite(solution)):
        raise OracleError("Sparse solve produced non-finite values")
    return solution


def massive_green_values(sites: Iterable[Site], mass: float = 1e-3,
                         box_radius: int = 200) -> Dict[Site, float]:
    """Approximate a(z) by G_m(0) - G_m(z) for the walk killed at rate m^2.

    The massive Green function is computed once on the box [-R, R]^2 with
    zero boundary values and read off at every requested vertex.

    Args:
        sites: Vertices to evaluate at
        mass: Killing mass m
        box_radius: Half-width R of the box

    Returns:
        Dict: Approximation of the potential kernel per site
    """
    sites = list(sites)
    if mass <= 0:
        raise OracleError(f"Mass must be positive, got {mass}")
    for z in sites:
        if not z.is_in({SiteClass.VERTEX}):
            raise SiteClassError(f"Massive oracle needs a vertex, got {z}")
        if max(abs(z.qx), abs(z.qy)) // 4 >= box_radius:
            raise OracleError(f"{z} does not fit in a box of radius {box_radius}")

    n = 2 * box_radius + 1
    center = box_radius * n + box_radius
    logger.debug(f"Solving massive Green function on {n}x{n} box, mass {mass}")
    green = _solve(_box_operator(n, n, mass * mass), center)
    return {
        z: float(green[center] - green[(z.qy // 4 + box_radius) * n + (z.qx // 4 + box_radius)])
        for z in sites
    }


def massive_green_oracle(z: Site, mass: float = 1e-3, box_radius: int = 200) -> float:
    """Massive approximation of a at a single vertex."""
    return massive_green_values([z], mass, box_radius)[z]


def half_plane_green_oracle(z: Site, w: Site, width: int = 201, height: int = 100) -> float:
    """Dirichlet Green function of the upper half plane, approximated on a box.

    The box holds vertices with |x| <= width // 2 and 1 <= y <= height; all
    other vertices, the real axis included, carry zero boundary values.
    """
    for site in (z, w):
        if not site.is_in({SiteClass.VERTEX}):
            raise SiteClassError(f"Half-plane oracle needs vertices, got {site}")
        if site.qy <= 0:
            raise OracleError(f"{site} is not in the upper half plane")
    half = width // 2
    nx = 2 * half + 1

    def index(site: Site) -> int:
        x, y = site.qx // 4, site.qy // 4
        if abs(x) > half or y > height:
            raise OracleError(f"{site} does not fit in the {nx}x{height} box")
        return (y - 1) * nx + (x + half)

    green = _solve(_box_operator(nx, height, 0.0), index(w))
    return float(green[index(z)])


def asymptotic_potential(z: Site, pi_digits: int = 50) -> float:
    """Leading asymptotics (2/pi) log|z| + (2 gamma + log 8)/pi."""
    x, y = Fraction(z.qx, 4), Fraction(z.qy, 4)
    with mp.workdps(pi_digits):
        r = mp.hypot(mp.mpf(x.numerator) / x.denominator, mp.mpf(y.numerator) / y.denominator)
        return float(2 / mp.pi * mp.log(r) + (2 * mp.euler + mp.log(8)) / mp.pi)


def asymptotic_error(z: Site, kernels: Optional[KernelFunctions] = None, pi_digits: int = 100) -> float:
    """|a(z) - asymptotic(z)|, with a(z) evaluated at ``pi_digits`` digits."""
    kernels = kernels or default_kernels()
    exact = kernels.potential(z).to_float(pi_digits).real
    return abs(exact - asymptotic_potential(z, pi_digits))


def diamond_covariance(p: Site, q: Site, kernels: Optional[KernelFunctions] = None,
                       half_plane: bool = False) -> PiScalar:
    """Covariance of the diamond field, vertex copy pinned at 0, dual copy independent.

    Full plane: a(p) + a(q) - a(p - q) for two vertices, -a(p - q) for two
    dual sites (defined up to a constant that cancels in differences), 0 for
    a mixed pair. Half plane: a(p - conj q) - a(p - q) within one class.
    """
    kernels = kernels or default_kernels()
    if not (p.is_in(DIAMOND) and q.is_in(DIAMOND)):
        raise SiteClassError(f"Diamond covariance needs diamond sites, got {p}, {q}")
    if p.site_class is not q.site_class:
        return ZERO
    a = kernels.potential
    if half_plane:
        return a(p - q.conjugate()) - a(p - q)
    if p.site_class is SiteClass.VERTEX:
        return a(p) + a(q) - a(p - q)
    return -a(p - q)


def functional_covariance(u: Dict[Site, PiScalar], v: Dict[Site, PiScalar],
                          kernels: Optional[KernelFunctions] = None,
                          half_plane: bool = False) -> PiScalar:
    """Covariance of two finite linear combinations of diamond field values."""
    total = ZERO
    for p, wp in u.items():
        for q, wq in v.items():
            c = diamond_covariance(p, q, kernels, half_plane)
            if c:
                total = total + wp * wq * c
    return total


def brute_force_covariance(first, second, kernels: Optional[KernelFunctions] = None,
                           half_plane: bool = False) -> PiScalar:
    """Covariance of two field or current insertions from the diamond model.

    Each insertion is expanded into the diamond values it is built from:
    phi(x) is the value at x (zero at dual sites) and J(z) is
    sum_a conj(a) phi(z + a) (its conjugate sector uses a).
    """
    return functional_covariance(insertion_functional(first), insertion_functional(second),
                                 kernels, half_plane)


def kernel_oracle_report(sites, kernels: Optional[KernelFunctions] = None, mass: float = 1e-3,
                         box_radius: int = 200, pi_digits: int = 30) -> Dict[Site, Tuple[float, float]]:
    """Exact and oracle values of a at each site, for the kernel suite."""
    kernels = kernels or default_kernels()
    sites = list(sites)
    approximations = massive_green_values(sites, mass, box_radius)
    return {site: (kernels.potential(site).to_float(pi_digits).real, approximations[site])
            for site in sites}
