"""Exception hierarchy for lattice_virasoro."""


class LatticeVirasoroError(Exception):
    """Base class for all errors raised by the package."""


class SiteClassError(LatticeVirasoroError, ValueError):
    """A site does not belong to the class an operation or function requires."""


class SublatticeError(LatticeVirasoroError, ValueError):
    """A path for monomial integration leaves its sublattice."""


class ContourError(LatticeVirasoroError, ValueError):
    """A node sequence is not a closed, simple, positively oriented contour."""


class ContourTooSmallError(ContourError):
    """The contour does not separate the required ball from infinity."""


class GeometryMismatchError(LatticeVirasoroError, ValueError):
    """Full-plane and half-plane insertions were mixed, or a half-plane point is invalid."""


class ScalarError(LatticeVirasoroError, ArithmeticError):
    """Unsupported PiScalar operation, such as dividing by a multi-term value."""


class KernelCacheError(LatticeVirasoroError):
    """The potential kernel cache file cannot be used."""


class KernelCacheCorruptError(KernelCacheError):
    """The cache file is truncated or contains unparsable lines."""


class KernelCacheVersionError(KernelCacheError):
    """The cache file header does not match the supported version."""


class OracleError(LatticeVirasoroError):
    """A numeric oracle failed to produce a finite answer."""


class ConfigError(LatticeVirasoroError, ValueError):
    """Invalid run configuration."""
