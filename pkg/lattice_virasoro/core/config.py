"""Configuration management for lattice-virasoro."""

import logging
import os
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigError
from .scalar import parse_rational

logger = logging.getLogger(__name__)

COMMANDS = ('kernel', 'monomial', 'residue', 'correlator', 'verify', 'cache')
EVALUATORS = ('fast', 'reference')


class Config:
    """Layered YAML configuration: packaged defaults, then an optional user file."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration manager.

        Args:
            config_path: Path to custom config file. If None, use default config.
        """
        self.config: Dict[str, Any] = {}
        self.config_path = config_path
        self._load_config()

    def _load_config(self) -> None:
        default_config_path = os.path.join(
            os.path.dirname(os.path.dirname(__file__)),
            'config',
            'default_config.yml'
        )

        try:
            with open(default_config_path, 'r') as f:
                self.config = yaml.safe_load(f) or {}
        except Exception as e:
            logger.error(f"Error loading default config: {e}")
            raise

        if not self.config_path:
            return
        if not os.path.exists(self.config_path):
            logger.warning(f"Config file {self.config_path} not found, using defaults")
            return
        try:
            with open(self.config_path, 'r') as f:
                custom_config = yaml.safe_load(f) or {}
        except Exception as e:
            logger.error(f"Error loading custom config from {self.config_path}: {e}")
            raise
        if not isinstance(custom_config, dict):
            raise ConfigError(f"{self.config_path} must contain a mapping at top level")
        self._update_recursive(self.config, custom_config)

    def _update_recursive(self, base: Dict, update: Dict) -> None:
        for key, value in update.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._update_recursive(base[key], value)
            else:
                base[key] = value

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dotted key (e.g. 'oracle.mass')."""
        try:
            value = self.config
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> None:
        keys = key.split('.')
        current = self.config
        for k in keys[:-1]:
            current = current.setdefault(k, {})
        current[keys[-1]] = value

    @property
    def kernel_cache_path(self) -> Optional[str]:
        path = self.get('kernel.cache_path')
        return os.path.expanduser(path) if path else None

    @property
    def oracle_mass(self) -> Fraction:
        return parse_rational(str(self.get('oracle.mass', '1/1000')))

    @property
    def coulomb_b(self) -> Fraction:
        return parse_rational(str(self.get('verify.coulomb_b', '1/2')))

    @property
    def report_dir(self) -> str:
        return os.path.expanduser(self.get('output.report_dir', 'reports'))


@dataclass
class RunConfig:
    """Everything one CLI invocation needs, after overrides.

    Attributes:
        command: Subcommand name
        suite: Suite name for ``verify``
        max_index: Mode indices range over -max_index..max_index
        max_degree: Largest number of field insertions
        window: Norm1 bound of field points
        contour_growth: Extra radius added to every automatic contour
        robustness_growth: Extra growth checked by the robustness suite
        truncation_padding: Added to every Sugawara truncation bound
        b: Coulomb background charge
        evaluator: 'fast' or 'reference'
        workers: Threads for independent cases
        kernel_cache_path: Kernel cache file, if any
        use_cache: Load and save the kernel cache around the run
        preload_radius: Kernel radius populated up front
        mass: Oracle mass
        box_radius: Massive oracle half width
        halfplane_width: Dirichlet box width
        halfplane_height: Dirichlet box height
        tolerance: Numeric oracle tolerance
        asymptotic_tolerance: Tolerance of the asymptotic check
        pi_digits: Precision of float evaluation
        report_dir: Output directory
        json_path: Explicit JSON report path
        extra: Command specific arguments (sites, indices, file paths)
    """

    command: str
    suite: Optional[str] = None
    max_index: Optional[int] = None
    max_degree: Optional[int] = None
    window: Optional[int] = None
    contour_growth: int = 0
    robustness_growth: int = 2
    truncation_padding: int = 1
    b: Fraction = Fraction(1, 2)
    evaluator: str = 'fast'
    workers: int = 1
    kernel_cache_path: Optional[str] = None
    use_cache: bool = False
    preload_radius: int = 12
    mass: Fraction = Fraction(1, 1000)
    box_radius: int = 200
    halfplane_width: int = 201
    halfplane_height: int = 100
    tolerance: float = 1e-4
    asymptotic_tolerance: float = 1e-3
    pi_digits: int = 100
    report_dir: str = 'reports'
    json_path: Optional[str] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_config(cls, config: Config, command: str, **overrides: Any) -> 'RunConfig':
        """Build from a Config, letting non-None overrides win.

        Unknown override names are kept in ``extra``.
        """
        base: Dict[str, Any] = dict(
            command=command,
            max_index=config.get('verify.max_index'),
            max_degree=config.get('verify.max_degree'),
            window=config.get('verify.window'),
            contour_growth=config.get('verify.contour_growth', 0),
            robustness_growth=config.get('verify.robustness_growth', 2),
            truncation_padding=config.get('verify.truncation_padding', 1),
            b=config.coulomb_b,
            evaluator=config.get('verify.evaluator', 'fast'),
            workers=config.get('verify.workers', 1),
            kernel_cache_path=config.kernel_cache_path,
            use_cache=bool(config.get('kernel.use_cache', False)),
            preload_radius=config.get('kernel.preload_radius', 12),
            mass=config.oracle_mass,
            box_radius=config.get('oracle.box_radius', 200),
            halfplane_width=config.get('oracle.halfplane_width', 201),
            halfplane_height=config.get('oracle.halfplane_height', 100),
            tolerance=float(config.get('oracle.tolerance', 1e-4)),
            asymptotic_tolerance=float(config.get('oracle.asymptotic_tolerance', 1e-3)),
            pi_digits=config.get('oracle.pi_digits', 100),
            report_dir=config.report_dir,
        )
        known = {f.name for f in fields(cls)}
        extra: Dict[str, Any] = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key in known:
                base[key] = value
            else:
                extra[key] = value
        if not isinstance(base['b'], Fraction):
            base['b'] = parse_rational(str(base['b']))
        if not isinstance(base['mass'], Fraction):
            base['mass'] = parse_rational(str(base['mass']))
        return cls(extra=extra, **base)

    def validate(self) -> 'RunConfig':
        """Check bounds.

        Raises:
            ConfigError: If a bound is not positive, the mass is not positive,
                or the command, suite or evaluator is unknown
        """
        from .suites import SUITES

        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}'")
        if self.command == 'verify' and self.suite not in SUITES:
            raise ConfigError(f"Unknown suite '{self.suite}', expected one of {', '.join(SUITES)}")
        for name in ('max_index', 'max_degree', 'window', 'workers',
                     'box_radius', 'halfplane_width', 'halfplane_height'):
            if getattr(self, name) is not None and getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ('contour_growth', 'robustness_growth', 'truncation_padding', 'preload_radius'):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if self.mass <= 0:
            raise ConfigError(f"mass must be positive, got {self.mass}")
        if self.tolerance <= 0 or self.asymptotic_tolerance <= 0:
            raise ConfigError("Oracle tolerances must be positive")
        if self.pi_digits < 15:
            raise ConfigError(f"pi_digits must be at least 15, got {self.pi_digits}")
        if self.evaluator not in EVALUATORS:
            raise ConfigError(f"Unknown evaluator '{self.evaluator}', expected fast or reference")
        return self

    def suite_parameters(self) -> Dict[str, Any]:
        """Keyword arguments for ``SuiteRunner.run``; each suite ignores what it does not use."""
        params = dict(
            max_index=self.max_index,
            max_degree=self.max_degree,
            window=self.window,
            b=self.b,
            growth=self.robustness_growth,
            mass=float(self.mass),
            box_radius=self.box_radius,
            tolerance=self.tolerance,
            asymptotic_tolerance=self.asymptotic_tolerance,
            pi_digits=self.pi_digits,
            halfplane_width=self.halfplane_width,
            halfplane_height=self.halfplane_height,
        )
        return {key: value for key, value in params.items() if value is not None}
