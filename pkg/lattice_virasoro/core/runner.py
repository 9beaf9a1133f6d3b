"""Orchestration of one lattice-virasoro command."""

import logging
import os
from datetime import datetime
from typing import Any, Dict, Optional

from .config import Config, RunConfig
from .contour import Contour, min_radius, rectangle_contour, residue_pairing
from .correlator import GaussianCorrelator
from .errors import KernelCacheError, SiteClassError
from .kernel import KernelFunctions, PotentialKernelTable, set_default_table
from .lattice import Site, SiteClass
from .modes import ModeEvaluator
from .monomials import MonomialFamily
from .scalar import ONE, ZERO
from .suites import SuiteRunner
from ..utils.file_utils import (
    ensure_directory,
    load_kernel_cache,
    read_json,
    read_kernel_header,
    save_kernel_cache,
    write_json_report,
    write_monomial_csv,
)
from ..utils.serialization import (
    contour_from_json, insertion_list_from_json, insertion_list_to_json, scalar_to_json,
)

logger = logging.getLogger(__name__)


class VerificationRunner:
    """Builds the shared exact caches and executes a single command."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize VerificationRunner.

        Args:
            config_path: Optional path to custom config file
        """
        self.config = Config(config_path)
        self.table: Optional[PotentialKernelTable] = None
        self.kernels: Optional[KernelFunctions] = None
        self.stats: Dict[str, Any] = {}

    def run(self, run_config: RunConfig) -> int:
        """Execute the command described by ``run_config``.

        Args:
            run_config: Validated or unvalidated run configuration

        Returns:
            int: 0 if every check passed, 1 otherwise
        """
        try:
            run_config.validate()
            self._prepare_kernels(run_config)
            handler = getattr(self, f"_run_{run_config.command}")
            status = handler(run_config)
            if run_config.use_cache and run_config.command != 'cache':
                self._store_cache(run_config)
            return status
        except Exception as e:
            logger.error(f"Error during {run_config.command}: {str(e)}")
            raise

    # -- shared caches -----------------------------------------------------

    def _prepare_kernels(self, run_config: RunConfig) -> None:
        table = None
        path = run_config.kernel_cache_path
        if run_config.use_cache and path:
            if os.path.exists(path):
                table = load_kernel_cache(path)
            else:
                logger.warning(f"Kernel cache {path} does not exist yet, starting from the seeds")
        if table is None:
            table = PotentialKernelTable()
        self.stats['loaded_radius'] = table.radius
        table.extend(run_config.preload_radius)
        self.table = table
        self.kernels = set_default_table(table)

    def _store_cache(self, run_config: RunConfig) -> None:
        path = run_config.kernel_cache_path
        if not path or self.table is None:
            return
        if self.table.radius > self.stats.get('loaded_radius', 0) or not os.path.exists(path):
            save_kernel_cache(self.table, path)

    def _evaluator(self, run_config: RunConfig) -> ModeEvaluator:
        correlator = GaussianCorrelator(self.kernels)
        return ModeEvaluator(correlator, MonomialFamily(self.kernels),
                             growth=run_config.contour_growth,
                             padding=run_config.truncation_padding,
                             reference=run_config.evaluator == 'reference')

    def _report_path(self, run_config: RunConfig, name: str) -> str:
        if run_config.json_path:
            return run_config.json_path
        directory = ensure_directory(run_config.report_dir)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return os.path.join(directory, f"{name}_{timestamp}.json")

    # -- commands ----------------------------------------------------------

    def _run_kernel(self, run_config: RunConfig) -> int:
        x, y = run_config.extra['z']
        site = Site.at(x, y)
        kind = run_config.extra.get('kind', 'potential')
        if kind == 'cauchy':
            value = self.kernels.cauchy(site)
        elif site.is_in({SiteClass.VERTEX}):
            value = self.kernels.potential(site)
        else:
            raise SiteClassError(f"The potential kernel lives on vertices, got {site}")
        print(value)
        self.stats['value'] = value
        return 0

    def _run_monomial(self, run_config: RunConfig) -> int:
        k = run_config.extra['k']
        window = run_config.window if run_config.window is not None else 2
        family = MonomialFamily(self.kernels)
        rows = family.table(k, window)
        path = run_config.extra.get('csv') or os.path.join(
            ensure_directory(run_config.report_dir), f"monomial_k{k}_w{window}.csv")
        write_monomial_csv(rows, path)
        print(path)
        self.stats['rows'] = len(rows)
        return 0

    def _run_residue(self, run_config: RunConfig) -> int:
        m, n = run_config.extra['m'], run_config.extra['n']
        contour_file = run_config.extra.get('contour')
        contour: Contour
        if contour_file:
            contour = contour_from_json(read_json(contour_file))
        else:
            r = run_config.extra.get('r')
            contour = rectangle_contour(r if r is not None else min_radius(m, n))
        value = residue_pairing(m, n, contour, MonomialFamily(self.kernels))
        expected = ONE if m + n == -1 else ZERO
        passed = value == expected
        print(value)
        print('PASS' if passed else 'FAIL')
        return 0 if passed else 1

    def _run_correlator(self, run_config: RunConfig) -> int:
        ins = insertion_list_from_json(read_json(run_config.extra['insertions']))
        value = GaussianCorrelator(self.kernels).wick_correlator(ins)
        print(value)
        if run_config.json_path:
            write_json_report({'insertions': insertion_list_to_json(ins), 'description': ins.describe(),
                               'value': scalar_to_json(value)}, run_config.json_path)
        return 0

    def _run_verify(self, run_config: RunConfig) -> int:
        suite = run_config.suite
        runner = SuiteRunner(self._evaluator(run_config), workers=run_config.workers)
        report = runner.run(suite, **run_config.suite_parameters())
        summary = report.summary()
        self.stats.update(summary)
        for case in report.failures:
            logger.error(f"FAIL {case.identity} {case.indices} on {case.insertion}")
        if run_config.json_path or self.config.get('output.write_json', True):
            write_json_report(report.to_dict(), self._report_path(run_config, suite))
        print(f"{suite}: {summary['passed']}/{summary['total']} passed")
        return 0 if report.passed else 1

    def _run_cache(self, run_config: RunConfig) -> int:
        action = run_config.extra.get('action', 'info')
        path = run_config.extra.get('path') or run_config.kernel_cache_path
        if not path:
            raise KernelCacheError("No kernel cache path configured")
        if action == 'save':
            radius = run_config.extra.get('radius') or run_config.preload_radius
            self.table.extend(radius)
            save_kernel_cache(self.table, path)
        elif action == 'load':
            table = load_kernel_cache(path)
            if self._check_table(table) is not None:
                print('FAIL')
                return 1
            print(f"radius={table.radius} entries={len(table)} OK")
        else:
            version, radius = read_kernel_header(path)
            print(f"{path}: version {version}, radius {radius}, {os.path.getsize(path)} bytes")
        return 0

    def _check_table(self, table: PotentialKernelTable) -> Optional[Site]:
        """First vertex where a loaded table disagrees with freshly computed seeds."""
        fresh = PotentialKernelTable(min(table.radius, 4))
        for x, y, p, q in fresh.octant_items():
            if table.value(x, y) != (p, q):
                site = Site.at(x, y)
                logger.error(f"Cached a{site} = {p} + {q}/pi differs from the recurrence")
                return site
        return None
