"""Command line interface for lattice-virasoro."""

import argparse
import logging
import sys
from typing import List, Optional

from .core.config import RunConfig
from .core.runner import VerificationRunner
from .core.scalar import parse_rational
from .core.suites import SUITES


def setup_logging(log_level: str, log_file: Optional[str] = None) -> None:
    """Set up logging configuration.

    Args:
        log_level: Desired logging level
        log_file: Optional path to log file
    """
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)

    file_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    console_formatter = logging.Formatter(
        '%(levelname)s: %(message)s'
    )

    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, log_level.upper()))
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(file_formatter)
        logger.addHandler(file_handler)


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments.

    Returns:
        argparse.Namespace: Parsed arguments
    """
    parser = argparse.ArgumentParser(
        description="Exact discrete complex analysis and lattice Virasoro checks"
    )

    parser.add_argument(
        '-c', '--config',
        help='Path to custom configuration file'
    )

    parser.add_argument(
        '--log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
        help='Set the logging level'
    )

    parser.add_argument(
        '--log-file',
        help='Save logs to a file'
    )

    parser.add_argument(
        '--json',
        dest='json_path',
        help='Write the JSON report to this path'
    )

    parser.add_argument(
        '--workers',
        type=int,
        help='Threads used for independent cases'
    )

    parser.add_argument(
        '--use-cache',
        action='store_true',
        default=None,
        help='Load the kernel cache before and save it after the run'
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    kernel = subparsers.add_parser('kernel', help='Exact potential or Cauchy kernel value')
    kernel.add_argument('--z', nargs=2, type=_rational, required=True, metavar=('X', 'Y'),
                        help='Site in true coordinates, e.g. --z 1 1 or --z 1/2 0')
    kernel.add_argument('--cauchy', dest='kind', action='store_const', const='cauchy',
                        default='potential', help='Evaluate K at a medial site instead of a')

    monomial = subparsers.add_parser('monomial', help='CSV table of z^[k]')
    monomial.add_argument('--k', type=int, required=True)
    monomial.add_argument('--window', type=int)
    monomial.add_argument('--csv', help='Output CSV path')

    residue = subparsers.add_parser('residue', help='Residue pairing of z^[m] and z^[n]')
    residue.add_argument('--m', type=int, required=True)
    residue.add_argument('--n', type=int, required=True)
    residue.add_argument('--r', type=int, help='Rectangle radius (default: smallest valid)')
    residue.add_argument('--contour', help='JSON file with contour node quarter-coordinates')

    correlator = subparsers.add_parser('correlator', help='Exact Gaussian correlation')
    correlator.add_argument('insertions', help='JSON file with the insertion list')

    verify = subparsers.add_parser('verify', help='Run a verification suite')
    verify.add_argument('suite', choices=SUITES)
    verify.add_argument('--max-index', type=int)
    verify.add_argument('--max-degree', type=int)
    verify.add_argument('--window', type=int)
    verify.add_argument('--b', type=_rational, help='Coulomb background charge p/q')
    verify.add_argument('--growth', dest='robustness_growth', type=int,
                        help='Extra contour growth checked by the robustness suite')
    verify.add_argument('--evaluator', choices=['fast', 'reference'])

    cache = subparsers.add_parser('cache', help='Manage the potential kernel cache')
    cache.add_argument('action', choices=['save', 'load', 'info'])
    cache.add_argument('--path', help='Cache file (default: kernel.cache_path)')
    cache.add_argument('--radius', type=int, help='Radius to populate before saving')

    return parser.parse_args(argv)


def build_run_config(runner: VerificationRunner, args: argparse.Namespace) -> RunConfig:
    """Merge parsed arguments over the runner's configuration."""
    overrides = {key: value for key, value in vars(args).items()
                 if key not in ('config', 'log_level', 'log_file', 'command')}
    return RunConfig.from_config(runner.config, args.command, **overrides)


def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point for the command line interface."""
    logger = logging.getLogger(__name__)
    try:
        args = parse_args(argv)

        runner = VerificationRunner(args.config)
        log_level = args.log_level or runner.config.get('logging.level', 'INFO')
        log_file = args.log_file or runner.config.get('logging.log_file')
        setup_logging(log_level, log_file)

        run_config = build_run_config(runner, args)
        status = runner.run(run_config)
        if status:
            sys.exit(status)

    except KeyboardInterrupt:
        logger.info("\nRun interrupted by user")
        sys.exit(1)
    except Exception as e:
        logger.error(f"An error occurred: {str(e)}")
        sys.exit(1)


if __name__ == "__main__":
    main()
