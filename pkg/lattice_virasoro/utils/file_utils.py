"""File helpers: kernel cache, JSON reports and monomial tables."""

import csv
import json
import logging
import os
import re
from fractions import Fraction
from typing import Any, Dict, Iterable, Tuple

from ..core.errors import KernelCacheCorruptError, KernelCacheError, KernelCacheVersionError
from ..core.kernel import CACHE_VERSION, KernelValue, PotentialKernelTable
from ..core.lattice import Site
from ..core.scalar import PiScalar, parse_rational

logger = logging.getLogger(__name__)

_HEADER = re.compile(r'^POTKERNEL (\S+) radius=(\d+)$')


def ensure_directory(path: str) -> str:
    """Create ``path`` (and parents) if needed.

    Args:
        path: Directory path

    Returns:
        str: The same path
    """
    try:
        os.makedirs(path, exist_ok=True)
        logger.debug(f"Using directory: {path}")
        return path
    except Exception as e:
        logger.error(f"Error creating directory {path}: {str(e)}")
        raise


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    ensure_directory(parent)


def _exact(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def save_kernel_cache(table: PotentialKernelTable, path: str) -> None:
    """Write the octant table as ``x y p/q r/s`` lines under a versioned header.

    Args:
        table: Table to persist
        path: Destination file
    """
    _ensure_parent(path)
    tmp_path = f"{path}.tmp"
    try:
        with open(tmp_path, 'w', encoding='utf-8') as f:
            f.write(f"POTKERNEL {CACHE_VERSION} radius={table.radius}\n")
            for x, y, p, q in table.octant_items():
                f.write(f"{x} {y} {_exact(p)} {_exact(q)}\n")
        os.replace(tmp_path, path)
    except Exception as e:
        logger.error(f"Error writing kernel cache {path}: {str(e)}")
        raise
    logger.info(f"Saved potential kernel table of radius {table.radius} to {path}")


def read_kernel_header(path: str) -> Tuple[str, int]:
    """Version and radius from the first line of a cache file.

    Raises:
        KernelCacheCorruptError: If the header line is missing or malformed
    """
    with open(path, 'r', encoding='utf-8') as f:
        header = f.readline().strip()
    match = _HEADER.match(header)
    if not match:
        raise KernelCacheCorruptError(f"{path}: missing POTKERNEL header")
    return match.group(1), int(match.group(2))


def load_kernel_cache(path: str) -> PotentialKernelTable:
    """Read a cache file written by ``save_kernel_cache``.

    A damaged or stale file is refused; it is never recomputed over.

    Raises:
        KernelCacheError: If the file does not exist
        KernelCacheVersionError: If the header names another version
        KernelCacheCorruptError: If lines are unparsable, duplicated,
            outside the octant or missing
    """
    if not os.path.exists(path):
        raise KernelCacheError(f"Kernel cache {path} does not exist")
    version, radius = read_kernel_header(path)
    if version != CACHE_VERSION:
        raise KernelCacheVersionError(f"{path}: cache version {version}, expected {CACHE_VERSION}")

    values: Dict[Tuple[int, int], KernelValue] = {}
    with open(path, 'r', encoding='utf-8') as f:
        next(f)
        for lineno, line in enumerate(f, start=2):
            if not line.strip():
                continue
            parts = line.split()
            try:
                if len(parts) != 4:
                    raise ValueError(f"expected 4 fields, got {len(parts)}")
                x, y = int(parts[0]), int(parts[1])
                p, q = parse_rational(parts[2]), parse_rational(parts[3])
            except ValueError as e:
                raise KernelCacheCorruptError(f"{path}:{lineno}: {e}") from e
            if not 0 <= y <= x <= radius:
                raise KernelCacheCorruptError(f"{path}:{lineno}: ({x}, {y}) outside the octant of radius {radius}")
            if (x, y) in values:
                raise KernelCacheCorruptError(f"{path}:{lineno}: duplicate entry ({x}, {y})")
            values[(x, y)] = (p, q)

    expected = (radius + 1) * (radius + 2) // 2
    if len(values) != expected:
        raise KernelCacheCorruptError(f"{path}: {len(values)} entries, expected {expected} for radius {radius}")
    table = PotentialKernelTable.from_values(radius, values)
    logger.info(f"Loaded potential kernel table of radius {radius} from {path}")
    return table


def write_json_report(report: Dict[str, Any], path: str) -> str:
    """Write a JSON report with stable key order.

    Returns:
        str: The path written
    """
    _ensure_parent(path)
    try:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(report, f, indent=2)
            f.write('\n')
    except Exception as e:
        logger.error(f"Error writing report {path}: {str(e)}")
        raise
    logger.info(f"Wrote report: {path}")
    return path


def read_json(path: str) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except Exception as e:
        logger.error(f"Error reading {path}: {str(e)}")
        raise


def write_monomial_csv(rows: Iterable[Tuple[Site, PiScalar]], path: str) -> str:
    """One row per site: true coordinates, site class and the exact value.

    The value columns hold the coefficient of each power of pi as ``re`` and
    ``im`` strings, one power per row group, so no digit is lost.
    """
    _ensure_parent(path)
    try:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f)
            writer.writerow(['x', 'y', 'class', 'exp_num', 're', 'im', 'value'])
            for site, value in rows:
                x, y = Fraction(site.qx, 4), Fraction(site.qy, 4)
                terms = value.to_json() or [{'exp_num': 0, 're': '0', 'im': '0'}]
                for term in terms:
                    writer.writerow([str(x), str(y), site.site_class.value,
                                     term['exp_num'], term['re'], term['im'], str(value)])
    except Exception as e:
        logger.error(f"Error writing monomial table {path}: {str(e)}")
        raise
    logger.info(f"Wrote monomial table: {path}")
    return path
