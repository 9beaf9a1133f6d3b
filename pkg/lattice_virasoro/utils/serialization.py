"""JSON forms of insertion lists, contours, sites and scalars."""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Sequence

from ..core.contour import Contour
from ..core.correlator import CurrentPoint, FieldPoint, Geometry, InsertionList, Sector
from ..core.lattice import Site
from ..core.scalar import PiScalar, parse_rational

logger = logging.getLogger(__name__)

_SECTORS = {
    'J': Sector.ANALYTIC,
    'analytic': Sector.ANALYTIC,
    'Jbar': Sector.ANTIANALYTIC,
    'antianalytic': Sector.ANTIANALYTIC,
}


def _coordinate(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError(f"Invalid coordinate {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ValueError(f"Coordinates must be integers or 'p/q' strings, got {value!r}")


def site_from_json(value: Any) -> Site:
    """A site from ``[x, y]`` or ``{"x": x, "y": y}`` in true units.

    Raises:
        SiteClassError: If the point is not on the quarter grid
        ValueError: If the record is malformed
    """
    if isinstance(value, Mapping):
        x, y = value.get('x'), value.get('y')
    elif isinstance(value, Sequence) and not isinstance(value, str) and len(value) == 2:
        x, y = value
    else:
        raise ValueError(f"Expected [x, y] or {{x, y}}, got {value!r}")
    return Site.at(_coordinate(x), _coordinate(y))


def site_to_json(site: Site) -> List[str]:
    return [str(Fraction(site.qx, 4)), str(Fraction(site.qy, 4))]


def insertion_list_from_json(data: Mapping[str, Any]) -> InsertionList:
    """Parse an insertion list.

    The record looks like::

        {"geometry": "full",
         "currents": [{"site": ["1/2", 0], "sector": "J"}],
         "fields": [[1, 0], ["1", "1"]]}

    ``geometry`` defaults to ``full``; ``currents`` and ``fields`` may be
    omitted. Currents may also be written as ``{"x": ..., "y": ..., "sector": ...}``.

    Raises:
        ValueError: If the record is malformed
        SiteClassError: If a point sits on the wrong lattice
        GeometryMismatchError: If a half-plane point is not strictly upper
    """
    if not isinstance(data, Mapping):
        raise ValueError("An insertion list must be a JSON object")
    try:
        geometry = Geometry(data.get('geometry', 'full'))
    except ValueError as e:
        raise ValueError(f"Unknown geometry {data.get('geometry')!r}, expected full or half") from e

    currents = []
    for record in data.get('currents', []):
        if not isinstance(record, Mapping):
            raise ValueError(f"Current records must be objects, got {record!r}")
        sector_name = record.get('sector', 'J')
        if sector_name not in _SECTORS:
            raise ValueError(f"Unknown current sector {sector_name!r}")
        site = site_from_json(record['site'] if 'site' in record else record)
        currents.append(CurrentPoint(site, _SECTORS[sector_name], geometry))
    fields = [FieldPoint(site_from_json(record)) for record in data.get('fields', [])]
    ins = InsertionList(tuple(currents), tuple(fields), geometry)
    logger.debug(f"Parsed insertion list {ins.describe()} ({geometry.value} plane)")
    return ins


def insertion_list_to_json(ins: InsertionList) -> Dict[str, Any]:
    return {
        'geometry': ins.geometry.value,
        'currents': [{'site': site_to_json(c.site),
                      'sector': 'J' if c.sector is Sector.ANALYTIC else 'Jbar'}
                     for c in ins.currents],
        'fields': [site_to_json(f.site) for f in ins.fields],
    }


def contour_from_json(data: Any) -> Contour:
    """A contour from a list of node quarter-coordinates ``[[qx, qy], ...]``.

    ``{"nodes": [...]}`` is accepted as well. Nodes are validated by
    ``Contour.from_nodes``.
    """
    if isinstance(data, Mapping):
        data = data.get('nodes')
    if not isinstance(data, Sequence) or isinstance(data, str):
        raise ValueError("A contour must be a list of [qx, qy] node pairs")
    nodes = []
    for pair in data:
        if not isinstance(pair, Sequence) or len(pair) != 2:
            raise ValueError(f"Contour nodes are [qx, qy] pairs, got {pair!r}")
        nodes.append(Site(int(pair[0]), int(pair[1])))
    return Contour.from_nodes(nodes)


def scalar_to_json(value: PiScalar) -> Dict[str, Any]:
    """Exact terms plus a readable rendering."""
    return {'terms': value.to_json(), 'text': str(value)}

