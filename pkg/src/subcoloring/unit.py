"""Unit disk graphs: the hexagonal 7-subcoloring and the 3-approximation.

Hexagons have circumradius 1/2 (diameter 1) and two vertical edges. Row ``i``
sits at height ``3i/4``; column ``j`` at ``j*sqrt(3)/2``, shifted right by
``sqrt(3)/4`` on odd rows. Cell ``(0, 0)`` is centered at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

from .errors import InvariantViolation
from .geometry import DiskInstance, Point, require_kind
from .graph import Coloring, build_intersection_graph, connected_components, find_induced_p3, subcoloring_violation
from .solver import DEFAULT_NODE_BUDGET, decide_k_subcoloring

ROW_PITCH = 0.75
COL_PITCH = math.sqrt(3) / 2
ODD_SHIFT = math.sqrt(3) / 4


class HexCell(NamedTuple):
    i: int
    j: int

    @property
    def center(self) -> Point:
        return Point(self.j * COL_PITCH + (ODD_SHIFT if self.i % 2 else 0.0), self.i * ROW_PITCH)


def hex_cell_of(p: Point) -> HexCell:
    """The hexagon containing ``p``: nearest center, ties to the smaller ``(i, j)``."""
    row = math.floor(p.y / ROW_PITCH)
    best = None
    for i in (row - 1, row, row + 1, row + 2):
        shift = ODD_SHIFT if i % 2 else 0.0
        col = math.floor((p.x - shift) / COL_PITCH)
        cy = i * ROW_PITCH
        for j in (col - 1, col, col + 1, col + 2):
            cx = j * COL_PITCH + shift
            key = ((p.x - cx) ** 2 + (p.y - cy) ** 2, i, j)
            if best is None or key < best:
                best = key
    return HexCell(best[1], best[2])


def isbell_color(cell: HexCell) -> int:
    """Color in 0..6: +1 to the right, +4 below-left, +5 below-right.

    Two rows down adds 4 + 5 = 9, i.e. 2 (mod 7); the odd-row offset contributes
    the remaining -4 (mod 7) going up.
    """
    i, j = cell
    return (j - 2 * (i // 2) - 4 * (i % 2)) % 7


def color_unit_7(instance: DiskInstance) -> Coloring:
    require_kind(instance, "unit")
    return Coloring({d.id: isbell_color(hex_cell_of(d.center)) for d in instance.disks})


class Region(IntEnum):
    R0 = 0
    R1 = 1
    R2 = 2


R0, R1, R2 = Region.R0, Region.R1, Region.R2


def region_of(center: Point) -> Region:
    fx = math.floor(center.x)
    fy = math.floor(center.y)
    # python's % is already the euclidean remainder for positive moduli
    if fy % 2 == 0 and fx % 4 != 0:
        return R0
    if fy % 2 == 1 and fx % 4 != 3:
        return R1
    return R2


@dataclass
class UnitApproxResult:
    coloring: Coloring
    lower_bound: int
    stage: int


def approx3_unit(instance: DiskInstance, node_budget: int = DEFAULT_NODE_BUDGET) -> UnitApproxResult:
    """Three-stage 3-approximation of the subchromatic number.

    1. A cluster graph gets one color.
    2. Otherwise each region class is 2-subcolored component by component;
       region ``r`` uses colors ``2r`` and ``2r + 1``.
    3. If some component refuses, the graph is not 2-subcolorable and the
       hexagonal 7-coloring is returned.
    """
    require_kind(instance, "unit")
    g = build_intersection_graph(instance)
    if find_induced_p3(g) is None:
        result = UnitApproxResult(Coloring({v: 0 for v in range(g.n)}), 1, 1)
    else:
        by_region: dict[int, list[int]] = {0: [], 1: [], 2: []}
        for d in instance.disks:
            by_region[region_of(d.center)].append(d.id)
        colors: dict[int, int] | None = {}
        for r in (0, 1, 2):
            for comp in connected_components(g, by_region[r]):
                sol = decide_k_subcoloring(g, 2, vertices=comp, limit=None, node_budget=node_budget)
                if sol is None:
                    colors = None
                    break
                for v, c in sol.colors.items():
                    colors[v] = 2 * r + c
            if colors is None:
                break
        if colors is not None:
            result = UnitApproxResult(Coloring(colors), 2, 2)
        else:
            result = UnitApproxResult(color_unit_7(instance), 3, 3)
    result.coloring = result.coloring.canonical()
    bad = subcoloring_violation(g, result.coloring)
    if bad is not None:
        raise InvariantViolation(f"approx3_unit produced a monochromatic P3 {bad}")
    return result
