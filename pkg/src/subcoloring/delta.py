"""Delta-disk graphs: every disk meets both positive axes but misses the origin.

Representations carry arbitrary (unique) disk ids; the algorithms work on
positions internally and report results keyed by id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvariantViolation, KindMismatchError
from .geometry import Disk, DiskInstance, Point, disks_intersect, median_coordinate, point_in_disk
from .graph import Coloring, IntersectionGraph, graph_of_disks, is_clique, subcoloring_violation


def delta_violation(d: Disk) -> str | None:
    """Why ``d`` breaks ``0 < x, 0 < y, max(x, y) <= r < |center|``; None if it doesn't."""
    x, y, r = d.center.x, d.center.y, d.radius
    if not (x > 0 and y > 0):
        return "has a center outside the open positive quadrant"
    if max(x, y) > r:
        return "misses an axis"
    if r * r >= x * x + y * y:
        return "contains the origin"
    return None


def first_delta_violation(disks: Iterable[Disk]) -> Disk | None:
    for d in disks:
        if delta_violation(d):
            return d
    return None


def validate_delta(instance: DiskInstance | Iterable[Disk]) -> bool:
    disks = instance.disks if isinstance(instance, DiskInstance) else instance
    return first_delta_violation(disks) is None


class DeltaRepresentation:
    """A validated set of delta-disks with cached distances to the origin."""

    def __init__(self, disks: Sequence[Disk] | DiskInstance):
        if isinstance(disks, DiskInstance):
            disks = disks.disks
        self.disks: tuple[Disk, ...] = tuple(disks)
        bad = first_delta_violation(self.disks)
        if bad is not None:
            raise KindMismatchError(f"disk {bad.id} {delta_violation(bad)}")
        self.ids = [d.id for d in self.disks]
        self.pos = {d.id: i for i, d in enumerate(self.disks)}
        if len(self.pos) != len(self.disks):
            raise KindMismatchError("duplicate disk ids in delta representation")
        self.dist = [math.hypot(d.center.x, d.center.y) for d in self.disks]

    def __len__(self) -> int:
        return len(self.disks)

    def disk(self, id: int) -> Disk:
        return self.disks[self.pos[id]]

    def d(self, id: int) -> float:
        return self.dist[self.pos[id]]

    @cached_property
    def graph(self) -> IntersectionGraph:
        """Intersection graph over positions ``0..n-1``."""
        return graph_of_disks(self.disks)

    def adjacent(self, u: int, v: int) -> bool:
        return self.graph.has_edge(self.pos[u], self.pos[v])

    def to_instance(self) -> DiskInstance:
        return DiskInstance(self.disks, "delta")


def cocomp_precedes(rep: DeltaRepresentation, u: int, v: int) -> bool:
    a, b = rep.disk(u), rep.disk(v)
    return a.center.x < b.center.x and a.center.y < b.center.y and not disks_intersect(a, b)


@dataclass
class SeparatorParts:
    V1: set[int]
    V2: set[int]
    V3: set[int]
    V4: set[int]
    alpha: float
    X: Point
    Xprime: Point


def delta_separator(rep: DeltaRepresentation, subset: Iterable[int] | None = None) -> SeparatorParts:
    """Two-clique balanced separator of a delta representation (ids in, ids out).

    ``V3`` holds the centers outside both corner regions plus the lower-corner
    disks reaching ``(a/2, a/2)``; ``V4`` the upper-corner disks reaching
    ``(a, a)``, where ``a`` is the lower median abscissa. Region boundaries
    belong to neither corner.
    """
    ids = list(rep.ids) if subset is None else list(subset)
    if not ids:
        raise InvariantViolation("separator of an empty vertex set")
    alpha = median_coordinate([rep.disk(v).center.x for v in ids])
    half = alpha / 2
    X, Xp = Point(alpha, alpha), Point(half, half)
    parts = SeparatorParts(set(), set(), set(), set(), alpha, X, Xp)
    for v in ids:
        d = rep.disk(v)
        x, y = d.center.x, d.center.y
        if x < half and y < half:
            (parts.V3 if point_in_disk(Xp, d) else parts.V1).add(v)
        elif x > alpha and y > alpha:
            (parts.V4 if point_in_disk(X, d) else parts.V2).add(v)
        else:
            parts.V3.add(v)
    _check_separator(rep, parts, len(ids))
    return parts


def _check_separator(rep: DeltaRepresentation, parts: SeparatorParts, n: int) -> None:
    g, pos = rep.graph, rep.pos
    for name in ("V3", "V4"):
        if not is_clique(g, [pos[v] for v in getattr(parts, name)]):
            raise InvariantViolation(f"separator part {name} is not a clique")
    v2 = {pos[v] for v in parts.V2}
    for v in parts.V1:
        if not v2.isdisjoint(g.adj[pos[v]]):
            raise InvariantViolation(f"edge between V1 and V2 at vertex {v}")
    if len(parts.V1) > n // 2 or len(parts.V2) > n // 2:
        raise InvariantViolation(f"unbalanced separator: |V1|={len(parts.V1)}, |V2|={len(parts.V2)}, n={n}")


def delta_color_log(rep: DeltaRepresentation) -> Coloring:
    """Subcoloring with at most ``2*floor(log2 n) + 1`` colors.

    Depth ``l`` of the separator recursion owns colors ``2l`` (V3) and
    ``2l + 1`` (V4); the two sides below share the deeper palette.
    """
    colors: dict[int, int] = {}
    stack = [(list(rep.ids), 0)] if len(rep) else []
    while stack:
        ids, level = stack.pop()
        parts = delta_separator(rep, ids)
        for v in parts.V3:
            colors[v] = 2 * level
        for v in parts.V4:
            colors[v] = 2 * level + 1
        for side in (parts.V2, parts.V1):
            if side:
                stack.append((sorted(side), level + 1))
    result = Coloring(colors).canonical()
    _require_valid(rep, result, "delta_color_log")
    return result


def _require_valid(rep: DeltaRepresentation, coloring: Coloring, who: str) -> None:
    local = {rep.pos[v]: c for v, c in coloring.colors.items()}
    bad = subcoloring_violation(rep.graph, local)
    if bad is not None:
        raise InvariantViolation(f"{who} produced a monochromatic P3 {tuple(rep.ids[i] for i in bad)}")


def vertex_contains(g: IntersectionGraph, u: int, v: int) -> bool:
    """Does ``u`` contain ``v``, i.e. ``N[v]`` is a subset of ``N[u]``?

    Argument order follows the spoken form: ``vertex_contains(g, b, a)`` asks
    whether ``b`` contains ``a``.
    """
    return g.closed_nbhd(v) <= g.closed_nbhd(u)


@dataclass
class LayerPartition:
    layers: list[list[int]] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.layers)


def external_layers(g: IntersectionGraph, vertices: Iterable[int] | None = None) -> LayerPartition:
    """Peel external vertices until nothing is left.

    A vertex is internal when the vertices it contains include a non-adjacent
    pair; everything is evaluated in the graph that remains at each round.
    """
    alive = 0
    for v in range(g.n) if vertices is None else vertices:
        alive |= 1 << v
    closed = [m | (1 << v) for v, m in enumerate(g.masks)]
    out = LayerPartition()
    while alive:
        layer = []
        rest = alive
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            nv = closed[v] & alive
            contained = 0
            cand = nv
            while cand:
                lb = cand & -cand
                u = lb.bit_length() - 1
                cand ^= lb
                if closed[u] & alive & ~nv == 0:
                    contained |= lb
            internal = False
            cand = contained
            while cand:
                lb = cand & -cand
                u = lb.bit_length() - 1
                cand ^= lb
                if contained & ~closed[u]:
                    internal = True
                    break
            if not internal:
                layer.append(v)
        if not layer:
            raise InvariantViolation("external layer peeling stalled on a non-empty graph")
        out.layers.append(layer)
        for v in layer:
            alive &= ~(1 << v)
    return out


def greedy_mis_by_radius(rep: DeltaRepresentation, subset: Iterable[int]) -> list[int]:
    """Maximal independent set of the subgraph induced by ``subset``, smallest radius first.

    Ties go to the smaller id. The selection order is already sorted by radius.
    """
    order = sorted(subset, key=lambda v: (rep.disk(v).radius, v))
    g, pos = rep.graph, rep.pos
    removed: set[int] = set()
    chosen = []
    for v in order:
        if v in removed:
            continue
        chosen.append(v)
        removed.add(v)
        removed.update(rep.ids[w] for w in g.adj[pos[v]])
    return chosen


def sector_of(base: Disk, d: Disk) -> int:
    """Which 60-degree sector around ``base`` holds the center of ``d``; base itself is 0."""
    dx = d.center.x - base.center.x
    dy = d.center.y - base.center.y
    if dx == 0 and dy == 0:
        return 0
    angle = math.degrees(math.atan2(dy, dx)) % 360.0
    return min(int(angle // 60.0), 5)


def sector_clique_partition(rep: DeltaRepresentation, members: Iterable[int], base: int) -> dict[int, list[int]]:
    """Split vertices around ``base`` into at most six cliques by center angle.

    Every member must touch ``base`` and be at least as large; two such disks
    whose directions from ``base`` differ by less than 60 degrees intersect.
    """
    b = rep.disk(base)
    sectors: dict[int, list[int]] = {}
    for v in sorted(members):
        d = rep.disk(v)
        if v != base and (not disks_intersect(b, d) or d.radius < b.radius):
            raise InvariantViolation(f"vertex {v} is not a larger neighbor of base {base}")
        sectors.setdefault(sector_of(b, d), []).append(v)
    g, pos = rep.graph, rep.pos
    for s, vs in sectors.items():
        if not is_clique(g, [pos[v] for v in vs]):
            raise InvariantViolation(f"sector {s} around base {base} is not a clique")
    return dict(sorted(sectors.items()))


MIS_WINDOW = 9
SECTORS = 6


@dataclass
class DeltaApproxResult:
    coloring: Coloring
    k: int
    layers: LayerPartition
    mis: list[list[int]]
    # (layer, mis index, sector) per vertex before flattening
    labels: dict[int, tuple[int, int, int]]

    def __iter__(self):
        return iter((self.coloring, self.k))


def delta_color_approx(rep: DeltaRepresentation) -> DeltaApproxResult:
    """Constant-factor approximation: at most 54 colors per external layer.

    The number of layers ``k`` is a lower bound on the subchromatic number.
    """
    g, pos, ids = rep.graph, rep.pos, rep.ids
    layers = external_layers(g)
    labels: dict[int, tuple[int, int, int]] = {}
    mis_all = []
    for li, layer in enumerate(layers.layers):
        layer_ids = [ids[v] for v in layer]
        mis = greedy_mis_by_radius(rep, layer_ids)
        mis_all.append(mis)
        rank = {v: i for i, v in enumerate(mis)}
        buckets: dict[int, list[int]] = {}
        for v in layer_ids:
            if v in rank:
                first = rank[v]
            else:
                nbrs = g.adj_sets[pos[v]]
                first = min(rank[s] for s in mis if pos[s] in nbrs)
            buckets.setdefault(first, []).append(v)
        for i, members in buckets.items():
            for s, clique in sector_clique_partition(rep, members, mis[i]).items():
                for v in clique:
                    labels[v] = (li, i % MIS_WINDOW, s)
    flat = {lab: n for n, lab in enumerate(sorted(set(labels.values())))}
    coloring = Coloring({v: flat[lab] for v, lab in labels.items()}).canonical()
    _require_valid(rep, coloring, "delta_color_approx")
    return DeltaApproxResult(coloring, layers.k, layers, mis_all, labels)


def max_consecutive_mis_neighbors(rep: DeltaRepresentation, layer_ids: Iterable[int], mis: Sequence[int]) -> int:
    """Longest run of consecutive ``mis`` entries all adjacent to one layer vertex."""
    g, pos = rep.graph, rep.pos
    best = 0
    for v in layer_ids:
        nbrs = g.adj_sets[pos[v]]
        run = 0
        for s in mis:
            run = run + 1 if pos[s] in nbrs else 0
            best = max(best, run)
    return best
