"""Median-line decomposition of general disk graphs.

The outer recursion cuts along the horizontal line through the median
ordinate. The disks crossing that line form a linear disk graph, which the
inner recursion cuts along vertical median lines. Every disk crossing both
lines either contains their crossing point (a clique bucket) or sits in one
open quadrant, where a translation and reflection turn it into a delta-disk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .delta import DeltaRepresentation, delta_color_approx, delta_color_log, delta_violation
from .errors import InputError, InvariantViolation
from .geometry import Disk, DiskInstance, Point, median_coordinate, point_in_disk
from .graph import Coloring, build_intersection_graph, is_clique, is_cluster_graph, subcoloring_violation

QUADRANTS = (1, 2, 3, 4)


def log2_ceil(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def _split(disks: Sequence[Disk], axis: int) -> tuple[float, list[int], list[int], list[int]]:
    """Cut at the lower median of coordinate ``axis`` (0 = x, 1 = y).

    Returns ``(median, crossing, low, high)`` as id lists; tangent disks cross.
    """
    coords = [d.center.x if axis == 0 else d.center.y for d in disks]
    med = median_coordinate(coords)
    crossing, low, high = [], [], []
    for d, c in zip(disks, coords):
        if abs(c - med) <= d.radius:
            crossing.append(d.id)
        elif c < med:
            low.append(d.id)
        else:
            high.append(d.id)
    return med, crossing, low, high


def _subset(instance: DiskInstance, subset: Iterable[int] | None) -> list[Disk]:
    if subset is None:
        return list(instance.disks)
    by_id = instance.by_id
    return [by_id[v] for v in sorted(set(subset))]


def horizontal_median_separator(
    instance: DiskInstance, subset: Iterable[int] | None = None
) -> tuple[list[int], list[int], list[int]]:
    """``(S, A, B)``: disks crossing the median horizontal line, those below, those above."""
    disks = _subset(instance, subset)
    if not disks:
        raise InputError("separator of an empty subset")
    _, s, a, b = _split(disks, 1)
    return s, a, b


def transform_to_delta(disk: Disk, p: Point, quadrant: int) -> Disk:
    """Move ``p`` to the origin and reflect ``disk`` into the positive quadrant."""
    dx = disk.center.x - p.x
    dy = disk.center.y - p.y
    sx, sy = {1: (1, 1), 2: (-1, 1), 3: (-1, -1), 4: (1, -1)}[quadrant]
    if not (sx * dx > 0 and sy * dy > 0):
        raise InputError(f"disk {disk.id} is not strictly inside quadrant {quadrant}")
    out = Disk(disk.id, Point(abs(dx), abs(dy)), disk.radius)
    why = delta_violation(out)
    if why is not None:
        raise InputError(f"disk {disk.id} {why} after moving to quadrant 1")
    return out


def quadrant_of(disk: Disk, p: Point) -> int:
    dx = disk.center.x - p.x
    dy = disk.center.y - p.y
    if dx == 0 or dy == 0:
        # crossing both lines with the center on one of them forces p inside
        raise InvariantViolation(f"disk {disk.id} has its center on a cut line but misses the crossing point")
    if dx > 0:
        return 1 if dy > 0 else 4
    return 2 if dy > 0 else 3


@dataclass
class LinearNode:
    """One vertical cut of a linear disk graph whose disks all cross ``y = line_y``."""

    line_y: float
    x_med: float
    vertices: list[int]
    crossing: list[int]
    pieces: dict[int, DeltaRepresentation]
    clique: list[int]
    left: LinearNode | None
    right: LinearNode | None
    depth: int

    def walk(self) -> Iterator[LinearNode]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            for child in (node.right, node.left):
                if child is not None:
                    stack.append(child)


@dataclass
class DiskNode:
    """One horizontal cut; ``linear`` decomposes the separator."""

    y_med: float
    vertices: list[int]
    separator: list[int]
    below: DiskNode | None
    above: DiskNode | None
    linear: LinearNode
    depth: int

    def walk(self) -> Iterator[DiskNode]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            for child in (node.above, node.below):
                if child is not None:
                    stack.append(child)


@dataclass
class DecompositionTree:
    instance: DiskInstance
    root: DiskNode | None
    n: int = field(init=False)

    def __post_init__(self):
        self.n = len(self.instance.disks)

    def disk_nodes(self) -> Iterator[DiskNode]:
        return self.root.walk() if self.root is not None else iter(())

    def pieces(self) -> Iterator[tuple[int, int, int, DeltaRepresentation | list[int]]]:
        """``(disk depth, linear depth, tag, piece)``; tag 5 marks a clique bucket."""
        for dn in self.disk_nodes():
            for ln in dn.linear.walk():
                for q in QUADRANTS:
                    if q in ln.pieces:
                        yield dn.depth, ln.depth, q, ln.pieces[q]
                if ln.clique:
                    yield dn.depth, ln.depth, 5, ln.clique

    def lines(self) -> list[str]:
        """Indented text dump, one line per node."""
        out = [f"tree n={self.n}"]
        for dn in self.disk_nodes():
            pad = "  " * dn.depth
            out.append(
                f"{pad}disk depth={dn.depth} y={dn.y_med!r} size={len(dn.vertices)} "
                f"S={_ids(dn.separator)} below={len(dn.below.vertices) if dn.below else 0} "
                f"above={len(dn.above.vertices) if dn.above else 0}"
            )
            for ln in dn.linear.walk():
                lpad = pad + "  " + "  " * ln.depth
                parts = " ".join(f"Q{q}={_ids(ln.pieces[q].ids)}" for q in QUADRANTS if q in ln.pieces)
                out.append(
                    f"{lpad}linear depth={ln.depth} x={ln.x_med!r} size={len(ln.vertices)} "
                    f"V5={_ids(ln.clique)}" + (" " + parts if parts else "")
                )
        return out


def _ids(vs: Iterable[int]) -> str:
    return "[" + ",".join(str(v) for v in sorted(vs)) + "]"


def vertical_split_linear(
    instance: DiskInstance, subset: Iterable[int], line_y: float
) -> tuple[float, dict[int, DeltaRepresentation], list[int], list[int], list[int]]:
    """Split disks crossing ``y = line_y`` at their median abscissa.

    Returns ``(x_med, pieces, clique, left, right)``. ``pieces`` maps a quadrant
    to the delta-disks of the crossing disks whose center lies in it; ``clique``
    holds the crossing disks containing the crossing point.
    """
    disks = _subset(instance, subset)
    if not disks:
        raise InputError("split of an empty subset")
    for d in disks:
        if abs(d.center.y - line_y) > d.radius:
            raise InputError(f"disk {d.id} does not cross the line y = {line_y!r}")
    x_med, crossing, left, right = _split(disks, 0)
    p = Point(x_med, line_y)
    by_id = instance.by_id
    clique: list[int] = []
    buckets: dict[int, list[Disk]] = {}
    for v in crossing:
        d = by_id[v]
        if point_in_disk(p, d):
            clique.append(v)
        else:
            buckets.setdefault(quadrant_of(d, p), []).append(d)
    pieces = {}
    for q in sorted(buckets):
        try:
            moved = [transform_to_delta(d, p, q) for d in buckets[q]]
        except InputError as exc:
            raise InvariantViolation(f"quadrant {q} transform failed: {exc}") from exc
        pieces[q] = DeltaRepresentation(moved)
    return x_med, pieces, clique, left, right


def _linear_tree(instance: DiskInstance, vertices: list[int], line_y: float, depth: int) -> LinearNode:
    x_med, pieces, clique, left, right = vertical_split_linear(instance, vertices, line_y)
    crossing = sorted(clique + [v for rep in pieces.values() for v in rep.ids])
    node = LinearNode(
        line_y, x_med, vertices, crossing, pieces, sorted(clique),
        _linear_tree(instance, left, line_y, depth + 1) if left else None,
        _linear_tree(instance, right, line_y, depth + 1) if right else None,
        depth,
    )
    return node


def _disk_tree(instance: DiskInstance, vertices: list[int], depth: int) -> DiskNode:
    disks = _subset(instance, vertices)
    y_med, s, a, b = _split(disks, 1)
    return DiskNode(
        y_med, vertices, s,
        _disk_tree(instance, a, depth + 1) if a else None,
        _disk_tree(instance, b, depth + 1) if b else None,
        _linear_tree(instance, s, y_med, 0),
        depth,
    )


def decompose(instance: DiskInstance, check: bool = True) -> DecompositionTree:
    ids = sorted(d.id for d in instance.disks)
    tree = DecompositionTree(instance, _disk_tree(instance, ids, 0) if ids else None)
    if check:
        check_tree(tree)
    return tree


def check_tree(tree: DecompositionTree) -> None:
    """Assert every structural invariant; raises :class:`InvariantViolation`."""
    g = build_intersection_graph(tree.instance) if _dense_ids(tree.instance) else None

    def no_cross(a, b, what):
        if g is None:
            return
        bs = set(b)
        for u in a:
            if g.adj_sets[u] & bs:
                raise InvariantViolation(f"{what}: edge leaves vertex {u} across the cut")

    def balanced(node_size, side, what):
        if len(side) > (node_size + 1) // 2:
            raise InvariantViolation(f"{what}: side of size {len(side)} out of {node_size}")

    for dn in tree.disk_nodes():
        below = dn.below.vertices if dn.below else []
        above = dn.above.vertices if dn.above else []
        if not dn.separator:
            raise InvariantViolation("empty horizontal separator")
        if sorted(dn.separator + below + above) != sorted(dn.vertices):
            raise InvariantViolation("horizontal cut does not partition its vertices")
        balanced(len(dn.vertices), below, "horizontal cut")
        balanced(len(dn.vertices), above, "horizontal cut")
        no_cross(below, above, "horizontal cut")
        if sorted(dn.linear.vertices) != sorted(dn.separator):
            raise InvariantViolation("linear tree does not cover the separator")
        for ln in dn.linear.walk():
            left = ln.left.vertices if ln.left else []
            right = ln.right.vertices if ln.right else []
            if not ln.crossing:
                raise InvariantViolation("empty vertical separator")
            if sorted(ln.crossing + left + right) != sorted(ln.vertices):
                raise InvariantViolation("vertical cut does not partition its vertices")
            balanced(len(ln.vertices), left, "vertical cut")
            balanced(len(ln.vertices), right, "vertical cut")
            no_cross(left, right, "vertical cut")
            if g is not None and not is_clique(g, ln.clique):
                raise InvariantViolation("clique bucket is not a clique")
            for q, rep in ln.pieces.items():
                if g is not None:
                    for i, u in enumerate(rep.ids):
                        for j in range(i + 1, len(rep.ids)):
                            if rep.graph.has_edge(i, j) != g.has_edge(u, rep.ids[j]):
                                raise InvariantViolation(f"quadrant {q} piece changed adjacency of {u}")


def _dense_ids(instance: DiskInstance) -> bool:
    return sorted(d.id for d in instance.disks) == list(range(len(instance.disks)))


def log3_bound(n: int) -> int:
    l = log2_ceil(n)
    return (l + 1) * (l + 1) * (4 * (2 * l + 1) + 1)


def color_disk_log3(instance: DiskInstance, tree: DecompositionTree | None = None) -> Coloring:
    """Subcoloring with at most ``log3_bound(n)`` colors.

    A color is the slot ``(disk depth, linear depth, piece slot)``: quadrant
    ``q`` owns ``2L + 1`` slots for its delta coloring and the clique bucket
    one more. Sibling branches share slots since no edge joins them.
    """
    n = len(instance.disks)
    tree = tree or decompose(instance)
    width = 2 * log2_ceil(n) + 1
    colors: dict[int, tuple[int, int, int]] = {}
    for d, e, tag, piece in tree.pieces():
        if tag == 5:
            for v in piece:
                colors[v] = (d, e, 4 * width)
            continue
        local = delta_color_log(piece)
        if local.num_colors > width:
            raise InvariantViolation(f"delta piece used {local.num_colors} colors, more than {width}")
        for v, c in local.colors.items():
            colors[v] = (d, e, (tag - 1) * width + c)
    return _finish(instance, colors, "color_disk_log3")


def _finish(instance: DiskInstance, keys: dict, who: str) -> Coloring:
    flat = {k: i for i, k in enumerate(sorted(set(keys.values())))}
    coloring = Coloring({v: flat[k] for v, k in keys.items()}).canonical()
    g = build_intersection_graph(instance)
    bad = subcoloring_violation(g, coloring)
    if bad is not None:
        raise InvariantViolation(f"{who} produced a monochromatic P3 {bad}")
    return coloring


@dataclass
class DiskApproxResult:
    coloring: Coloring
    lower_bound: int
    groups: int

    def __iter__(self):
        return iter((self.coloring, self.lower_bound))


def group_bound(n: int) -> int:
    return 5 * (log2_ceil(n) + 1) ** 2


def color_disk_approx(instance: DiskInstance, tree: DecompositionTree | None = None) -> DiskApproxResult:
    """Approximate subcoloring with a certified lower bound.

    Pieces sharing ``(disk depth, linear depth, tag)`` form one group and
    share a palette; the delta pieces are colored by the layer method and each
    clique group takes a single color. The lower bound is the largest layer
    count of a delta piece, raised to 1 (non-empty) or 2 (not a cluster graph).
    """
    n = len(instance.disks)
    g = build_intersection_graph(instance)
    if n == 0:
        return DiskApproxResult(Coloring(), 0, 0)
    if is_cluster_graph(g):
        return DiskApproxResult(Coloring({v: 0 for v in range(n)}), 1, 1)
    tree = tree or decompose(instance)
    keys: dict[int, tuple[int, int, int, int]] = {}
    groups = set()
    lower = 2
    for d, e, tag, piece in tree.pieces():
        groups.add((d, e, tag))
        if tag == 5:
            for v in piece:
                keys[v] = (d, e, tag, 0)
            continue
        res = delta_color_approx(piece)
        lower = max(lower, res.k)
        for v, c in res.coloring.colors.items():
            keys[v] = (d, e, tag, c)
    if len(groups) > group_bound(n):
        raise InvariantViolation(f"{len(groups)} groups exceed {group_bound(n)}")
    return DiskApproxResult(_finish(instance, keys, "color_disk_approx"), lower, len(groups))
