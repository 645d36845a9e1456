"""Instance families: BC(k), interval embeddings, hardness gadgets, random instances.

Gadget vertex numbering
-----------------------
``ladder(k)`` / ``forbidding(k)``
    rung ``i`` (1-based) is ``a_i = 2(i-1)`` and ``b_i = 2(i-1) + 1``; the
    ports of the forbidding gadget are ``a_1 = 0`` and ``b_1 = 1``.
``c4`` / ``c5``
    ``0..n-1`` in cyclic order.
``matched_cliques(n)``
    ``a_i = i - 1`` and ``b_i = n + i - 1``.
``k444``
    parts ``{0..3}``, ``{4..7}``, ``{8..11}``.
``clause``
    the 5-cycle is ``0..4`` (``a_1..a_5``); the forbidding gadget on
    ``(a_4, a_5)`` takes ids ``5..56``, the one on ``(a_5, a_1)`` ids ``57..108``
    (rung 1 of each is the shared port pair).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .delta import DeltaRepresentation, first_delta_violation
from .errors import EmbeddingError, InputError
from .geometry import UNIT_RADIUS, Disk, DiskInstance, disks_intersect
from .graph import IntersectionGraph

# ---------------------------------------------------------------------------
# gadgets


@dataclass(frozen=True)
class GadgetSpec:
    variant: str
    k: int | None = None

    VARIANTS = ("ladder", "forbidding", "clause", "matched_cliques", "k444", "c5", "c4")

    def __post_init__(self):
        if self.variant not in self.VARIANTS:
            raise InputError(f"unknown gadget {self.variant!r}")
        if self.variant == "ladder" and (self.k is None or self.k < 1):
            raise InputError("ladder needs k >= 1")
        if self.variant == "forbidding" and (self.k is None or self.k < 25):
            raise InputError("forbidding gadget needs k >= 25")
        if self.variant == "matched_cliques" and (self.k is None or self.k < 3):
            raise InputError("matched cliques need n >= 3")


def _ladder_edges(k: int, offset: int = 0) -> list[tuple[int, int]]:
    a = lambda i: offset + 2 * (i - 1)
    b = lambda i: offset + 2 * (i - 1) + 1
    edges = [(a(i), b(i)) for i in range(1, k + 1)]
    for i in range(1, k):
        edges += [(a(i), a(i + 1)), (b(i), b(i + 1))]
    return edges


def _forbidding_edges(k: int) -> list[tuple[int, int]]:
    return _ladder_edges(k) + [(2 * (k - 1) + 1, 2 * (k - 25) + 1)]


def _cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % n) for i in range(n)]


def _clause_graph() -> IntersectionGraph:
    edges = _cycle_edges(5)
    nxt = 5
    for pa, pb in ((3, 4), (4, 0)):  # (a4, a5) and (a5, a1)
        fk = _forbidding_edges(27)
        # rung 1 of the gadget is the port pair; the other 52 vertices are fresh
        local = {0: pa, 1: pb}
        for v in range(2, 54):
            local[v] = nxt + v - 2
        nxt += 52
        edges += [(local[u], local[v]) for u, v in fk]
    return IntersectionGraph.from_edges(nxt, edges)


def gen_gadget(spec: GadgetSpec) -> IntersectionGraph:
    v, k = spec.variant, spec.k
    if v == "ladder":
        return IntersectionGraph.from_edges(2 * k, _ladder_edges(k))
    if v == "forbidding":
        return IntersectionGraph.from_edges(2 * k, _forbidding_edges(k))
    if v == "c4":
        return IntersectionGraph.from_edges(4, _cycle_edges(4))
    if v == "c5":
        return IntersectionGraph.from_edges(5, _cycle_edges(5))
    if v == "matched_cliques":
        edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
        edges += [(k + i, k + j) for i in range(k) for j in range(i + 1, k)]
        edges += [(i, k + i) for i in range(k)]
        return IntersectionGraph.from_edges(2 * k, edges)
    if v == "k444":
        part = lambda x: x // 4
        edges = [(u, w) for u in range(12) for w in range(u + 1, 12) if part(u) != part(w)]
        return IntersectionGraph.from_edges(12, edges)
    return _clause_graph()


# ---------------------------------------------------------------------------
# BC(k)


def bc_graph(k: int) -> IntersectionGraph:
    """BC(k): copies on ``0..n'-1`` and ``n'..2n'-1``, universal vertex last."""
    if k < 1:
        raise InputError("BC(k) needs k >= 1")
    n, edges = 1, []
    for _ in range(2, k + 1):
        edges = edges + [(u + n, v + n) for u, v in edges]
        edges += [(u, 2 * n) for u in range(2 * n)]
        n = 2 * n + 1
    return IntersectionGraph.from_edges(n, edges)


_BC_TOP = 1.9


def _bc_disks(k: int) -> list[tuple[float, float, float]]:
    """Proper disks for BC(k), each crossing both lines y = 0 and y = 1.

    The two scaled copies span y = 0..2. The second copy is mirrored about
    y = 1 so that its large disks bulge upward while the first copy's bulge
    downward; it is then pushed right just past the last shift at which any
    pair of disks from the two copies would touch. The covering disk has its
    top at y = 1.9, so it reaches y = 0 and y = 1 but not y = 2, and its chord
    on y = 1 covers both copies' traces with a unit margin. Keeping the top
    close to y = 2 keeps the covering radius small: radii still grow fast
    enough that k = 7 is beyond double precision.
    """
    if k == 1:
        return [(0.0, 0.5, 1.0)]
    sub = _bc_disks(k - 1)
    first = [(2 * x, 2 * y, 2 * r) for x, y, r in sub]
    second = [(2 * x, 2 - 2 * y, 2 * r) for x, y, r in sub]
    shift = -math.inf
    for xa, ya, ra in first:
        for xb, yb, rb in second:
            reach = (ra + rb) ** 2 - (yb - ya) ** 2
            if reach >= 0:
                shift = max(shift, xa - xb + math.sqrt(reach))
    shift += 1.0
    second = [(x + shift, y, r) for x, y, r in second]
    # traces on y = 1
    lo = min(x - math.sqrt(r * r - (1 - y) ** 2) for x, y, r in first + second)
    hi = max(x + math.sqrt(r * r - (1 - y) ** 2) for x, y, r in first + second)
    half = (hi - lo) / 2 + 1.0
    sag = _BC_TOP - 1.0
    big_r = (half * half + sag * sag) / (2 * sag)
    center = (lo + hi) / 2
    disks = first + second + [(center, _BC_TOP - big_r, big_r)]
    return [(x - center, y, r) for x, y, r in disks]


def gen_bc(k: int) -> tuple[IntersectionGraph, DiskInstance]:
    """Abstract BC(k) and a proper disk representation with the same vertex numbering."""
    g = bc_graph(k)
    inst = DiskInstance.from_tuples(_bc_disks(k))
    return g, inst


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class IntervalSet:
    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        for a, b in ivs:
            if not (math.isfinite(a) and math.isfinite(b) and a < b):
                raise InputError(f"bad interval ({a}, {b})")
        ends = [e for iv in ivs for e in iv]
        if len(set(ends)) != len(ends):
            spread = _separate_endpoints(ivs)
            flat = [e for iv in spread for e in iv]
            if len(set(flat)) != len(flat) or _interval_graph(spread).adj != _interval_graph(ivs).adj:
                raise InputError("could not separate tied endpoints at this precision")
            ivs = spread
        object.__setattr__(self, "intervals", ivs)

    def __len__(self) -> int:
        return len(self.intervals)

    def graph(self) -> IntersectionGraph:
        return _interval_graph(self.intervals)


def _interval_graph(ivs) -> IntersectionGraph:
    edges = [
        (i, j)
        for i in range(len(ivs))
        for j in range(i + 1, len(ivs))
        if ivs[i][0] <= ivs[j][1] and ivs[j][0] <= ivs[i][1]
    ]
    return IntersectionGraph.from_edges(len(ivs), edges)


def _separate_endpoints(ivs):
    """Spread tied endpoints apart without changing the intersection graph.

    Within a tie, left endpoints go first (closed intervals that touch keep
    overlapping), then by interval index. The spread stays below a quarter of
    the smallest gap between distinct values, so no strict order changes.
    """
    ends = sorted({e for iv in ivs for e in iv})
    gaps = [b - a for a, b in zip(ends, ends[1:])]
    eps = (min(gaps) if gaps else 1.0) / 4
    ties: dict[float, list[tuple[int, int]]] = {}
    for i, (a, b) in enumerate(ivs):
        ties.setdefault(a, []).append((0, i))
        ties.setdefault(b, []).append((1, i))
    out = [list(iv) for iv in ivs]
    for value, group in ties.items():
        group.sort()
        for rank, (side, i) in enumerate(group):
            out[i][side] = value + eps * (rank - (len(group) - 1) / 2) / len(group)
    return tuple((a, b) for a, b in out)


def gen_random_intervals(n: int, seed: int, span: float = 100.0, max_len: float = 20.0) -> IntervalSet:
    rng = random.Random(seed)
    ivs = []
    for _ in range(n):
        a = rng.uniform(0, span)
        ivs.append((a, a + rng.uniform(0.01, max_len)))
    return IntervalSet(tuple(ivs))


_LEFT = 1 - 1 / math.sqrt(2)  # leftmost diagonal point of D((t,t), t) sits at _LEFT * t
_NUDGES = (0.5, 0.25, 0.75, 0.125, 0.875, 0.375, 0.625, 0.0625)


def gen_interval_to_delta(intervals: IntervalSet) -> DeltaRepresentation:
    """Delta-disks centered on the diagonal whose diagonal chords mimic the intervals.

    Intervals are processed by right endpoint. A disk centered at ``(t, t)``
    with radius ``R`` covers the diagonal points ``(a, a)`` with
    ``|a - t| <= R / sqrt(2)``, and two such disks meet iff these chords
    overlap. A fresh left endpoint is placed between the images of its two
    neighboring earlier events, and the center is pushed far enough right that
    the new chord ends last and the disk still reaches both axes.
    """
    ivs = intervals.intervals
    order = sorted(range(len(ivs)), key=lambda i: ivs[i][1])
    target = intervals.graph()
    image: dict[float, float] = {}
    chords: dict[int, tuple[float, float]] = {}
    disks: dict[int, Disk] = {}
    last_right = None
    for step, v in enumerate(order):
        left, right = ivs[v]
        if step == 0:
            t, radius = 1.0, 1.0
            lo, hi = _LEFT, 2 - _LEFT
        elif left > ivs[order[step - 1]][1]:
            lo = last_right + max(1.0, last_right * 1e-3)
            t = lo / _LEFT
            radius = t
            hi = 2 * t - lo
        else:
            before = [image[e] for e in image if e < left]
            after = [image[e] for e in image if e > left]
            e1 = max(before) if before else 0.0
            e2 = min(after)
            disk = None
            for frac in _NUDGES:
                lo = e1 + frac * (e2 - e1)
                # the relative bump keeps max(x, y) <= r after rounding; the chord still starts at lo
                t = max(lo / _LEFT * (1 + 1e-9), last_right)
                radius = math.sqrt(2) * (t - lo)
                cand = Disk.at(v, t, t, radius)
                if first_delta_violation([cand]) is None and _matches(cand, v, disks, target):
                    disk = cand
                    break
            if disk is None:
                raise EmbeddingError(f"could not place interval {v} after {len(_NUDGES)} nudges")
            hi = 2 * t - lo
        disk = Disk.at(v, t, t, radius)
        if first_delta_violation([disk]) is not None or not _matches(disk, v, disks, target):
            raise EmbeddingError(f"interval {v} embedded with wrong adjacency")
        disks[v] = disk
        chords[v] = (lo, hi)
        image[left], image[right] = lo, hi
        last_right = hi
    rep = DeltaRepresentation([disks[v] for v in range(len(ivs))])
    if rep.graph.adj != target.adj:
        raise EmbeddingError("embedded graph differs from the interval graph")
    return rep


def _matches(cand: Disk, v: int, placed: dict[int, Disk], target: IntersectionGraph) -> bool:
    nbrs = target.adj_sets[v]
    return all(disks_intersect(cand, d) == (u in nbrs) for u, d in placed.items())


# ---------------------------------------------------------------------------
# random instances

BOUNDARY_MARGIN = 1e-6


def _near_region_boundary(x: float, y: float) -> bool:
    return (
        abs(x - round(x)) < BOUNDARY_MARGIN
        or abs(y - round(y)) < BOUNDARY_MARGIN
    )


def _near_hex_boundary(x: float, y: float) -> bool:
    from .unit import COL_PITCH, ODD_SHIFT, ROW_PITCH

    row = math.floor(y / ROW_PITCH)
    dists = []
    for i in (row - 1, row, row + 1, row + 2):
        shift = ODD_SHIFT if i % 2 else 0.0
        col = math.floor((x - shift) / COL_PITCH)
        for j in (col - 1, col, col + 1, col + 2):
            dists.append(math.hypot(x - (j * COL_PITCH + shift), y - i * ROW_PITCH))
    dists.sort()
    return dists[1] - dists[0] < BOUNDARY_MARGIN


def _stabilize(x: float, y: float) -> tuple[float, float]:
    """Move a point off region and hexagon boundaries by deterministic small steps."""
    step = 0
    while _near_region_boundary(x, y) or _near_hex_boundary(x, y):
        step += 1
        x += 3.1 * BOUNDARY_MARGIN
        y += 1.7 * BOUNDARY_MARGIN
        if step > 1000:
            raise AssertionError("could not move point off tiling boundaries")
    return x, y


def gen_random_unit(n: int, width: float, seed: int, height: float | None = None) -> DiskInstance:
    if n < 0 or width <= 0:
        raise InputError("need n >= 0 and width > 0")
    height = width if height is None else height
    rng = random.Random(seed)
    disks = []
    for i in range(n):
        x, y = _stabilize(rng.uniform(0, width), rng.uniform(0, height))
        disks.append(Disk.at(i, x, y, UNIT_RADIUS))
    return DiskInstance(tuple(disks), "unit")


def gen_random_delta(n: int, span: tuple[float, float], seed: int) -> DeltaRepresentation:
    """Delta-disks with ``|center|`` log-uniform over ``span``.

    The angle avoids the axes by enough that ``max(x, y) < |center| (1 - 1e-6)``
    always leaves a non-empty radius range.
    """
    lo, hi = span
    if n < 0 or not 0 < lo <= hi:
        raise InputError("need n >= 0 and 0 < span[0] <= span[1]")
    rng = random.Random(seed)
    edge = math.acos(1 - 2e-6)
    disks = []
    for i in range(n):
        d = math.exp(rng.uniform(math.log(lo), math.log(hi)))
        theta = rng.uniform(edge, math.pi / 2 - edge)
        x, y = d * math.cos(theta), d * math.sin(theta)
        r = rng.uniform(max(x, y), d * (1 - 1e-6))
        disks.append(Disk.at(i, x, y, r))
    return DeltaRepresentation(disks)


def gen_random_disks(
    n: int,
    radius_range: tuple[float, float],
    box: tuple[float, float],
    seed: int,
) -> DiskInstance:
    rmin, rmax = radius_range
    if n < 0 or not 0 < rmin <= rmax:
        raise InputError("need n >= 0 and 0 < rmin <= rmax")
    rng = random.Random(seed)
    disks = []
    for i in range(n):
        x, y = _stabilize(rng.uniform(0, box[0]), rng.uniform(0, box[1]))
        r = rmin if rmin == rmax else math.exp(rng.uniform(math.log(rmin), math.log(rmax)))
        disks.append(Disk.at(i, x, y, r))
    kind = "unit" if rmin == rmax == UNIT_RADIUS else "general"
    return DiskInstance(tuple(disks), kind)
