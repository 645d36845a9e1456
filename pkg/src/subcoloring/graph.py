"""Intersection graphs, cluster-graph tests and subcoloring validation.

Induced subgraphs are never copied: every query that makes sense on an
induced subgraph takes an optional ``vertices`` argument instead.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DuplicateIdError, InputError
from .geometry import Disk, DiskInstance, disks_intersect


@dataclass(frozen=True)
class IntersectionGraph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InputError("adjacency length does not match vertex count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "IntersectionGraph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                continue
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as integer bitmasks (bit ``u`` set iff ``u`` adjacent)."""
        out = []
        for a in self.adj:
            mask = 0
            for u in a:
                mask |= 1 << u
            out.append(mask)
        return tuple(out)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def edges(self):
        for u, a in enumerate(self.adj):
            for v in a:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def closed_nbhd(self, v: int) -> frozenset[int]:
        return self.adj_sets[v] | {v}


def build_intersection_graph(instance: DiskInstance) -> IntersectionGraph:
    """Intersection graph of an instance whose ids are exactly ``0..n-1``."""
    n = len(instance.disks)
    disks = [None] * n
    for d in instance.disks:
        if not 0 <= d.id < n:
            raise InputError(f"disk id {d.id} outside 0..{n - 1}")
        if disks[d.id] is not None:
            raise DuplicateIdError(f"duplicate disk id {d.id}")
        disks[d.id] = d
    return graph_of_disks(disks)


def graph_of_disks(disks: Sequence[Disk]) -> IntersectionGraph:
    """Intersection graph indexed by position in ``disks`` (ids are ignored).

    Candidate pairs come from a uniform grid with cell side equal to the
    largest diameter, so only the 3x3 block around each cell is scanned.
    """
    n = len(disks)
    if n == 0:
        return IntersectionGraph(0, ())
    cell = 2.0 * max(d.radius for d in disks)
    grid: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, d in enumerate(disks):
        grid[(math.floor(d.center.x / cell), math.floor(d.center.y / cell))].append(i)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for (cx, cy), members in grid.items():
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                other = grid.get((cx + dx, cy + dy))
                if not other:
                    continue
                for u in members:
                    du = disks[u]
                    for v in other:
                        if u < v and disks_intersect(du, disks[v]):
                            nbrs[u].append(v)
                            nbrs[v].append(u)
    return IntersectionGraph(n, tuple(tuple(sorted(a)) for a in nbrs))


def connected_components(g: IntersectionGraph, vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Components of ``g`` (or of the subgraph induced by ``vertices``).

    Each component is sorted; components are ordered by their smallest vertex.
    """
    if vertices is None:
        allowed = None
        order = range(g.n)
    else:
        allowed = set(vertices)
        order = sorted(allowed)
    seen: set[int] = set()
    comps = []
    for s in order:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w not in seen and (allowed is None or w in allowed):
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def _p3_in_component(g: IntersectionGraph, comp: Sequence[int], allowed) -> tuple[int, int, int] | None:
    size = len(comp)
    members = set(comp) if allowed is None else allowed
    for v in comp:
        deg = sum(1 for w in g.adj[v] if w in members) if allowed is not None else len(g.adj[v])
        if deg != size - 1:
            # some vertex of the component sits at distance exactly 2 from v
            for mid in g.adj[v]:
                if allowed is not None and mid not in allowed:
                    continue
                for w in g.adj[mid]:
                    if w != v and (allowed is None or w in allowed) and w not in g.adj_sets[v]:
                        return (v, mid, w)
            raise AssertionError("connected component without a distance-2 pair")
    return None


def find_induced_p3(g: IntersectionGraph, vertices: Iterable[int] | None = None) -> tuple[int, int, int] | None:
    """An induced path ``(a, b, c)`` with ``b`` in the middle, or None.

    A component is a clique iff every vertex has degree ``size - 1`` inside it,
    which gives the O(n + m) test.
    """
    allowed = None if vertices is None else set(vertices)
    for comp in connected_components(g, allowed):
        p3 = _p3_in_component(g, comp, allowed)
        if p3 is not None:
            return p3
    return None


def is_cluster_graph(g: IntersectionGraph, vertices: Iterable[int] | None = None) -> bool:
    return find_induced_p3(g, vertices) is None


def is_clique(g: IntersectionGraph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    for i, u in enumerate(vs):
        nu = g.adj_sets[u]
        for v in vs[i + 1:]:
            if v not in nu:
                return False
    return True


@dataclass
class Coloring:
    """Total map vertex -> color index."""

    colors: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_list(cls, seq: Sequence[int]) -> "Coloring":
        return cls({v: int(c) for v, c in enumerate(seq)})

    @property
    def num_colors(self) -> int:
        """``1 + max color`` (0 when empty); equals the class count once canonical."""
        return 1 + max(self.colors.values()) if self.colors else 0

    @property
    def used_colors(self) -> int:
        return len(set(self.colors.values()))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for v in sorted(self.colors):
            out[self.colors[v]].append(v)
        return dict(out)

    def canonical(self) -> "Coloring":
        """Renumber colors densely in order of first appearance over sorted ids."""
        relabel: dict[int, int] = {}
        out = {}
        for v in sorted(self.colors):
            c = self.colors[v]
            if c not in relabel:
                relabel[c] = len(relabel)
            out[v] = relabel[c]
        return Coloring(out)

    def restrict(self, vertices: Iterable[int]) -> "Coloring":
        return Coloring({v: self.colors[v] for v in vertices})


def _require_total(g: IntersectionGraph, c: Coloring | Mapping[int, int]) -> Mapping[int, int]:
    colors = c.colors if isinstance(c, Coloring) else c
    missing = [v for v in range(g.n) if v not in colors]
    if missing:
        raise InputError(f"coloring is not total: {len(missing)} vertices uncolored (first {missing[0]})")
    return colors


def subcoloring_violation(g: IntersectionGraph, c: Coloring | Mapping[int, int]) -> tuple[int, int, int] | None:
    """A monochromatic induced P3 ``(a, b, c)``, or None if ``c`` is a subcoloring."""
    colors = _require_total(g, c)
    by_color: dict[int, list[int]] = defaultdict(list)
    for v in range(g.n):
        by_color[colors[v]].append(v)
    for color in sorted(by_color):
        p3 = find_induced_p3(g, by_color[color])
        if p3 is not None:
            return p3
    return None


def validate_subcoloring(g: IntersectionGraph, c: Coloring | Mapping[int, int]) -> bool:
    return subcoloring_violation(g, c) is None
