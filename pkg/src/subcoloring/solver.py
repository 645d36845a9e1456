"""Exact k-subcoloring by backtracking.

The search keeps a color domain (bitmask) per vertex and propagates the
three ways a monochromatic induced P3 can arise:

* ``u``, ``v`` adjacent and equal: a vertex adjacent to exactly one of them
  loses that color;
* ``u``, ``v`` non-adjacent and equal: their common neighbors lose it.

Singleton domains are assigned immediately, which makes ladder-like gadgets
collapse without branching.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import InputError, SearchBudgetExceeded, SizeGuardError
from .graph import Coloring, IntersectionGraph, validate_subcoloring

DECISION_LIMIT = 64
OPTIMIZATION_LIMIT = 20
DEFAULT_NODE_BUDGET = 10_000_000


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Search:
    """Private state for one solver invocation over an induced subgraph."""

    def __init__(self, g: IntersectionGraph, vertices: list[int], k: int, node_budget: int | None):
        self.vertices = vertices
        self.k = k
        index = {v: i for i, v in enumerate(vertices)}
        n = len(vertices)
        self.n = n
        nbr = [0] * n
        for i, v in enumerate(vertices):
            mask = 0
            for w in g.adj[v]:
                j = index.get(w)
                if j is not None:
                    mask |= 1 << j
            nbr[i] = mask
        self.nbr = nbr
        self.index = index
        degree = [bin(m).count("1") for m in nbr]
        # static tie-break: descending degree, then id
        self.rank = {i: r for r, i in enumerate(sorted(range(n), key=lambda i: (-degree[i], vertices[i])))}
        self.node_budget = node_budget
        self.nodes = 0

    # state: (colors list, domains list, colmask list)

    def assign(self, state, i: int, c: int) -> bool:
        colors, domains, colmask = state
        nbr = self.nbr
        queue = [(i, c)]
        while queue:
            v, col = queue.pop()
            if colors[v] >= 0:
                if colors[v] != col:
                    return False
                continue
            bit = 1 << col
            if not domains[v] & bit:
                return False
            colors[v] = col
            domains[v] = bit
            vbit = 1 << v
            same = colmask[col]
            colmask[col] = same | vbit
            nv = nbr[v]
            barred = 0
            # adjacent, same color: bar the symmetric difference of neighborhoods
            for u in _bits(nv & same):
                barred |= (nbr[u] ^ nv) & ~((1 << u) | vbit)
            # non-adjacent, same color: bar every common neighbor
            for w in _bits(nv):
                if nbr[w] & same & ~nv & ~vbit:
                    barred |= 1 << w
            if barred & colmask[col]:
                return False
            for w in _bits(barred):
                if colors[w] >= 0:
                    continue
                d = domains[w] & ~bit
                if d == 0:
                    return False
                if d != domains[w]:
                    domains[w] = d
                    if d & (d - 1) == 0:
                        queue.append((w, d.bit_length() - 1))
        return True

    def initial_state(self, fixed: Mapping[int, int]):
        full = (1 << self.k) - 1
        state = ([-1] * self.n, [full] * self.n, [0] * self.k)
        for v, c in sorted(fixed.items()):
            if not 0 <= c < self.k:
                raise InputError(f"fixed color {c} for vertex {v} not below k={self.k}")
            if v not in self.index:
                raise InputError(f"fixed vertex {v} not in the graph")
            if not self.assign(state, self.index[v], c):
                return None
        return state

    def _pick(self, state) -> int:
        colors, domains, _ = state
        best = -1
        best_key = None
        for i in range(self.n):
            if colors[i] < 0:
                key = (bin(domains[i]).count("1"), self.rank[i])
                if best_key is None or key < best_key:
                    best, best_key = i, key
        return best

    def solutions(self, state, symmetry: bool) -> Iterator[list[int]]:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise SearchBudgetExceeded(f"search exceeded {self.node_budget} nodes")
        i = self._pick(state)
        if i < 0:
            yield list(state[0])
            return
        colors, domains, colmask = state
        options = domains[i]
        if symmetry:
            used = 0
            for c in range(self.k):
                if colmask[c]:
                    used |= 1 << c
            fresh = ~used & ((1 << self.k) - 1)
            if fresh:
                used |= fresh & -fresh
            options &= used
        for c in _bits(options):
            child = (list(colors), list(domains), list(colmask))
            if self.assign(child, i, c):
                yield from self.solutions(child, symmetry)


def _prepare(g, k, fixed, vertices, limit):
    if k < 1:
        raise InputError("k must be at least 1")
    verts = list(range(g.n)) if vertices is None else sorted(set(vertices))
    if limit is not None and len(verts) > limit:
        raise SizeGuardError(f"{len(verts)} vertices exceed the exact-solver limit of {limit}")
    return verts, dict(fixed or {})


def iter_subcolorings(
    g: IntersectionGraph,
    k: int,
    fixed: Mapping[int, int] | None = None,
    *,
    vertices: Iterable[int] | None = None,
    symmetry: bool = False,
    limit: int | None = DECISION_LIMIT,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> Iterator[Coloring]:
    """Every k-subcoloring extending ``fixed`` (one per color-permutation class if ``symmetry``)."""
    verts, fixed = _prepare(g, k, fixed, vertices, limit)
    search = _Search(g, verts, k, node_budget)
    state = search.initial_state(fixed)
    if state is None:
        return
    for sol in search.solutions(state, symmetry):
        yield Coloring({verts[i]: c for i, c in enumerate(sol)})


def decide_k_subcoloring(
    g: IntersectionGraph,
    k: int,
    fixed: Mapping[int, int] | None = None,
    *,
    vertices: Iterable[int] | None = None,
    limit: int | None = DECISION_LIMIT,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> Coloring | None:
    """A subcoloring with at most ``k`` colors extending ``fixed``, or None if none exists.

    With ``vertices`` the question is asked about the induced subgraph only.
    Raises :class:`SizeGuardError` above ``limit`` vertices and
    :class:`SearchBudgetExceeded` when the node budget runs out.
    """
    for sol in iter_subcolorings(
        g, k, fixed, vertices=vertices, symmetry=True, limit=limit, node_budget=node_budget
    ):
        return sol
    return None


def exact_subchromatic(g: IntersectionGraph, *, limit: int | None = OPTIMIZATION_LIMIT) -> tuple[int, Coloring]:
    if limit is not None and g.n > limit:
        raise SizeGuardError(f"{g.n} vertices exceed the optimization limit of {limit}")
    if g.n == 0:
        return 0, Coloring()
    for k in range(1, g.n + 1):
        sol = decide_k_subcoloring(g, k, limit=None)
        if sol is not None:
            assert validate_subcoloring(g, sol)
            return k, sol.canonical()
    raise AssertionError("n colors always suffice")
