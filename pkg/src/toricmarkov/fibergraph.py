"""Fibers of a configuration matrix and their fiber graphs.

Two elements of a fiber are adjacent when their supports intersect. The
connected components are found by contracting, for every coordinate, the
clique of elements positive on it inside a disjoint-set forest; the
quadratic edge set is never built.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FiberTooLarge
from .exactla import ConfigMatrix, IntVector

DEFAULT_FIBER_LIMIT = 10**6


def default_fiber_limit() -> int:
    env = os.environ.get("TORIC_MARKOV_FIBER_LIMIT")
    return int(env) if env else DEFAULT_FIBER_LIMIT


@dataclass(frozen=True)
class Fiber:
    key: IntVector
    elements: tuple[IntVector, ...]

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class FiberGraph:
    fiber: Fiber
    components: tuple[tuple[int, ...], ...]

    @property
    def key(self) -> IntVector:
        return self.fiber.key

    @property
    def component_sizes(self) -> list[int]:
        return [len(c) for c in self.components]

    @property
    def component_elements(self) -> list[list[IntVector]]:
        els = self.fiber.elements
        return [[els[i] for i in comp] for comp in self.components]

    @property
    def n_components(self) -> int:
        return len(self.components)


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        # members come out ascending; order groups by smallest member
        return sorted(out.values(), key=lambda g: g[0])


def enumerate_fiber(A: ConfigMatrix, t: Sequence[int], limit: int | None = None) -> Fiber:
    """All ``u >= 0`` with ``A u = t``, sorted lexicographically.

    Depth-first over the coordinates with ``u_i <= (c.t) / (c.a_i)``; the
    remaining graded degree bounds every branch and fixes the last coordinate.
    """
    limit = default_fiber_limit() if limit is None else limit
    t = tuple(int(x) for x in t)
    n, d = A.n, A.d
    cols = A.columns
    w = A.weights
    total = A.degree(t)
    found: list[IntVector] = []
    if total < 0:
        return Fiber(t, ())

    u = [0] * n
    resid = list(t)

    def dfs(i: int, deg: int) -> None:
        # deg = c . resid, the graded degree still to be covered
        if i == n - 1:
            if deg % w[i]:
                return
            k = deg // w[i]
            col = cols[i]
            for r in range(d):
                if resid[r] != k * col[r]:
                    return
            u[i] = k
            found.append(tuple(u))
            if len(found) > limit:
                raise FiberTooLarge(t, limit)
            u[i] = 0
            return
        col, wi = cols[i], w[i]
        top = deg // wi
        for k in range(top + 1):
            if k:
                for r in range(d):
                    resid[r] -= col[r]
            u[i] = k
            dfs(i + 1, deg - k * wi)
        for r in range(d):
            resid[r] += top * col[r]
        u[i] = 0

    dfs(0, total)
    found.sort()
    return Fiber(t, tuple(found))


def components_by_support(elements: Sequence[Sequence[int]]) -> list[list[int]]:
    """Connected components of the support-intersection graph on ``elements``."""
    if not elements:
        return []
    n = len(elements[0])
    ds = DisjointSet(len(elements))
    first_on = [-1] * n
    for idx, u in enumerate(elements):
        for i in range(n):
            if u[i] > 0:
                if first_on[i] < 0:
                    first_on[i] = idx
                else:
                    ds.union(first_on[i], idx)
    return ds.groups()


def build_fiber_graph(fiber: Fiber) -> FiberGraph:
    comps = components_by_support(fiber.elements)
    return FiberGraph(fiber, tuple(tuple(c) for c in comps))


def fiber_graph(A: ConfigMatrix, t: Sequence[int], limit: int | None = None) -> FiberGraph:
    """Fiber graph ``G_t``, memoized on ``A`` keyed by the exact tuple ``t``."""
    key = tuple(int(x) for x in t)
    if A.caching:
        hit = A._fiber_cache.get(key)
        if hit is not None:
            return hit
    graph = build_fiber_graph(enumerate_fiber(A, key, limit))
    if A.caching:
        with A._cache_lock:
            graph = A._fiber_cache.setdefault(key, graph)
    return graph


def explicit_edges(elements: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Every support-intersecting pair ``(i, j)``, ``i < j``; quadratic."""
    edges = []
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if any(a > 0 and b > 0 for a, b in zip(elements[i], elements[j])):
                edges.append((i, j))
    return edges


def generating_fiber_graphs(
    A: ConfigMatrix, seed: Iterable[Sequence[int]], limit: int | None = None
) -> list[FiberGraph]:
    """Disconnected fiber graphs among the A-degrees of a generating set.

    Sorted by graded degree, then lexicographically by key.
    """
    keys = set()
    for z in seed:
        keys.add(A.apply(tuple(x if x > 0 else 0 for x in z)))
    keys = sorted(keys, key=lambda t: (A.degree(t), t))
    graphs = []
    for t in keys:
        g = fiber_graph(A, t, limit)
        if g.n_components >= 2:
            graphs.append(g)
    return graphs


def to_dot(graph: FiberGraph, name: str = "fiber") -> str:
    """Graphviz rendering with explicit support-intersection edges."""
    els = graph.fiber.elements
    label = ",".join(map(str, graph.key))
    lines = [f'graph "{name}" {{', f'  label="A-degree ({label})";']
    for i, u in enumerate(els):
        lines.append(f'  n{i} [label="({", ".join(map(str, u))})"];')
    for i, j in explicit_edges(els):
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
