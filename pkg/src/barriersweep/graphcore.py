"""Graph machinery: spanning forests, edge doubling, Eulerian circuits, matching."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from . import kernels
from .geometry import Point2D, dist

EXACT_MATCHING_LIMIT = 16


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: float
    tag: Any = None

    def key(self) -> tuple[float, int, int]:
        a, b = (self.u, self.v) if self.u <= self.v else (self.v, self.u)
        return (self.weight, a, b)


@dataclass
class WeightedGraph:
    vertex_count: int
    edges: list[Edge] = field(default_factory=list)

    def __post_init__(self):
        for e in self.edges:
            self._check(e)

    def _check(self, e: Edge) -> None:
        if not (0 <= e.u < self.vertex_count and 0 <= e.v < self.vertex_count):
            raise GraphError(f"edge ({e.u}, {e.v}) outside [0, {self.vertex_count})")
        if not (math.isfinite(e.weight) and e.weight >= 0):
            raise GraphError(f"bad edge weight {e.weight}")

    def add_edge(self, u: int, v: int, weight: float, tag: Any = None) -> Edge:
        e = Edge(u, v, float(weight), tag)
        self._check(e)
        self.edges.append(e)
        return e


@dataclass
class Forest:
    vertex_count: int
    edges: list[Edge]

    @property
    def component_count(self) -> int:
        return self.vertex_count - len(self.edges)

    @property
    def weight(self) -> float:
        return math.fsum(e.weight for e in self.edges)

    def components(self) -> list[list[int]]:
        """Vertex sets of each tree, sorted by smallest member."""
        uf = UnionFind(self.vertex_count)
        for e in self.edges:
            uf.union(e.u, e.v)
        groups: dict[int, list[int]] = {}
        for v in range(self.vertex_count):
            groups.setdefault(uf.find(v), []).append(v)
        return sorted(groups.values(), key=lambda g: g[0])


@dataclass
class Multigraph:
    """Edge multiset, optionally with vertex positions; carrier for Eulerian walks."""

    vertex_count: int
    edges: list[tuple[int, int, float]] = field(default_factory=list)
    positions: list[Point2D] | None = None

    @property
    def weight(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def kruskal_forest(g: WeightedGraph, k: int = 1, forced: Iterable[Edge] = ()) -> Forest:
    """Minimum spanning forest with exactly ``k`` components containing ``forced``.

    Forced edges are unioned first; the remaining edges are scanned in
    ``(weight, u, v)`` order until ``k`` components remain.
    """
    n = g.vertex_count
    if not 1 <= k <= max(n, 1):
        raise GraphError(f"k={k} outside [1, {n}]")
    uf = UnionFind(n)
    chosen: list[Edge] = []
    forced = list(forced)
    for e in forced:
        if not uf.union(e.u, e.v):
            raise GraphError(f"forced edges contain a cycle at ({e.u}, {e.v})")
        chosen.append(e)
    comps = n - len(chosen)
    if comps < k:
        raise GraphError(f"forced edges leave {comps} components, fewer than k={k}")
    forced_ids = {id(e) for e in forced}
    for e in sorted(g.edges, key=Edge.key):
        if comps == k:
            break
        if id(e) in forced_ids:
            continue
        if uf.union(e.u, e.v):
            chosen.append(e)
            comps -= 1
    if comps != k:
        raise GraphError(f"graph is disconnected; cannot reach k={k} components")
    return Forest(n, chosen)


def double_edges(f: Forest | Multigraph) -> Multigraph:
    if isinstance(f, Forest):
        base = [(e.u, e.v, e.weight) for e in f.edges]
        positions = None
    else:
        base = list(f.edges)
        positions = f.positions
    doubled = []
    for e in base:
        doubled.append(e)
        doubled.append(e)
    return Multigraph(f.vertex_count, doubled, positions)


def eulerian_tour(m: Multigraph, start: int) -> list[int]:
    """Hierholzer's algorithm; returns the closed walk as a vertex list (first == last).

    Adjacency is ordered by (neighbor id, edge index) so the walk is reproducible.
    """
    if not m.edges:
        raise GraphError("multigraph has no edges")
    deg = m.degrees()
    odd = [v for v, d in enumerate(deg) if d % 2]
    if odd:
        raise GraphError(f"odd-degree vertices present: {odd[:5]}")
    if deg[start] == 0:
        raise GraphError(f"start vertex {start} has no edges")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(m.vertex_count)]
    for idx, (u, v, _) in enumerate(m.edges):
        adj[u].append((v, idx))
        if u != v:
            adj[v].append((u, idx))
    for a in adj:
        a.sort()
    ptr = [0] * m.vertex_count
    used = [False] * len(m.edges)
    stack = [start]
    walk: list[int] = []
    while stack:
        u = stack[-1]
        a = adj[u]
        while ptr[u] < len(a) and used[a[ptr[u]][1]]:
            ptr[u] += 1
        if ptr[u] == len(a):
            walk.append(stack.pop())
        else:
            v, idx = a[ptr[u]]
            used[idx] = True
            stack.append(v)
    if not all(used):
        raise GraphError("edge set is disconnected")
    walk.reverse()
    return walk


@dataclass
class Matching:
    pairs: list[tuple[int, int]]
    weight: float
    exact: bool


def min_weight_perfect_matching(points: Sequence[Point2D]) -> Matching:
    """Minimum-weight perfect matching of points under Euclidean distance.

    Exact (bitmask dynamic programming) for up to 16 points; beyond that the
    globally closest unmatched pair is matched repeatedly and ``exact`` is False.
    """
    n = len(points)
    if n % 2:
        raise GraphError(f"odd number of points ({n})")
    if n == 0:
        return Matching([], 0.0, True)
    if n <= EXACT_MATCHING_LIMIT:
        w = [[dist(p, q) for q in points] for p in points]
        pairs = kernels.matching_dp(w)
        exact = True
    else:
        pairs = _greedy_matching(points)
        exact = False
    pairs = sorted((min(i, j), max(i, j)) for i, j in pairs)
    total = math.fsum(dist(points[i], points[j]) for i, j in pairs)
    return Matching(pairs, total, exact)


def _greedy_matching(points: Sequence[Point2D]) -> list[tuple[int, int]]:
    n = len(points)
    cand = sorted((dist(points[i], points[j]), i, j) for i in range(n) for j in range(i + 1, n))
    taken = [False] * n
    pairs = []
    for _, i, j in cand:
        if not taken[i] and not taken[j]:
            taken[i] = taken[j] = True
            pairs.append((i, j))
    return pairs
