"""Data-mule schedules: a Christofides-style tour through segment endpoints with
every segment forced into the tree, ridden by two fleets in opposite directions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from .geometry import EPS, Point2D, Polyline, Segment, dist
from .graphcore import (Edge, Multigraph, WeightedGraph, eulerian_tour, kruskal_forest,
                        min_weight_perfect_matching)
from .single_planner import _check_vt, sensor_offsets


@dataclass
class DataMulePlan:
    tour: Polyline
    tour_length: float
    speed: float
    period_t: float
    offsets: list[float]
    exact_matching: bool
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def fleet_cw(self) -> list[int]:
        return list(range(len(self.offsets)))

    @property
    def fleet_ccw(self) -> list[int]:
        n = len(self.offsets)
        return list(range(n, 2 * n))

    @property
    def mule_count(self) -> int:
        return 2 * len(self.offsets)


@dataclass
class EndpointGraph(WeightedGraph):
    points: list[Point2D] = field(default_factory=list)
    forced: list[Edge] = field(default_factory=list)
    endpoints: list[tuple[int, int]] = field(default_factory=list)


def build_g2n(segments: Sequence[Segment]) -> EndpointGraph:
    """Complete Euclidean graph on segment endpoints; segment edges are tagged forced.

    Endpoints closer than 1e-9 share one vertex.
    """
    if not segments:
        raise ValueError("no segments")
    points: list[Point2D] = []
    index: list[tuple[int, int]] = []

    def vid(p: Point2D) -> int:
        for k, q in enumerate(points):
            if dist(p, q) <= EPS:
                return k
        points.append(p)
        return len(points) - 1

    for s in segments:
        index.append((vid(s.a), vid(s.b)))
    g = EndpointGraph(len(points), points=points, endpoints=index)
    seg_of = {}
    for si, (a, b) in enumerate(index):
        if a != b:
            seg_of.setdefault((min(a, b), max(a, b)), si)
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            si = seg_of.get((i, j))
            e = g.add_edge(i, j, dist(points[i], points[j]), None if si is None else ("segment", si))
            if si is not None:
                g.forced.append(e)
    return g


def plan_mdmdg(segments: Sequence[Segment], v: float, t: float) -> DataMulePlan:
    _check_vt(v, t)
    g = build_g2n(segments)
    tree = kruskal_forest(g, 1, g.forced)
    deg = [0] * g.vertex_count
    for e in tree.edges:
        deg[e.u] += 1
        deg[e.v] += 1
    odd = [i for i, d in enumerate(deg) if d % 2]
    matching = min_weight_perfect_matching([g.points[i] for i in odd])
    edges = [(e.u, e.v, e.weight) for e in tree.edges]
    edges += [(odd[i], odd[j], dist(g.points[odd[i]], g.points[odd[j]])) for i, j in matching.pairs]
    euler = Multigraph(g.vertex_count, edges, g.points)
    if edges:
        walk = eulerian_tour(euler, 0)
        tour = Polyline(tuple(g.points[i] for i in walk[:-1]), closed=True)
        length = euler.weight
    else:
        tour = Polyline((g.points[0],), closed=True)
        length = 0.0
    return DataMulePlan(tour, length, v, t, sensor_offsets(length, v, t), matching.exact, {
        "algorithm": "mdmdg",
        "tree_weight": tree.weight,
        "matching_weight": matching.weight,
        "odd_vertices": len(odd),
        "segments": [[s.a.x, s.a.y, s.b.x, s.b.y] for s in segments],
    })
