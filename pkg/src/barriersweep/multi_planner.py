"""Sweep plans for several curves: one MST tour, or per-component tours of a spanning forest."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .geometry import EPS, ArcWitness, Point2D, Polyline, arc_point
from .graphcore import (Edge, Forest, Multigraph, UnionFind, WeightedGraph, double_edges,
                        eulerian_tour, kruskal_forest)
from .single_planner import DeploymentPlan, _check_vt, sensor_offsets


@dataclass
class ConnectivityGraph(WeightedGraph):
    """Complete graph over curves; each edge's tag is the ArcWitness (first = lower id)."""


@dataclass
class SkeletonGraph(Multigraph):
    connectors: list[tuple[Point2D, Point2D]] = field(default_factory=list)
    curve_ids: list[int] = field(default_factory=list)


@dataclass
class MultiDeploymentPlan:
    plans: list[DeploymentPlan]
    components: list[list[int]]
    chosen_k: int
    per_k_counts: list[int]

    @property
    def total_sensors(self) -> int:
        return sum(p.sensor_count for p in self.plans)


def _segment_table(curves: Sequence[Polyline]):
    rows, owner, offset = [], [], []
    for ci, c in enumerate(curves):
        for seg, o in zip(c.segments(), c.cumulative):
            rows.append((seg.a.x, seg.a.y, seg.b.x, seg.b.y))
            owner.append(ci)
            offset.append(o)
    return np.array(rows, dtype=float).reshape(-1, 4), np.array(owner), np.array(offset)


def build_connectivity_graph(curves: Sequence[Polyline]) -> ConnectivityGraph:
    """Complete graph whose edge weights are curve-to-curve distances (with witnesses)."""
    if not curves:
        raise ValueError("no curves")
    n = len(curves)
    g = ConnectivityGraph(n)
    if n == 1:
        return g
    table, owner, offset = _segment_table(curves)
    D, P, Q = kernels.segment_distances(table, table)
    if len(table) == n:
        # one segment per curve: witness points straight from the kernel params
        iu, ju = np.triu_indices(n, 1)
        d, p, q = D[iu, ju], P[iu, ju], Q[iu, ju]
        pi, pj = _along(table, iu, p), _along(table, ju, q)
        for i, j, dd, pp, qq, a, b in zip(iu.tolist(), ju.tolist(), d.tolist(), p.tolist(),
                                          q.tolist(), pi.tolist(), pj.tolist()):
            g.edges.append(Edge(i, j, dd, ArcWitness(dd, Point2D(*a), Point2D(*b), pp, qq)))
        return g
    starts = np.searchsorted(owner, np.arange(n + 1))
    for i in range(n):
        for j in range(i + 1, n):
            si, sj = slice(starts[i], starts[i + 1]), slice(starts[j], starts[j + 1])
            bd = D[si, sj]
            bp = P[si, sj] + offset[si][:, None]
            bq = Q[si, sj] + offset[sj][None, :]
            tied = bd <= bd.min() + 1e-12
            cand = sorted(zip(bp[tied].tolist(), bq[tied].tolist(), bd[tied].tolist()))
            p, q, d = cand[0]
            g.add_edge(i, j, d, _witness(curves, i, j, d, p, q))
    return g


def _along(table: np.ndarray, rows: np.ndarray, s: np.ndarray) -> np.ndarray:
    seg = table[rows]
    d = seg[:, 2:] - seg[:, :2]
    n = np.hypot(d[:, 0], d[:, 1])
    f = np.divide(s, n, out=np.zeros_like(s), where=n > 0)
    return seg[:, :2] + f[:, None] * d


def _witness(curves, i, j, d, p, q) -> ArcWitness:
    return ArcWitness(d, arc_point(curves[i], p), arc_point(curves[j], q), p, q)


def build_skeleton(curves: Sequence[Polyline], forest_component: Sequence[Edge],
                   curve_ids: Sequence[int] | None = None) -> SkeletonGraph:
    """Geometric graph of the component's curves (split at connector feet) plus connectors."""
    if curve_ids is None:
        ids = sorted({e.u for e in forest_component} | {e.v for e in forest_component}) or [0]
    else:
        ids = sorted(curve_ids)
    splits: dict[int, list[float]] = {i: [] for i in ids}
    for e in forest_component:
        w: ArcWitness = e.tag
        splits[e.u].append(w.param_first)
        splits[e.v].append(w.param_second)

    positions: list[Point2D] = []
    edges: list[tuple[int, int, float]] = []
    node_at: dict[int, list[tuple[float, int]]] = {}
    for ci in ids:
        c = curves[ci]
        total = c.length
        breaks = sorted(set(c.cumulative[:len(c.vertices)]) | {min(max(s, 0.0), total) for s in splits[ci]})
        if c.closed:
            breaks = [b for b in breaks if b < total - EPS] or [0.0]
        uniq: list[float] = []
        for b in breaks:
            if not uniq or b - uniq[-1] > EPS:
                uniq.append(b)
        if not c.closed and total - uniq[-1] > EPS:
            uniq.append(total)
        ids_here = []
        for b in uniq:
            ids_here.append(len(positions))
            positions.append(arc_point(c, b))
        node_at[ci] = list(zip(uniq, ids_here))
        pairs = list(zip(ids_here, ids_here[1:]))
        lens = [b2 - b1 for b1, b2 in zip(uniq, uniq[1:])]
        if c.closed and len(uniq) > 1:
            pairs.append((ids_here[-1], ids_here[0]))
            lens.append(total - uniq[-1])
        edges.extend((u, v, w) for (u, v), w in zip(pairs, lens))

    connectors = []
    for e in forest_component:
        w = e.tag
        a = _nearest_node(node_at[e.u], w.param_first, curves[e.u])
        b = _nearest_node(node_at[e.v], w.param_second, curves[e.v])
        edges.append((a, b, w.distance))
        connectors.append((positions[a], positions[b]))
    return SkeletonGraph(len(positions), edges, positions, connectors, list(ids))


def _nearest_node(nodes: list[tuple[float, int]], s: float, curve: Polyline) -> int:
    total = curve.length

    def gap(b: float) -> float:
        d = abs(b - s)
        return min(d, total - d) if curve.closed else d

    return min(nodes, key=lambda bn: (gap(bn[0]), bn[1]))[1]


def skeleton_tour(sk: SkeletonGraph) -> tuple[Polyline, float]:
    """Closed walk over the doubled skeleton, as waypoints, and its length."""
    if not sk.edges:
        p = sk.positions[0]
        return Polyline((p,), closed=True), 0.0
    walk = eulerian_tour(double_edges(sk), _first_used(sk))
    pts = tuple(sk.positions[v] for v in walk[:-1])
    return Polyline(pts, closed=True), 2 * sk.weight


def _first_used(m: Multigraph) -> int:
    return min(min(u, v) for u, v, _ in m.edges)


def _component_plan(curves, comp_edges, comp_ids, v, t, algorithm) -> DeploymentPlan:
    sk = build_skeleton(curves, comp_edges, comp_ids)
    tour, length = skeleton_tour(sk)
    return DeploymentPlan(tour, length, v, t, sensor_offsets(length, v, t), {
        "algorithm": algorithm,
        "exact": False,
        "curves": list(comp_ids),
        "forest_weight": math.fsum(e.weight for e in comp_edges),
        "connectors": [[[a.x, a.y], [b.x, b.y]] for a, b in sk.connectors],
    })


def plan_special(curves: Sequence[Polyline], v: float, t: float,
                 graph: ConnectivityGraph | None = None) -> DeploymentPlan:
    """One tour from the doubled MST skeleton; ``|E| = 2(|T| + sum |l_i|)``."""
    _check_vt(v, t)
    g = build_connectivity_graph(curves) if graph is None else graph
    mst = kruskal_forest(g, 1)
    return _component_plan(curves, mst.edges, range(len(curves)), v, t, "special")


def _mst_sorted(g: WeightedGraph) -> list[Edge]:
    return sorted(kruskal_forest(g, 1).edges, key=Edge.key)


def forest_counts(curves: Sequence[Polyline], mst_edges: list[Edge], v: float, t: float) -> list[int]:
    """N_k for k = 1..n where F_k is the MST without its k-1 heaviest edges."""
    n = len(curves)
    step = v * t
    weight = [c.length for c in curves]
    uf = UnionFind(n)

    def count(w: float) -> int:
        return max(1, math.ceil(2 * w / step))

    total = sum(count(w) for w in weight)
    counts = [0] * (n + 1)
    counts[n] = total
    k = n
    for e in mst_edges:
        ra, rb = uf.find(e.u), uf.find(e.v)
        total -= count(weight[ra]) + count(weight[rb])
        uf.union(ra, rb)
        r = uf.find(ra)
        weight[r] = weight[ra] + weight[rb] + e.weight
        total += count(weight[r])
        k -= 1
        counts[k] = total
    return counts[1:]


def plan_bscmc(curves: Sequence[Polyline], v: float, t: float,
               graph: ConnectivityGraph | None = None) -> MultiDeploymentPlan:
    """Try every forest size k and keep the one needing the fewest sensors (smallest k on ties)."""
    _check_vt(v, t)
    n = len(curves)
    g = build_connectivity_graph(curves) if graph is None else graph
    mst = _mst_sorted(g)
    counts = forest_counts(curves, mst, v, t)
    best = min(counts)
    k = counts.index(best) + 1
    kept = mst[: n - k]
    forest = Forest(n, kept)
    plans, comps = [], []
    for comp in forest.components():
        members = set(comp)
        comp_edges = [e for e in kept if e.u in members]
        plans.append(_component_plan(curves, comp_edges, comp, v, t, "bscmc"))
        comps.append(comp)
    return MultiDeploymentPlan(plans, comps, k, counts)
