"""Planar primitives: points, segments, polylines and closest-point distances.

Curves are polylines. "Clockwise" along a curve means increasing vertex
index; arc-length parameters are measured from vertex 0.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

EPS = 1e-9


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def dist(self, other: "Point2D") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def dist(a: Point2D, b: Point2D) -> float:
    """Euclidean distance between two points."""
    return math.hypot(a.x - b.x, a.y - b.y)


@dataclass(frozen=True)
class Segment:
    a: Point2D
    b: Point2D

    @property
    def length(self) -> float:
        return dist(self.a, self.b)

    def point_at(self, s: float) -> Point2D:
        """Point at arc length ``s`` from ``a``."""
        n = self.length
        if n == 0.0:
            return self.a
        f = s / n
        return Point2D(self.a.x + f * (self.b.x - self.a.x), self.a.y + f * (self.b.y - self.a.y))


@dataclass(frozen=True)
class ArcWitness:
    """Shortest distance between two curves together with the points realizing it."""

    distance: float
    point_on_first: Point2D
    point_on_second: Point2D
    param_first: float
    param_second: float

    def swapped(self) -> "ArcWitness":
        return ArcWitness(self.distance, self.point_on_second, self.point_on_first,
                          self.param_second, self.param_first)


@dataclass(frozen=True)
class Polyline:
    vertices: tuple[Point2D, ...]
    closed: bool = False
    _cum: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if not verts:
            raise ValueError("empty polyline")
        object.__setattr__(self, "vertices", verts)
        cum = [0.0]
        for p, q in zip(verts, verts[1:]):
            cum.append(cum[-1] + dist(p, q))
        if self.closed and len(verts) > 1:
            cum.append(cum[-1] + dist(verts[-1], verts[0]))
        object.__setattr__(self, "_cum", tuple(cum))

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[float]], closed: bool = False) -> "Polyline":
        return cls(tuple(Point2D(float(x), float(y)) for x, y in coords), closed)

    @property
    def length(self) -> float:
        return self._cum[-1]

    @property
    def cumulative(self) -> tuple[float, ...]:
        """Arc length at each vertex (plus the closing vertex for closed curves)."""
        return self._cum

    def segments(self) -> list[Segment]:
        v = self.vertices
        segs = [Segment(p, q) for p, q in zip(v, v[1:])]
        if self.closed and len(v) > 1:
            segs.append(Segment(v[-1], v[0]))
        if not segs:
            segs.append(Segment(v[0], v[0]))
        return segs

    def coords(self) -> list[tuple[float, float]]:
        return [(p.x, p.y) for p in self.vertices]


def arc_point(curve: Polyline, s: float) -> Point2D:
    """Point at arc length ``s`` from vertex 0, moving in vertex order.

    Closed curves accept any ``s >= 0`` and wrap around.
    """
    total = curve.length
    if curve.closed:
        if s < 0:
            raise ValueError(f"arc length {s} < 0")
        if total > 0:
            s = math.fmod(s, total)
    elif s < -EPS or s > total + EPS:
        raise ValueError(f"arc length {s} outside [0, {total}] on an open curve")
    s = min(max(s, 0.0), total)
    segs = curve.segments()
    cum = curve.cumulative
    i = bisect.bisect_right(cum, s) - 1
    i = min(max(i, 0), len(segs) - 1)
    return segs[i].point_at(s - cum[i])


def _closest_on_segment(p: Point2D, seg: Segment) -> float:
    """Arc parameter of the point of ``seg`` nearest to ``p``."""
    dx, dy = seg.b.x - seg.a.x, seg.b.y - seg.a.y
    n2 = dx * dx + dy * dy
    if n2 == 0.0:
        return 0.0
    f = ((p.x - seg.a.x) * dx + (p.y - seg.a.y) * dy) / n2
    f = min(max(f, 0.0), 1.0)
    return f * math.sqrt(n2)


def segment_distance(s1: Segment, s2: Segment) -> ArcWitness:
    """Closed-form minimum distance between two segments.

    Candidates are the proper crossing point (if any) and the four
    endpoint-to-segment projections. Among minimal candidates the one with
    the smallest ``(param_first, param_second)`` wins.
    """
    cands: list[tuple[float, float, float]] = []
    l1, l2 = s1.length, s2.length

    # proper crossing, non-parallel only
    d1x, d1y = s1.b.x - s1.a.x, s1.b.y - s1.a.y
    d2x, d2y = s2.b.x - s2.a.x, s2.b.y - s2.a.y
    den = d1x * d2y - d1y * d2x
    if den != 0.0:
        rx, ry = s2.a.x - s1.a.x, s2.a.y - s1.a.y
        u = (rx * d2y - ry * d2x) / den
        w = (rx * d1y - ry * d1x) / den
        if 0.0 <= u <= 1.0 and 0.0 <= w <= 1.0:
            cands.append((0.0, u * l1, w * l2))

    for p, q in ((s1.a, 0.0), (s1.b, l1)):
        t = _closest_on_segment(p, s2)
        cands.append((dist(p, s2.point_at(t)), q, t))
    for p, q in ((s2.a, 0.0), (s2.b, l2)):
        t = _closest_on_segment(p, s1)
        cands.append((dist(s1.point_at(t), p), t, q))

    best = _pick(cands)
    return ArcWitness(best[0], s1.point_at(best[1]), s2.point_at(best[2]), best[1], best[2])


def _pick(cands: list[tuple[float, float, float]]) -> tuple[float, float, float]:
    dmin = min(c[0] for c in cands)
    tied = [c for c in cands if c[0] <= dmin + 1e-12]
    return min(tied, key=lambda c: (c[1], c[2], c[0]))


def polyline_distance(c1: Polyline, c2: Polyline) -> ArcWitness:
    """Minimum distance over all pairs of constituent segments."""
    cands = []
    for s1, o1 in zip(c1.segments(), c1.cumulative):
        for s2, o2 in zip(c2.segments(), c2.cumulative):
            w = segment_distance(s1, s2)
            cands.append((w.distance, o1 + w.param_first, o2 + w.param_second))
    d, p, q = _pick(cands)
    return ArcWitness(d, arc_point(c1, p), arc_point(c2, q), p, q)


def split_segment(seg: Segment, params: Iterable[float]) -> list[Segment]:
    """Split ``seg`` at the given arc-length parameters, in order."""
    n = seg.length
    cuts = []
    for p in params:
        if p < -EPS or p > n + EPS:
            raise ValueError(f"split parameter {p} outside [0, {n}]")
        if EPS < p < n - EPS:
            cuts.append(p)
    cuts.sort()
    uniq: list[float] = []
    for c in cuts:
        if not uniq or c - uniq[-1] > EPS:
            uniq.append(c)
    pts = [seg.a] + [seg.point_at(c) for c in uniq] + [seg.b]
    return [Segment(p, q) for p, q in zip(pts, pts[1:])]
