"""Sweep plans for a single curve: the optimal plan and the energy-restricted e-tour plan."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .geometry import Point2D, Polyline, arc_point, dist


class InfeasibleError(ValueError):
    pass


@dataclass
class DeploymentPlan:
    """Sensors spaced ``speed * period_t`` apart on a closed tour, all moving forward."""

    tour: Polyline
    tour_length: float
    speed: float
    period_t: float
    sensor_offsets: list[float]
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def sensor_count(self) -> int:
        return len(self.sensor_offsets)


def sensor_offsets(tour_length: float, v: float, t: float) -> list[float]:
    """Partition points ``0, vt, 2vt, ...``: ``ceil(L / vt)`` of them, at least one."""
    step = v * t
    count = max(1, math.ceil(tour_length / step))
    return [k * step for k in range(count)]


def _check_vt(v: float, t: float) -> None:
    if not (v > 0 and t > 0 and math.isfinite(v) and math.isfinite(t)):
        raise ValueError(f"speed and period must be positive (v={v}, t={t})")


def plan_single_curve(curve: Polyline, v: float, t: float) -> DeploymentPlan:
    """Optimal plan for one curve; an open curve is closed by its end-to-end chord."""
    _check_vt(v, t)
    tour = curve if curve.closed else Polyline(curve.vertices, closed=True)
    if tour.length <= 0:
        raise ValueError("curve has zero length")
    return DeploymentPlan(tour, tour.length, v, t, sensor_offsets(tour.length, v, t),
                          {"algorithm": "single", "exact": True})


@dataclass(frozen=True)
class ETour:
    """Loop e -> arc_point(start_arc) -> along the curve -> arc_point(end_arc) -> e."""

    start_arc: float
    end_arc: float
    length: float


@dataclass
class EnergyInstance:
    curve: Polyline
    e: Point2D
    v: float
    t: float
    T: float
    feas_margin: float | None = None

    @property
    def budget(self) -> float:
        return self.v * self.T

    @property
    def margin(self) -> float:
        return self.feas_margin if self.feas_margin is not None else 1e-6 * self.budget

    def farthest(self) -> float:
        # distance to e is convex along each straight piece, so vertices suffice
        return max(dist(self.e, p) for p in self.curve.vertices)

    def check(self) -> None:
        _check_vt(self.v, self.t)
        if not (self.T > 0 and math.isfinite(self.T)):
            raise ValueError(f"battery period must be positive (T={self.T})")
        if self.curve.length <= 0:
            raise ValueError("curve has zero length")
        far, half = self.farthest(), self.budget / 2
        if far >= half - self.margin:
            raise InfeasibleError(f"infeasible: point at distance {far:.9g} ≥ vT/2 = {half:.9g}")


def _etour_length(inst: EnergyInstance, a: float, b: float) -> float:
    c = inst.curve
    return dist(inst.e, arc_point(c, a)) + (b - a) + dist(inst.e, arc_point(c, b))


def decompose_e_tours(inst: EnergyInstance) -> list[ETour]:
    """Greedy e-tour decomposition of the curve starting at vertex 0.

    Each step advances along the curve by ``vT/2 - d(e, current)`` (or to the
    end when the remainder fits) and tries to extend the previous e-tour to the
    new point; if the extension would exceed ``vT`` a new e-tour starts.
    Closed curves end at the wrap point (arc length ``|C|``).
    """
    inst.check()
    c, e = inst.curve, inst.e
    half = inst.budget / 2
    end = c.length
    guard = 1e-9 * inst.budget
    tol = 1e-12 * max(end, 1.0)
    points = [0.0]  # i_1, i_2, ... as arc lengths
    tours: list[list[float]] = []  # [start, end] per e-tour
    while end - points[-1] > tol:
        cur = points[-1]
        dcur = dist(e, arc_point(c, cur))
        if dcur + (end - cur) <= half:
            h = end
        else:
            step = half - dcur
            if step <= guard:
                raise InfeasibleError(
                    f"infeasible: no progress at arc {cur:.9g} (distance {dcur:.9g} ≥ vT/2 = {half:.9g})")
            h = min(cur + step, end)
        if tours and _etour_length(inst, tours[-1][0], h) <= inst.budget:
            tours[-1][1] = h
            points[-1] = h
        else:
            tours.append([cur, h])
            points.append(h)
    return [ETour(a, b, _etour_length(inst, a, b)) for a, b in tours]


def concat_e_tours(etours: list[ETour], inst: EnergyInstance) -> Polyline:
    """Closed tour e, i1..i2, e, i2..i3, e, ... starting at e."""
    if not etours:
        raise ValueError("no e-tours to concatenate")
    c = inst.curve
    cum = c.cumulative
    verts: list[Point2D] = []
    for et in etours:
        verts.append(inst.e)
        verts.append(arc_point(c, et.start_arc))
        # interior polyline vertices strictly inside the arc
        for k, s in enumerate(cum):
            if et.start_arc < s < et.end_arc:
                verts.append(c.vertices[k % len(c.vertices)])
        verts.append(arc_point(c, et.end_arc))
    return Polyline(tuple(verts), closed=True)


def plan_energy_restricted(inst: EnergyInstance) -> DeploymentPlan:
    etours = decompose_e_tours(inst)
    tour = concat_e_tours(etours, inst)
    return DeploymentPlan(
        tour, tour.length, inst.v, inst.t, sensor_offsets(tour.length, inst.v, inst.t),
        {
            "algorithm": "energy",
            "exact": False,
            "e": [inst.e.x, inst.e.y],
            "T": inst.T,
            "etours": [[et.start_arc, et.end_arc, et.length] for et in etours],
        },
    )
