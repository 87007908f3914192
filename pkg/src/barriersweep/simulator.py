"""Discrete-time verification of plans, and a brute-force tour oracle for small instances.

Visits are detected on the tour's arc-length coordinate: a sampled curve
point counts as visited at a step when a sensor is within ``v*dt`` of one
of the tour positions where the tour passes through that point. The
reported gaps therefore carry up to ``2*dt`` of discretization slack.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from ._pykernels import BOUNCE, EVADER, RANDOM_WALK, STATIONARY
from .datamule import DataMulePlan
from .geometry import Point2D, Polyline, Segment, arc_point, dist
from .multi_planner import MultiDeploymentPlan
from .single_planner import DeploymentPlan

ON_TOUR_TOL = 1e-6
MAX_ORACLE_SEGMENTS = 8

_KINDS = {"stationary": STATIONARY, "random_walk": RANDOM_WALK, "random-walk": RANDOM_WALK,
          "bounce": BOUNCE, "evader": EVADER}


@dataclass
class ArcPosition:
    curve: int
    arc: float
    point: Point2D


@dataclass
class CoverageReport:
    max_gap: float
    worst_point: ArcPosition | None
    per_point_gaps: list[tuple[int, float, float]]
    violated: bool
    period_t: float
    dt: float

    def to_dict(self) -> dict:
        wp = self.worst_point
        return {
            "kind": "sweep",
            "max_gap": self.max_gap,
            "worst_point": None if wp is None else {"curve": wp.curve, "arc": wp.arc,
                                                    "xy": [wp.point.x, wp.point.y]},
            "per_point_gaps": [list(r) for r in self.per_point_gaps],
            "violated": self.violated,
            "t": self.period_t,
            "dt": self.dt,
        }


@dataclass
class RechargeReport:
    per_sensor_gaps: list[float]
    violated: bool
    T: float
    dt: float

    @property
    def max_gap(self) -> float:
        return max(self.per_sensor_gaps, default=0.0)

    def to_dict(self) -> dict:
        return {"kind": "energy", "max_gap": self.max_gap, "per_sensor_gaps": self.per_sensor_gaps,
                "violated": self.violated, "T": self.T, "dt": self.dt}


@dataclass
class MeetingReport:
    per_sensor_gaps: list[float]
    violated: bool
    period_t: float
    dt: float

    @property
    def max_gap(self) -> float:
        return max(self.per_sensor_gaps, default=0.0)

    def to_dict(self) -> dict:
        return {"kind": "mdmdg", "max_gap": self.max_gap, "per_sensor_gaps": self.per_sensor_gaps,
                "violated": self.violated, "t": self.period_t, "dt": self.dt}


@dataclass
class SensorStrategy:
    """How one mobile sensor moves along its segment.

    ``start`` is the arc position at time 0; ``direction`` (+1/-1) is the
    initial heading for ``bounce``. ``speed`` must not exceed the mule speed.
    """

    kind: str
    segment: Segment
    speed: float = 0.0
    start: float | None = None
    direction: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.speed < 0:
            raise ValueError("negative sensor speed")
        if self.start is None:
            self.start = self.segment.length / 2
        if not 0 <= self.start <= self.segment.length + 1e-9:
            raise ValueError(f"start {self.start} outside the segment")


def _tour_arrays(tour: Polyline) -> tuple[np.ndarray, np.ndarray]:
    xy = np.array(tour.coords() + [tour.coords()[0]], dtype=float)
    cum = np.array(tour.cumulative, dtype=float)
    if len(cum) < len(xy):
        cum = np.append(cum, cum[-1])
    return cum, xy


def tour_params_of(points: np.ndarray, tour: Polyline, tol: float = ON_TOUR_TOL):
    """Tour arc positions at which the tour passes within ``tol`` of each point.

    Returns ``(params, point_index)`` flat arrays.
    """
    cum, xy = _tour_arrays(tour)
    a, b = xy[:-1], xy[1:]
    seg = b - a
    n2 = (seg ** 2).sum(axis=1)
    P = points[:, None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        f = ((P - a[None]) * seg[None]).sum(axis=2) / n2[None]
    f = np.where(n2[None] > 0, np.clip(f, 0.0, 1.0), 0.0)
    proj = a[None] + f[..., None] * seg[None]
    d = np.hypot(*(P - proj).transpose(2, 0, 1))
    pi, li = np.nonzero(d <= tol)
    params = cum[li] + f[pi, li] * np.sqrt(n2[li])
    return params, pi


def sample_curves(curves: Sequence[Polyline], spacing: float):
    pts, owner, arcs = [], [], []
    for ci, c in enumerate(curves):
        L = c.length
        s = np.arange(0.0, L, spacing) if L > 0 else np.array([0.0])
        if not c.closed and L > 0:
            s = np.append(s, L)
        for x in s.tolist():
            p = arc_point(c, x)
            pts.append((p.x, p.y))
            owner.append(ci)
            arcs.append(x)
    return np.array(pts, dtype=float).reshape(-1, 2), owner, arcs


def _plans_of(plan) -> list[DeploymentPlan]:
    if isinstance(plan, MultiDeploymentPlan):
        return plan.plans
    if isinstance(plan, DeploymentPlan):
        return [plan]
    raise TypeError(f"not a deployment plan: {type(plan).__name__}")


def simulate_sweep(plan: DeploymentPlan | MultiDeploymentPlan, curves: Sequence[Polyline],
                   horizon: float | None = None, dt: float | None = None,
                   spacing: float | None = None) -> CoverageReport:
    """Largest revisit gap over sampled curve points, with the first period as warm-up.

    For multi-component plans each point's gap is the smallest per-component
    gap, an upper bound on the gap under all fleets together.
    """
    plans = _plans_of(plan)
    if not plans:
        raise ValueError("empty plan")
    v, t = plans[0].speed, plans[0].period_t
    horizon = 3 * t if horizon is None else horizon
    dt = t / 1000 if dt is None else dt
    spacing = v * t / 10 if spacing is None else spacing
    if dt <= 0 or spacing <= 0:
        raise ValueError("dt and spacing must be positive")
    if horizon < 2 * t:
        raise ValueError(f"horizon {horizon} < 2t")
    if dt > t / 100 + 1e-15:
        raise ValueError(f"dt {dt} > t/100")
    if spacing > v * t / 10 + 1e-12:
        raise ValueError(f"spacing {spacing} > vt/10")
    pts, owner, arcs = sample_curves(curves, spacing)
    n_steps = int(round(horizon / dt))
    gaps = np.full(len(pts), n_steps * dt)
    for p in plans:
        params, idx = tour_params_of(pts, p.tour)
        if params.size == 0:
            continue
        g = kernels.visit_gaps(params, idx, len(pts), np.array(p.sensor_offsets),
                               np.ones(len(p.sensor_offsets)), p.tour_length, p.speed,
                               dt, n_steps, p.speed * dt, t)
        gaps = np.minimum(gaps, g)
    worst = int(np.argmax(gaps)) if len(gaps) else None
    max_gap = float(gaps[worst]) if worst is not None else 0.0
    wp = None
    if worst is not None:
        wp = ArcPosition(owner[worst], arcs[worst], Point2D(*pts[worst]))
    return CoverageReport(max_gap, wp, list(zip(owner, arcs, gaps.tolist())),
                          max_gap > t + 2 * dt, t, dt)


def simulate_energy(plan: DeploymentPlan, e: Point2D, T: float,
                    horizon: float | None = None, dt: float | None = None) -> RechargeReport:
    """Per-sensor largest gap between arrivals at the energy source."""
    if "etours" not in plan.metadata:
        raise ValueError("plan lacks e-tour metadata")
    dt = plan.period_t / 1000 if dt is None else dt
    if horizon is None:
        # arrivals repeat every |tour|/v, so two laps expose the largest gap
        horizon = 2 * plan.tour_length / plan.speed + 2 * dt
    if dt <= 0 or horizon <= 0:
        raise ValueError("dt and horizon must be positive")
    n_steps = int(round(horizon / dt))
    params, _ = tour_params_of(np.array([[e.x, e.y]]), plan.tour)
    if params.size == 0:
        return RechargeReport([math.inf] * len(plan.sensor_offsets), True, T, dt)
    gaps = []
    for off in plan.sensor_offsets:
        g = kernels.visit_gaps(params, np.zeros(len(params), dtype=np.int64), 1,
                               np.array([off]), np.ones(1), plan.tour_length, plan.speed,
                               dt, n_steps, plan.speed * dt, 0.0)
        gaps.append(float(g[0]))
    return RechargeReport(gaps, max(gaps, default=0.0) > T + 2 * dt, T, dt)


def simulate_mdmdg(plan: DataMulePlan, strategies: Sequence[SensorStrategy],
                   horizon: float | None = None, dt: float | None = None,
                   meet_radius: float | None = None, fleets: str = "both") -> MeetingReport:
    """Per-sensor largest gap between meetings with any data mule.

    ``fleets`` selects ``"both"`` fleets or only ``"cw"`` / ``"ccw"`` (ablation).
    """
    segments = plan.metadata.get("segments")
    if segments is not None and len(segments) != len(strategies):
        raise ValueError(f"{len(strategies)} strategies for {len(segments)} segments")
    v, t = plan.speed, plan.period_t
    horizon = 3 * t if horizon is None else horizon
    dt = t / 1000 if dt is None else dt
    radius = v * dt if meet_radius is None else meet_radius
    if dt <= 0 or horizon <= 0 or radius < 0:
        raise ValueError("dt, horizon must be positive and meet_radius non-negative")
    for s in strategies:
        if s.speed > v * (1 + 1e-12):
            raise ValueError(f"sensor speed {s.speed} exceeds mule speed {v}")
    n_steps = int(round(horizon / dt))
    offs = np.array(plan.offsets, dtype=float)
    if fleets == "both":
        offsets = np.concatenate([offs, offs])
        dirs = np.concatenate([np.ones(len(offs)), -np.ones(len(offs))])
    elif fleets in ("cw", "ccw"):
        offsets = offs
        dirs = np.full(len(offs), 1.0 if fleets == "cw" else -1.0)
    else:
        raise ValueError(f"unknown fleet selection {fleets!r}")
    cum, xy = _tour_arrays(plan.tour)
    segs = np.array([[s.segment.a.x, s.segment.a.y, s.segment.b.x, s.segment.b.y]
                     for s in strategies], dtype=float).reshape(-1, 4)
    kinds = np.array([_KINDS[s.kind] for s in strategies], dtype=np.int64)
    noise = np.zeros((n_steps, len(strategies)))
    for i, s in enumerate(strategies):
        if kinds[i] == RANDOM_WALK:
            noise[:, i] = np.random.default_rng(s.seed).uniform(-1.0, 1.0, n_steps)
    gaps = kernels.meeting_gaps(
        cum, xy, offsets, dirs, v, segs, kinds,
        np.array([s.speed for s in strategies], dtype=float),
        np.array([s.start for s in strategies], dtype=float),
        np.array([float(s.direction) for s in strategies]),
        noise, dt, n_steps, radius, 2 * v * dt, t)
    gaps = [float(g) for g in gaps]
    return MeetingReport(gaps, max(gaps, default=0.0) > t + 2 * dt, t, dt)


def tour_oracle(segments: Sequence[Segment]) -> float:
    """Shortest closed tour traversing every segment end to end once.

    Minimum over segment orders and orientations (Held-Karp over
    (visited set, last segment, orientation)); at most 8 segments.
    """
    n = len(segments)
    if n == 0:
        raise ValueError("no segments")
    if n > MAX_ORACLE_SEGMENTS:
        raise ValueError(f"tour oracle limited to {MAX_ORACLE_SEGMENTS} segments, got {n}")
    ends = [(s.a, s.b) for s in segments]
    along = math.fsum(s.length for s in segments)
    # orientation o: enter at ends[i][o], leave at ends[i][1 - o]
    start = ends[0][0]
    dp: dict[tuple[int, int, int], float] = {(1, 0, 0): 0.0}
    for mask in range(1, 1 << n):
        if not mask & 1:
            continue
        for j in range(n):
            for o in (0, 1):
                c = dp.get((mask, j, o))
                if c is None:
                    continue
                exit_pt = ends[j][1 - o]
                for k in range(n):
                    if mask >> k & 1:
                        continue
                    for o2 in (0, 1):
                        key = (mask | 1 << k, k, o2)
                        cand = c + dist(exit_pt, ends[k][o2])
                        if cand < dp.get(key, math.inf):
                            dp[key] = cand
    full = (1 << n) - 1
    best = min(c + dist(ends[j][1 - o], start) for (m, j, o), c in dp.items() if m == full)
    return along + best


def tour_oracle_bruteforce(segments: Sequence[Segment]) -> float:
    """Same minimum as ``tour_oracle`` by explicit enumeration (tiny inputs only)."""
    n = len(segments)
    best = math.inf
    for perm in itertools.permutations(range(n)):
        for flips in itertools.product((0, 1), repeat=n):
            pts = []
            for i, f in zip(perm, flips):
                a, b = segments[i].a, segments[i].b
                pts.extend((b, a) if f else (a, b))
            total = sum(segments[i].length for i in perm)
            total += sum(dist(pts[2 * k + 1], pts[(2 * k + 2) % (2 * n)]) for k in range(n))
            best = min(best, total)
    return best
