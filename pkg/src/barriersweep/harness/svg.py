"""Deterministic SVG 1.1 rendering of instances and plans."""
from __future__ import annotations


from ..datamule import DataMulePlan
from ..geometry import arc_point
from ..multi_planner import MultiDeploymentPlan
from ..single_planner import DeploymentPlan
from .generate import Instance


def _f(x: float) -> str:
    return f"{x:.4f}"


def render_svg(instance: Instance | None = None, plan=None, size: int = 600) -> str:
    """Curves, tours, connectors, sensor start positions and the energy source, to scale.

    Scene y grows upward; the SVG is flipped accordingly.
    """
    side = instance.region_side if instance is not None else 200.0
    scale = size / side if side > 0 else 1.0

    def X(x):
        return _f(x * scale)

    def Y(y):
        return _f((side - y) * scale)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect class="canvas" x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    if instance is not None:
        for c in instance.curves:
            pts = " ".join(f"{X(p.x)},{Y(p.y)}" for p in c.vertices)
            tag = "polygon" if c.closed else "polyline"
            out.append(f'<{tag} class="curve" points="{pts}" fill="none" stroke="black" stroke-width="2"/>')
        if instance.energy is not None:
            e, _ = instance.energy
            out.append(f'<circle class="energy" cx="{X(e.x)}" cy="{Y(e.y)}" r="5" fill="orange"/>')

    tours = []
    if isinstance(plan, MultiDeploymentPlan):
        tours = [(p.tour, p.sensor_offsets, p.metadata) for p in plan.plans]
    elif isinstance(plan, DataMulePlan):
        tours = [(plan.tour, plan.offsets, plan.metadata)]
    elif isinstance(plan, DeploymentPlan):
        tours = [(plan.tour, plan.sensor_offsets, plan.metadata)]
    elif plan is not None:
        raise TypeError(f"cannot render {type(plan).__name__}")
    for tour, offsets, meta in tours:
        for (ax, ay), (bx, by) in meta.get("connectors", []):
            out.append(f'<line class="connector" x1="{X(ax)}" y1="{Y(ay)}" x2="{X(bx)}" y2="{Y(by)}" '
                       'stroke="gray" stroke-dasharray="4 2"/>')
        pts = " ".join(f"{X(p.x)},{Y(p.y)}" for p in tour.vertices)
        out.append(f'<polygon class="tour" points="{pts}" fill="none" stroke="steelblue" '
                   'stroke-opacity="0.6"/>')
        for s in offsets:
            p = arc_point(tour, s)
            out.append(f'<circle class="sensor" cx="{X(p.x)}" cy="{Y(p.y)}" r="3" fill="crimson"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
