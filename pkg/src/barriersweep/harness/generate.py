"""Random instances: short segments scattered over a square region."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..geometry import Point2D, Polyline, Segment


@dataclass
class Instance:
    curves: list[Polyline]
    v: float = 1.0
    t: float = 50.0
    energy: tuple[Point2D, float] | None = None
    seed: int | None = None
    region_side: float = 200.0
    max_len: float | None = None

    def segments(self) -> list[Segment]:
        """Curves as segments; every curve must be an open two-vertex polyline."""
        out = []
        for i, c in enumerate(self.curves):
            if c.closed or len(c.vertices) != 2:
                raise ValueError(f"curve {i} is not a straight segment")
            out.append(Segment(*c.vertices))
        return out


def _clip_half(mx: float, my: float, ux: float, uy: float, half: float, side: float) -> float:
    # largest h <= half keeping mid +/- h*u inside [0, side]^2
    for m, u in ((mx, ux), (my, uy)):
        if abs(u) > 0:
            half = min(half, min(m, side - m) / abs(u))
    return max(half, 0.0)


def gen_instance(n: int, seed: int, region_side: float = 200.0, max_len: float = 5.0,
                 v: float = 1.0, t: float = 50.0) -> Instance:
    """``n`` segments: uniform midpoint, uniform angle, length uniform in (0, max_len].

    Segments poking out of the region are shrunk about their midpoint.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    mids = rng.uniform(0.0, region_side, size=(n, 2))
    ang = rng.uniform(0.0, 2 * math.pi, size=n)
    lens = max_len * (1.0 - rng.random(n))
    curves = []
    for (mx, my), a, ln in zip(mids.tolist(), ang.tolist(), lens.tolist()):
        ux, uy = math.cos(a), math.sin(a)
        h = _clip_half(mx, my, ux, uy, ln / 2, region_side)
        p = Point2D(min(max(mx - h * ux, 0.0), region_side), min(max(my - h * uy, 0.0), region_side))
        q = Point2D(min(max(mx + h * ux, 0.0), region_side), min(max(my + h * uy, 0.0), region_side))
        curves.append(Polyline((p, q)))
    return Instance(curves, v, t, None, seed, region_side, max_len)
