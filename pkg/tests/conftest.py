import math

import numpy as np
import pytest

from barriersweep.geometry import Point2D, Polyline, Segment


def seg(x1, y1, x2, y2) -> Segment:
    return Segment(Point2D(x1, y1), Point2D(x2, y2))


def line(*xy, closed=False) -> Polyline:
    return Polyline.from_coords(xy, closed=closed)


def random_closed_polyline(rng: np.random.Generator, max_vertices=8, scale=50.0) -> Polyline:
    k = int(rng.integers(3, max_vertices + 1))
    angles = np.sort(rng.uniform(0, 2 * math.pi, k))
    radii = rng.uniform(0.2, 1.0, k) * scale
    pts = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    return Polyline.from_coords(pts.tolist(), closed=True)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.LINES, key=int):
        terminalreporter.write_line(mod.LINES[key])
