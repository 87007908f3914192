import math

import pytest

from barriersweep.geometry import Point2D
from barriersweep.graphcore import kruskal_forest
from barriersweep.harness import gen_instance
from barriersweep.multi_planner import (build_connectivity_graph, build_skeleton, forest_counts,
                                        plan_bscmc, plan_special, skeleton_tour)
from barriersweep.simulator import simulate_sweep

from conftest import line

PARALLEL = [line((0, 0), (1, 0)), line((0, 1), (1, 1))]
COLLINEAR = [line((0, 0), (1, 0)), line((2, 0), (3, 0)), line((4, 0), (5, 0))]


def _weights(g):
    return {(e.u, e.v): e.weight for e in g.edges}


def test_connectivity_graph_collinear():
    assert _weights(build_connectivity_graph(COLLINEAR)) == pytest.approx({(0, 1): 1, (1, 2): 1, (0, 2): 3})


def test_connectivity_graph_crossing_and_single():
    g = build_connectivity_graph([line((0, 0), (2, 2)), line((0, 2), (2, 0))])
    assert g.edges[0].weight == pytest.approx(0, abs=1e-12)
    g1 = build_connectivity_graph([line((0, 0), (1, 0))])
    assert g1.vertex_count == 1 and g1.edges == []


def test_connectivity_graph_polyline_witnesses():
    curves = [line((0, 0), (1, 0), (1, 1)), line((3, 0), (3, 1)), line((0, 5), (2, 5))]
    g = build_connectivity_graph(curves)
    for e in g.edges:
        w = e.tag
        assert w.point_on_first.dist(w.point_on_second) == pytest.approx(e.weight, abs=1e-9)
    assert _weights(g)[(0, 1)] == pytest.approx(2.0)


def test_fast_path_matches_general_witnesses(rng):
    inst = gen_instance(12, 4, region_side=30)
    g = build_connectivity_graph(inst.curves)
    for e in g.edges:
        w = e.tag
        assert w.point_on_first.dist(w.point_on_second) == pytest.approx(e.weight, abs=1e-9)


def test_skeleton_parallel():
    g = build_connectivity_graph(PARALLEL)
    f = kruskal_forest(g, 1)
    sk = build_skeleton(PARALLEL, f.edges)
    assert len(sk.edges) == 3 and sk.weight == pytest.approx(3)
    assert {(p.x, p.y) for p in sk.positions} == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_skeleton_single_segment():
    sk = build_skeleton([line((0, 0), (4, 0))], [], [0])
    assert len(sk.edges) == 1 and sk.weight == pytest.approx(4)


def test_skeleton_splits_at_interior_attachment():
    curves = [line((0, 0), (4, 0)), line((2, 1), (2, 3))]
    g = build_connectivity_graph(curves)
    sk = build_skeleton(curves, kruskal_forest(g, 1).edges)
    assert Point2D(2, 0) in sk.positions
    assert len(sk.edges) == 4 and sk.weight == pytest.approx(4 + 2 + 1)
    tour, length = skeleton_tour(sk)
    assert length == pytest.approx(14) and tour.length == pytest.approx(14)


def test_plan_special_examples():
    p = plan_special([line((0, 0), (5, 0))], 1, 10)
    assert p.tour_length == pytest.approx(10) and p.sensor_count == 1
    p = plan_special(PARALLEL, 1, 2)
    assert p.tour_length == pytest.approx(6) and p.sensor_count == 3
    p = plan_special(COLLINEAR, 2, 2)
    assert p.tour_length == pytest.approx(10) and p.sensor_count == 3


def test_plan_bscmc_far_pair():
    curves = [line((0, 0), (1, 0)), line((0, 100), (1, 100))]
    p = plan_bscmc(curves, 1, 3)
    assert p.per_k_counts == [68, 2] and p.chosen_k == 2 and p.total_sensors == 2


def test_plan_bscmc_single_curve_equals_special():
    c = [line((0, 0), (3, 4))]
    assert plan_bscmc(c, 1, 2).total_sensors == plan_special(c, 1, 2).sensor_count


def test_forest_counts_first_entry_matches_special():
    inst = gen_instance(15, 9, region_side=60)
    g = build_connectivity_graph(inst.curves)
    mst = sorted(kruskal_forest(g, 1).edges, key=lambda e: e.key())
    counts = forest_counts(inst.curves, mst, 1, 20)
    assert counts[0] == plan_special(inst.curves, 1, 20, g).sensor_count
    assert counts[-1] == sum(max(1, math.ceil(2 * c.length / 20)) for c in inst.curves)


def test_bscmc_plans_cover(rng):
    inst = gen_instance(6, 2, region_side=40)
    for plan in (plan_special(inst.curves, 1, 30), plan_bscmc(inst.curves, 1, 30)):
        rep = simulate_sweep(plan, inst.curves)
        assert not rep.violated, rep.max_gap
