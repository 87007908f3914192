import itertools

import pytest

from barriersweep.datamule import build_g2n, plan_mdmdg
from barriersweep.harness import gen_instance

from conftest import seg


def test_g2n_single_segment():
    g = build_g2n([seg(0, 0, 5, 0)])
    assert g.vertex_count == 2 and len(g.edges) == 1
    assert g.edges[0].weight == pytest.approx(5) and g.forced == g.edges


def test_g2n_parallel():
    g = build_g2n([seg(0, 0, 1, 0), seg(0, 1, 1, 1)])
    assert g.vertex_count == 4 and len(g.edges) == 6 and len(g.forced) == 2


def test_g2n_merges_shared_endpoints():
    g = build_g2n([seg(0, 0, 1, 0), seg(1, 0, 1, 1)])
    assert g.vertex_count == 3


def test_g2n_metric(rng):
    for seed in range(100):
        inst = gen_instance(int(rng.integers(1, 6)), seed, region_side=50)
        g = build_g2n(inst.segments())
        w = {}
        for e in g.edges:
            w[e.u, e.v] = w[e.v, e.u] = e.weight
        for a, b, c in itertools.permutations(range(g.vertex_count), 3):
            assert w[a, c] <= w[a, b] + w[b, c] + 1e-9


def test_mdmdg_single_segment():
    p = plan_mdmdg([seg(0, 0, 5, 0)], 1, 5)
    assert p.tour_length == pytest.approx(10) and len(p.offsets) == 2 and p.mule_count == 4
    assert p.metadata["odd_vertices"] == 2 and p.metadata["matching_weight"] == pytest.approx(5)


def test_mdmdg_parallel_pair():
    p = plan_mdmdg([seg(0, 0, 1, 0), seg(0, 1, 1, 1)], 1, 1)
    assert p.metadata["tree_weight"] == pytest.approx(3)
    assert p.metadata["matching_weight"] == pytest.approx(1)
    assert p.tour_length == pytest.approx(4) and p.mule_count == 8
    assert p.fleet_cw == [0, 1, 2, 3] and p.fleet_ccw == [4, 5, 6, 7] and p.exact_matching


def test_mdmdg_tour_visits_every_segment(rng):
    inst = gen_instance(7, 11, region_side=40)
    p = plan_mdmdg(inst.segments(), 1, 25)
    verts = set(p.tour.vertices)
    for s in inst.segments():
        assert s.a in verts and s.b in verts
    assert p.tour.length == pytest.approx(p.tour_length)
