"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from barriersweep import kernels
from barriersweep.datamule import plan_mdmdg
from barriersweep.harness import gen_instance
from barriersweep.simulator import _tour_arrays


def workloads(rng):
    segs = rng.uniform(0, 200, (135, 4))
    pts = rng.uniform(0, 100, (14, 2))
    w = np.hypot(pts[:, None, 0] - pts[None, :, 0], pts[:, None, 1] - pts[None, :, 1])
    params = rng.uniform(0, 500, 400)
    groups = np.arange(400, dtype=np.int64)
    visit = (params, groups, 400, np.arange(0, 500, 50.0), np.ones(10), 500.0, 1.0, 0.05, 3000, 0.05, 50.0)

    inst = gen_instance(8, 1, region_side=40)
    plan = plan_mdmdg(inst.segments(), 1.0, 20.0)
    cum, xy = _tour_arrays(plan.tour)
    k = len(plan.offsets)
    n_steps = 3000
    seg_arr = np.array([[s.a.x, s.a.y, s.b.x, s.b.y] for s in inst.segments()])
    meet = (cum, xy, np.array(plan.offsets * 2), np.array([1.0] * k + [-1.0] * k), 1.0, seg_arr,
            np.full(8, 2, dtype=np.int64), np.ones(8), np.hypot(*(seg_arr[:, 2:] - seg_arr[:, :2]).T) / 2,
            np.ones(8), np.zeros((n_steps, 8)), 0.02, n_steps, 0.02, 0.04, 20.0)
    return {
        "segment_distances 135x135": ("segment_distances", (segs, segs)),
        "matching_dp 14 points": ("matching_dp", (w,)),
        "visit_gaps 400 pts x 10 sensors x 3000 steps": ("visit_gaps", visit),
        "meeting_gaps 8 sensors x 3000 steps": ("meeting_gaps", meet),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the fallback is timed")
    loads = workloads(np.random.default_rng(0))
    print(f"{'kernel':48s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, (name, fargs) in loads.items():
        times = []
        for b in backends:
            fn = getattr(kernels.backend(b), name)
            number = 1
            times.append(min(timeit.repeat(lambda: fn(*fargs), number=number, repeat=args.repeat)) / number)
        row = f"{label:48s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
