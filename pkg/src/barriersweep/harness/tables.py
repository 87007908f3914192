"""Experiment drivers: mean sensor counts over random instances, as CSV rows."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..multi_planner import build_connectivity_graph, plan_bscmc, plan_special
from .generate import gen_instance

N_GRID = tuple(range(5, 136, 10))
T_GRID = tuple(range(50, 151, 10))
CSV_HEADER = ("param", "alg", "mean_sensors", "trials", "seed0")
ALGORITHMS = ("bscmc", "special")


@dataclass(frozen=True)
class ExperimentRow:
    param: float
    alg: str
    mean_sensors: float
    trials: int
    seed0: int


def _counts(n: int, seed: int, ts: Sequence[float], v: float) -> list[tuple[int, int]]:
    inst = gen_instance(n, seed, v=v)
    g = build_connectivity_graph(inst.curves)
    out = []
    for t in ts:
        out.append((plan_bscmc(inst.curves, v, t, g).total_sensors,
                    plan_special(inst.curves, v, t, g).sensor_count))
    return out


def _run(jobs: list[tuple[int, int, tuple[float, ...], float]], workers: int):
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_counts, *zip(*jobs)))
    return [_counts(*j) for j in jobs]


def _rows(param: float, per_trial: Iterable[tuple[int, int]], trials: int, seed0: int):
    sums = [0, 0]
    for b, s in per_trial:
        sums[0] += b
        sums[1] += s
    return [ExperimentRow(param, alg, total / trials, trials, seed0)
            for alg, total in zip(ALGORITHMS, sums)]


def run_table_n(t: float = 50.0, ns: Sequence[int] = N_GRID, trials: int = 100, seed0: int = 0,
                v: float = 1.0, workers: int = 1) -> list[ExperimentRow]:
    """Mean sensors of both multi-curve planners as the number of segments varies.

    Trial ``i`` of every grid point uses seed ``seed0 + i``.
    """
    rows = []
    for n in ns:
        res = _run([(n, seed0 + i, (t,), v) for i in range(trials)], workers)
        rows += _rows(n, (r[0] for r in res), trials, seed0)
    return sorted(rows, key=lambda r: (r.param, r.alg))


def run_table_t(n: int = 50, ts: Sequence[float] = T_GRID, trials: int = 100, seed0: int = 0,
                v: float = 1.0, workers: int = 1) -> list[ExperimentRow]:
    """Mean sensors as the sweep period varies; each trial's instance is shared across periods."""
    ts = tuple(ts)
    res = _run([(n, seed0 + i, ts, v) for i in range(trials)], workers)
    rows = []
    for k, t in enumerate(ts):
        rows += _rows(t, (r[k] for r in res), trials, seed0)
    return sorted(rows, key=lambda r: (r.param, r.alg))


def rows_to_csv(rows: Sequence[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        param = int(r.param) if float(r.param).is_integer() else r.param
        w.writerow((param, r.alg, f"{r.mean_sensors:.6g}", r.trials, r.seed0))
    return buf.getvalue()


def rows_from_csv(text: str) -> list[ExperimentRow]:
    rd = csv.DictReader(io.StringIO(text))
    if tuple(rd.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {rd.fieldnames}")
    return [ExperimentRow(float(r["param"]), r["alg"], float(r["mean_sensors"]),
                          int(r["trials"]), int(r["seed0"])) for r in rd]
