"""JSON instance, plan and report files."""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from ..datamule import DataMulePlan
from ..geometry import Point2D, Polyline
from ..multi_planner import MultiDeploymentPlan
from ..single_planner import DeploymentPlan
from .generate import Instance

VERSION = 1


class FormatError(ValueError):
    pass


def _num(x: float) -> float:
    # repr round-trips doubles (17 significant digits)
    return float(x)


def _xy(points) -> list[list[float]]:
    return [[_num(p.x), _num(p.y)] for p in points]


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    d: dict[str, Any] = {
        "version": VERSION,
        "region_side": _num(inst.region_side),
        "v": _num(inst.v),
        "t": _num(inst.t),
        "curves": [{"closed": c.closed, "vertices": _xy(c.vertices)} for c in inst.curves],
        "seed": inst.seed,
    }
    if inst.max_len is not None:
        d["max_len"] = _num(inst.max_len)
    if inst.energy is not None:
        e, T = inst.energy
        d["energy"] = {"e": [_num(e.x), _num(e.y)], "T": _num(T)}
    return d


def instance_from_dict(d: dict[str, Any]) -> Instance:
    try:
        if d.get("version") != VERSION:
            raise FormatError(f"unsupported instance version {d.get('version')!r}")
        curves = [Polyline.from_coords(c["vertices"], bool(c.get("closed", False))) for c in d["curves"]]
        energy = None
        if d.get("energy") is not None:
            ex, ey = d["energy"]["e"]
            energy = (Point2D(float(ex), float(ey)), float(d["energy"]["T"]))
        return Instance(curves, float(d["v"]), float(d["t"]), energy, d.get("seed"),
                        float(d.get("region_side", 200.0)), d.get("max_len"))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed instance: {exc}") from exc


def _single_to_dict(p: DeploymentPlan) -> dict[str, Any]:
    return {
        "tour": _xy(p.tour.vertices),
        "tour_length": _num(p.tour_length),
        "sensor_offsets": [_num(x) for x in p.sensor_offsets],
    }


def plan_to_dict(plan) -> dict[str, Any]:
    if isinstance(plan, MultiDeploymentPlan):
        comps = [dict(_single_to_dict(p), metadata=p.metadata) for p in plan.plans]
        first = plan.plans[0]
        return {
            "algorithm": "bscmc",
            **_single_to_dict(first),
            "speed": first.speed,
            "period_t": first.period_t,
            "metadata": {
                "chosen_k": plan.chosen_k,
                "total_sensors": plan.total_sensors,
                "per_k_counts": plan.per_k_counts,
                "components": comps,
                "curve_groups": plan.components,
            },
        }
    if isinstance(plan, DataMulePlan):
        return {
            "algorithm": "mdmdg",
            "tour": _xy(plan.tour.vertices),
            "tour_length": _num(plan.tour_length),
            "sensor_offsets": [_num(x) for x in plan.offsets],
            "fleets": {"cw": plan.fleet_cw, "ccw": plan.fleet_ccw},
            "speed": plan.speed,
            "period_t": plan.period_t,
            "metadata": dict(plan.metadata, exact_matching=plan.exact_matching),
        }
    if isinstance(plan, DeploymentPlan):
        return {
            "algorithm": plan.metadata.get("algorithm", "single"),
            **_single_to_dict(plan),
            "speed": plan.speed,
            "period_t": plan.period_t,
            "metadata": plan.metadata,
        }
    raise TypeError(f"cannot serialize {type(plan).__name__}")


def _single_from(d: dict[str, Any], v: float, t: float, meta: dict[str, Any]) -> DeploymentPlan:
    tour = Polyline.from_coords(d["tour"], closed=True)
    return DeploymentPlan(tour, float(d["tour_length"]), v, t,
                          [float(x) for x in d["sensor_offsets"]], dict(meta))


def plan_from_dict(d: dict[str, Any]):
    try:
        alg = d["algorithm"]
        meta = d.get("metadata", {})
        v, t = float(d["speed"]), float(d["period_t"])
        if alg == "bscmc":
            plans = [_single_from(c, v, t, c.get("metadata", {})) for c in meta["components"]]
            return MultiDeploymentPlan(plans, meta["curve_groups"], int(meta["chosen_k"]),
                                       list(meta["per_k_counts"]))
        if alg == "mdmdg":
            tour = Polyline.from_coords(d["tour"], closed=True)
            m = dict(meta)
            exact = bool(m.pop("exact_matching", False))
            return DataMulePlan(tour, float(d["tour_length"]), v, t,
                                [float(x) for x in d["sensor_offsets"]], exact, m)
        return _single_from(d, v, t, meta)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed plan: {exc}") from exc


def _read(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def _write(obj: dict[str, Any], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def load_instance(path):
    return instance_from_dict(_read(path))


def save_instance(inst: Instance, path) -> None:
    _write(instance_to_dict(inst), path)


def load_plan(path):
    return plan_from_dict(_read(path))


def save_plan(plan, path) -> None:
    _write(plan_to_dict(plan), path)


def _finite(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _finite(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_finite(v) for v in x]
    return x


def save_report(report, path) -> None:
    """Write a report; a gap that never closed (no visit at all) is written as null."""
    _write(_finite(report.to_dict()), path)
