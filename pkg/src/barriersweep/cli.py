"""Command-line entry point: gen, plan, simulate, bench, render.

Exit status: 0 success, 1 invalid input, 2 a plan failed its simulated contract.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .datamule import DataMulePlan, plan_mdmdg
from .geometry import Point2D
from .graphcore import GraphError
from .harness import formats
from .harness.generate import Instance, gen_instance
from .harness.svg import render_svg
from .harness.tables import rows_to_csv, run_table_n, run_table_t
from .multi_planner import MultiDeploymentPlan, plan_bscmc, plan_special
from .simulator import SensorStrategy, simulate_energy, simulate_mdmdg, simulate_sweep
from .single_planner import DeploymentPlan, EnergyInstance, plan_energy_restricted, plan_single_curve

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return x


def _count(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if x < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="barriersweep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random segment instance")
    g.add_argument("--n", type=_count, required=True, help="number of segments")
    g.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    g.add_argument("--v", type=_positive, default=1.0, help="sensor speed, m/s (default 1)")
    g.add_argument("--t", type=_positive, default=50.0, help="sweep period, s (default 50)")
    g.add_argument("--region", type=_positive, default=200.0, help="square side, m (default 200)")
    g.add_argument("--max-len", type=_positive, default=5.0, help="max segment length, m (default 5)")
    g.add_argument("--energy", type=float, nargs=2, metavar=("X", "Y"),
                   help="energy source position (adds an energy block)")
    g.add_argument("--T", dest="T", type=_positive, help="battery period, s (with --energy)")
    g.add_argument("-o", "--output", required=True)

    pl = sub.add_parser("plan", help="compute a deployment plan")
    pl.add_argument("--alg", choices=["single", "energy", "special", "bscmc", "mdmdg"], required=True)
    pl.add_argument("-i", "--input", required=True, help="instance JSON")
    pl.add_argument("-o", "--output", required=True, help="plan JSON")
    pl.add_argument("--v", type=_positive, help="override instance speed")
    pl.add_argument("--t", type=_positive, help="override instance sweep period")
    pl.add_argument("--T", dest="T", type=_positive, help="override battery period")

    s = sub.add_parser("simulate", help="check a plan by discrete-time simulation")
    s.add_argument("--check", choices=["sweep", "energy", "mdmdg"], required=True)
    s.add_argument("-i", "--input", required=True, help="instance JSON")
    s.add_argument("-p", "--plan", required=True, help="plan JSON")
    s.add_argument("-o", "--output", help="report JSON")
    s.add_argument("--dt", type=_positive, help="time step, s (default t/1000)")
    s.add_argument("--horizon", type=_positive, help="simulated time, s (default 3t)")
    s.add_argument("--spacing", type=_positive, help="curve sample spacing, m (default vt/10)")
    s.add_argument("--strategy", choices=["stationary", "random-walk", "bounce", "evader"],
                   default="stationary", help="mobile sensor motion for --check mdmdg")
    s.add_argument("--sensor-speed", type=float, default=None,
                   help="mobile sensor speed (default: mule speed; 0 for stationary)")
    s.add_argument("--meet-radius", type=_positive, help="meeting distance, m (default v*dt)")
    s.add_argument("--seed", type=int, default=0, help="seed for random-walk sensors")

    b = sub.add_parser("bench", help="reproduce the sensor-count tables")
    b.add_argument("--table", choices=["n", "t"], required=True)
    b.add_argument("--trials", type=_count, default=100)
    b.add_argument("--seed", type=int, default=0, help="seed of trial 0")
    b.add_argument("--workers", type=_count, default=1)
    b.add_argument("-o", "--output", help="CSV path (default stdout)")

    r = sub.add_parser("render", help="draw an instance and optional plan as SVG")
    r.add_argument("-i", "--input", required=True)
    r.add_argument("-p", "--plan")
    r.add_argument("-o", "--output", required=True)
    return p


def _cmd_gen(a) -> int:
    inst = gen_instance(a.n, a.seed, a.region, a.max_len, a.v, a.t)
    if a.energy is not None:
        if a.T is None:
            raise UsageError("--energy requires --T")
        inst.energy = (Point2D(*a.energy), a.T)
    formats.save_instance(inst, a.output)
    return EXIT_OK


def _one_curve(inst: Instance, alg: str):
    if len(inst.curves) != 1:
        raise ValueError(f"--alg {alg} needs exactly one curve, instance has {len(inst.curves)}")
    return inst.curves[0]


def _cmd_plan(a) -> int:
    inst = formats.load_instance(a.input)
    v = a.v or inst.v
    t = a.t or inst.t
    if a.alg == "single":
        plan = plan_single_curve(_one_curve(inst, a.alg), v, t)
    elif a.alg == "energy":
        if inst.energy is None:
            raise ValueError("instance has no energy source")
        e, T = inst.energy
        plan = plan_energy_restricted(EnergyInstance(_one_curve(inst, a.alg), e, v, t, a.T or T))
    elif a.alg == "special":
        plan = plan_special(inst.curves, v, t)
    elif a.alg == "bscmc":
        plan = plan_bscmc(inst.curves, v, t)
    else:
        plan = plan_mdmdg(inst.segments(), v, t)
    formats.save_plan(plan, a.output)
    return EXIT_OK


def _cmd_simulate(a) -> int:
    inst = formats.load_instance(a.input)
    plan = formats.load_plan(a.plan)
    if a.check == "sweep":
        if not isinstance(plan, (DeploymentPlan, MultiDeploymentPlan)):
            raise ValueError("sweep check needs a sensor deployment plan")
        report = simulate_sweep(plan, inst.curves, a.horizon, a.dt, a.spacing)
    elif a.check == "energy":
        if not isinstance(plan, DeploymentPlan) or inst.energy is None:
            raise ValueError("energy check needs an energy plan and an instance with an energy source")
        e, T = inst.energy
        report = simulate_energy(plan, e, plan.metadata.get("T", T), a.horizon, a.dt)
    else:
        if not isinstance(plan, DataMulePlan):
            raise ValueError("mdmdg check needs a data-mule plan")
        kind = a.strategy.replace("-", "_")
        speed = a.sensor_speed
        if speed is None:
            speed = 0.0 if kind == "stationary" else plan.speed
        strategies = [SensorStrategy(kind, seg, speed, seed=a.seed + i)
                      for i, seg in enumerate(inst.segments())]
        report = simulate_mdmdg(plan, strategies, a.horizon, a.dt, a.meet_radius)
    if a.output:
        formats.save_report(report, a.output)
    status = "VIOLATED" if report.violated else "ok"
    print(f"{a.check}: max_gap={report.max_gap:.6g} {status}")
    return EXIT_VIOLATION if report.violated else EXIT_OK


def _cmd_bench(a) -> int:
    if a.table == "n":
        rows = run_table_n(trials=a.trials, seed0=a.seed, workers=a.workers)
    else:
        rows = run_table_t(trials=a.trials, seed0=a.seed, workers=a.workers)
    text = rows_to_csv(rows)
    if a.output:
        Path(a.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_render(a) -> int:
    inst = formats.load_instance(a.input)
    plan = formats.load_plan(a.plan) if a.plan else None
    Path(a.output).write_text(render_svg(inst, plan), encoding="utf-8")
    return EXIT_OK


COMMANDS = {"gen": _cmd_gen, "plan": _cmd_plan, "simulate": _cmd_simulate,
            "bench": _cmd_bench, "render": _cmd_render}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"barriersweep: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, GraphError, OSError, TypeError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(msg if msg.startswith("infeasible") else f"barriersweep: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
