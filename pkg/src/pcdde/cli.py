"""Command-line front end.

Exit status: 0 success / all checks pass, 1 validation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import itertools
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis
from .coefficients import ParameterError, ingest_params
from .exact import NonTransversalError, integrate_exact, stroboscopic_samples
from .numeric import RhsSpec, integrate_numeric, stroboscopic_numeric
from .return_map import DegenerateMapError
from .scenario import (KEYS, REQUIRED, Scenario, ScenarioError, format_history, from_mapping,
                       load)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _g6(x: float) -> str:
    return f"{x:.6g}"


def _write(path: str, text: str):
    Path(path).write_text(text, encoding="utf-8")


def add_scenario_args(p: argparse.ArgumentParser):
    p.add_argument("--scenario", help="scenario file (key = value lines)")
    for key in ("a1", "a2", "p1", "p2", "p3"):
        p.add_argument(f"--{key}", type=float)
    p.add_argument("--a3", dest="a3_signed", type=float,
                   help="third coefficient value as printed in the tables (negative)")
    p.add_argument("--history", help="constant value, or knots 's:x, s:x, ...' on [-1, 0]")
    p.add_argument("--delta", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--dump-scenario", metavar="PATH",
                   help="write the effective scenario to PATH")


def scenario_from_args(args) -> Scenario:
    """Scenario file values, overridden by any inline flags."""
    raw: dict = {}
    if args.scenario:
        base = load(args.scenario)
        raw.update(_scenario_items(base))
    for key in KEYS:
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    missing = [k for k in REQUIRED if raw.get(k) is None]
    if missing:
        raise UsageError(f"missing parameters: {', '.join('--' + k.replace('_signed', '') for k in missing)}")
    scen = from_mapping(raw)
    if getattr(args, "dump_scenario", None):
        _write(args.dump_scenario, scen.dumps())
    return scen


def _scenario_items(s: Scenario) -> dict:
    p = s.params
    items = {"a1": p.a1, "a2": p.a2, "a3_signed": p.a3_signed, "p1": p.p1, "p2": p.p2,
             "p3": p.p3, "delta": s.delta, "mu": s.mu, "step": s.step, "t_end": s.t_end}
    if s.history is not None:
        items["history"] = format_history(s.history)
    return items


def cmd_fixed_point(args) -> int:
    scen = scenario_from_args(args)
    variants = ["I", "II"] if args.variant == "both" else [args.variant]
    any_valid = False
    blocks = []
    for v in variants:
        try:
            res = analysis.fixed_point(scen.params, v)
        except DegenerateMapError as exc:
            print(f"variant {v}: {exc}", file=sys.stderr)
            continue
        blocks.append(res.to_text())
        any_valid |= res.validity.passed
    print("\n\n".join(blocks))
    return EXIT_OK if any_valid else EXIT_FAIL


def _numeric_zeros(times: np.ndarray, values: np.ndarray) -> list[float]:
    out = []
    s = np.sign(values)
    for i in np.nonzero(s[:-1] * s[1:] < 0)[0]:
        x0, x1 = values[i], values[i + 1]
        out.append(float(times[i] - x0 * (times[i + 1] - times[i]) / (x1 - x0)))
    return out


def _run(scen: Scenario, solver: str):
    if scen.history is None:
        raise UsageError("a history is required (--history or 'history =' in the scenario)")
    t_end = scen.horizon
    n = int(math.floor(t_end / scen.params.T + 1e-9))
    if solver == "exact":
        traj, events = integrate_exact(scen.history, scen.params, t_end)
        return traj, events, list(traj.zeros), stroboscopic_samples(traj, scen.params, n)
    traj = integrate_numeric(scen.history, RhsSpec(scen.params, scen.delta, scen.mu),
                             scen.step, t_end)
    zeros = _numeric_zeros(traj.times, traj.values)
    return traj, None, zeros, stroboscopic_numeric(traj, scen.params.T, n)


def _trajectory_csv(args, traj, events) -> str:
    # exact trajectories are already sparse; stride applies to dense output only
    return traj.to_csv() if events is not None else traj.to_csv(stride=args.stride)


def _emit_files(args, traj, events):
    if args.output:
        _write(args.output, _trajectory_csv(args, traj, events))
    if args.events and events is not None:
        _write(args.events, "".join(e.to_line() + "\n" for e in events))


def cmd_simulate(args) -> int:
    scen = scenario_from_args(args)
    traj, events, zeros, samples = _run(scen, args.solver)
    _emit_files(args, traj, events)
    tol = args.tol if args.tol is not None else (1e-9 if args.solver == "exact" else 1e-3)
    print(f"solver: {args.solver}")
    if args.solver == "numeric" and traj.low_accuracy:
        print("mode: low-accuracy (delta = 0)")
    print(f"zeros: {' '.join(_g6(z) for z in zeros)}")
    print(f"stroboscopic: {' '.join(_g6(v) for v in samples)}")
    if len(samples) >= 4:
        verdict = analysis.detect_period(samples, tol)
        print(f"verdict: {verdict.kind} residual={verdict.residual:.3g} "
              f"samples={verdict.iterations_used}")
    else:
        print("verdict: none (need at least 3 periods)")
    return EXIT_OK


def cmd_export(args) -> int:
    scen = scenario_from_args(args)
    traj, events, _, _ = _run(scen, args.solver)
    if not args.output:
        sys.stdout.write(_trajectory_csv(args, traj, events))
    _emit_files(args, traj, events)
    return EXIT_OK


def cmd_verify_tables(args) -> int:
    which = ["I", "II"] if args.which == "both" else [args.which]
    results = [r for w in which for r in analysis.reproduce_table(w)]
    if args.output:
        _write(args.output, analysis.table_report_csv(results))
    print(analysis.table_summary(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def parse_grid(text: str) -> tuple[str, np.ndarray]:
    try:
        name, rng = text.split("=")
        start, stop, count = rng.split(":")
        count = int(count)
        values = np.linspace(float(start), float(stop), count)
    except ValueError:
        raise UsageError(f"bad grid {text!r}; expected name=start:stop:count") from None
    name = {"a3": "a3_signed"}.get(name.strip(), name.strip())
    if name not in REQUIRED:
        raise UsageError(f"cannot sweep {name!r}; choose one of a1 a2 a3 p1 p2 p3")
    if count < 1:
        raise UsageError(f"empty grid for {name}")
    return name, values


def cmd_sweep(args) -> int:
    grids = [parse_grid(g) for g in args.grid or []]
    if not grids:
        raise UsageError("empty grid: give at least one --grid name=start:stop:count")
    base = {k: getattr(args, k) for k in REQUIRED}
    if args.scenario:
        base = {**{k: v for k, v in _scenario_items(load(args.scenario)).items()
                   if k in REQUIRED}, **{k: v for k, v in base.items() if v is not None}}
    swept = {name for name, _ in grids}
    missing = [k for k in REQUIRED if k not in swept and base.get(k) is None]
    if missing:
        raise UsageError(f"missing parameters: {', '.join(missing)}")
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    counts: dict[str, int] = {}
    try:
        out.write("a1,a2,a3_signed,p1,p2,p3,T,m,b,h_star,classification\n")
        for combo in itertools.product(*(vals for _, vals in grids)):
            point = dict(base)
            point.update({name: float(v) for (name, _), v in zip(grids, combo)})
            params = ingest_params(*(point[k] for k in REQUIRED))
            kind, m, b, h = analysis.classify_point(params, args.variant)
            counts[kind] = counts.get(kind, 0) + 1
            out.write(",".join(f"{point[k]:.17g}" for k in REQUIRED)
                      + f",{params.T:.17g},{m:.17g},{b:.17g},{h:.17g},{kind}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    print(" ".join(f"{k}={counts[k]}" for k in sorted(counts)),
          file=sys.stderr if out is sys.stdout else sys.stdout)
    return EXIT_OK


def cmd_smooth_compare(args) -> int:
    scen = scenario_from_args(args)
    deltas = [float(d) for d in args.deltas.split(",")]
    points = analysis.smoothing_sweep(scen.params, deltas, step=args.sweep_step,
                                      variant=args.variant, n_periods=args.n_periods)
    h_star = analysis.fixed_point(scen.params, args.variant).h_star
    lines = ["delta,h_hat,h_raw,err"]
    lines += [f"{p.delta:.17g},{p.h_hat:.17g},{p.h_raw:.17g},{p.err:.17g}" for p in points]
    if args.output:
        _write(args.output, "\n".join(lines) + "\n")
    print(f"h_star: {_g6(h_star)}")
    for p in points:
        print(f"delta={_g6(p.delta)} h_hat={_g6(p.h_hat)} h_raw={_g6(p.h_raw)} err={p.err:.3g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcdde",
        description="Exact and numeric solutions, return maps and periodic orbits of "
                    "x'(t) = a(t) f(x(t-1)) with periodic piecewise-constant a(t).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fixed-point", help="closed-form fixed point and validity report")
    add_scenario_args(p)
    p.add_argument("--variant", choices=["I", "II", "both"], default="both")
    p.set_defaults(func=cmd_fixed_point)

    for name, func, helptext in (("simulate", cmd_simulate, "integrate and classify the orbit"),
                                 ("export", cmd_export, "write trajectory data only")):
        p = sub.add_parser(name, help=helptext)
        add_scenario_args(p)
        p.add_argument("--solver", choices=["exact", "numeric"], default="exact")
        p.add_argument("--output", "-o", help="trajectory CSV path")
        p.add_argument("--events", help="event log path (exact solver)")
        p.add_argument("--stride", type=int, default=1, help="row stride for numeric output")
        if name == "simulate":
            p.add_argument("--tol", type=float, help="period detection tolerance")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-tables", help="reproduce the built-in parameter tables")
    p.add_argument("--which", choices=["I", "II", "both"], default="both")
    p.add_argument("--output", "-o", default="table_report.csv", help="per-row CSV path")
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("sweep", help="classify a parameter grid")
    add_scenario_args(p)
    p.add_argument("--variant", choices=["I", "II"], default="I")
    p.add_argument("--grid", action="append", metavar="NAME=START:STOP:COUNT")
    p.add_argument("--output", "-o", help="grid CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("smooth-compare", help="smoothed fixed point against the sharp one")
    add_scenario_args(p)
    p.add_argument("--variant", choices=["I", "II"], default="I")
    p.add_argument("--deltas", default="0.1,0.01,0.001")
    p.add_argument("--sweep-step", type=float, default=None,
                   help="fixed integration step (default delta/10 per delta)")
    p.add_argument("--n-periods", type=int, default=24)
    p.add_argument("--output", "-o", help="CSV path")
    p.set_defaults(func=cmd_smooth_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateMapError, NonTransversalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ScenarioError, ParameterError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
