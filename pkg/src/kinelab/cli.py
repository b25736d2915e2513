"""Command-line front end.

Scalar results are printed as JSON and point clouds as CSV.  Floats are
written with 17 significant digits so output is byte-stable.  Exit codes:
0 success, 1 verification failure, 2 domain or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Iterable, List, Optional, Sequence

import numpy as np

from kinelab import fibration as fib
from kinelab import kinematics as kin
from kinelab.errors import KinelabError
from kinelab.gctrig import GenComplex
from kinelab.projective import ChartPoint, chart_to_sphere
from kinelab.quaternions import CurvatureParams
from kinelab.verify import SIGN_PATTERNS, random_chart_point, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt_float(x: float) -> str:
    x = float(x) + 0.0
    return format(x, ".17g")


def to_json(obj) -> str:
    """JSON with fixed 17-digit floats; non-finite floats become null."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_csv(out, columns: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt_float(v) for v in row])


def _flatten(record: dict, prefix: str = "") -> dict:
    flat = {}
    for k, v in record.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        else:
            flat[key] = v
    return flat


def emit_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(to_json(record) + "\n")
        return
    flat = _flatten(record)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(list(flat))
    w.writerow([fmt_float(v) if isinstance(v, float) else ("" if v is None else v) for v in flat.values()])


def resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("KINELAB_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"KINELAB_SEED must be an integer, got {env!r}") from None
    return 0


def resolve_params(args, allow_table_only: bool = False) -> Optional[CurvatureParams]:
    explicit = args.kappa1 is not None or args.kappa2 is not None
    if args.group is not None and explicit:
        raise UsageError("--group and --kappa1/--kappa2 are mutually exclusive")
    if args.group is not None:
        if args.group in kin.PRESETS:
            return kin.PRESETS[args.group]
        if allow_table_only and args.group in kin.GROUP_TABLE:
            return None
        raise UsageError(f"group {args.group!r} has no (kappa1, kappa2) model; "
                         f"presets are {', '.join(kin.PRESETS)}")
    if args.kappa1 is None or args.kappa2 is None:
        raise UsageError("give --group or both --kappa1 and --kappa2")
    return CurvatureParams(float(args.kappa1), float(args.kappa2))


def sc_dict(sc: kin.StructureConstants) -> dict:
    return {"p": float(sc.p) + 0.0, "h": float(sc.h) + 0.0, "k": float(sc.k) + 0.0}


def _name_of(sc: kin.StructureConstants) -> str:
    return kin.classify_sc(sc.sign_pattern())


def cmd_classify(args, out) -> int:
    params = resolve_params(args, allow_table_only=True)
    if params is None:
        sc = kin.StructureConstants(*(float(c) for c in kin.GROUP_TABLE[args.group]))
        record = {"kappa1": None, "kappa2": None, "group": args.group}
    else:
        sc = kin.family_constants(params)
        record = {"kappa1": params.kappa1 + 0.0, "kappa2": params.kappa2 + 0.0,
                  "group": kin.classify(params)}
    record["structure_constants"] = sc_dict(sc)
    if args.contract:
        c = kin.contract_sc(sc, args.contract)
        record["contraction"] = {"kind": args.contract, "structure_constants": sc_dict(c),
                                 "group": _name_of(c)}
    if args.symmetry:
        s = kin.symmetry_sc(sc, args.symmetry)
        record["symmetry"] = {"kind": args.symmetry, "structure_constants": sc_dict(s),
                              "group": _name_of(s)}
    emit_record(record, args.format, out)
    return EXIT_OK


def cmd_boost(args, out) -> int:
    params = resolve_params(args)
    e = kin.Event(args.t, args.x)
    theta = kin.rapidity(params, args.v)
    ep = kin.boost_by_rapidity(params, theta, e)
    record = {"kappa1": params.kappa1 + 0.0, "kappa2": params.kappa2 + 0.0, "v": args.v,
              "event": {"t": e.t, "x": e.x}, "rapidity": theta,
              "boosted": {"t": ep.t, "x": ep.x}}
    emit_record(record, args.format, out)
    return EXIT_OK


def _theta_samples(params: CurvatureParams, count: int, theta_max: float) -> np.ndarray:
    if params.kappa2 > 0:
        period = 2.0 * math.pi / math.sqrt(params.kappa2)
        return np.linspace(0.0, period, count, endpoint=False)
    return np.linspace(-theta_max, theta_max, count)


def cloud_fibers(params, rng, args):
    thetas = _theta_samples(params, args.thetas, args.theta_max)
    rows, skipped = [], 0
    for _ in range(args.count):
        a, b = rng.uniform(-args.radius, args.radius, 2)
        c = ChartPoint(GenComplex(float(a), float(b), params.kappa2), "w")
        try:
            pts = fib.fiber_points(c, params, thetas)
        except KinelabError:
            skipped += 1
            continue
        for t, q in zip(thetas, pts):
            rows.append((c.value.re, c.value.im, t, q.x, q.y, q.u, q.v))
    return ["w_re", "w_im", "theta", "x", "y", "u", "v"], rows, skipped


def cloud_sphere(params, rng, args):
    axis = np.linspace(-args.radius, args.radius, args.grid)
    rows, skipped = [], 0
    for a in axis:
        for b in axis:
            w = GenComplex(float(a) + 0.0, float(b) + 0.0, params.kappa2)
            try:
                Y, T, X = chart_to_sphere(w, params.kappa1)
            except KinelabError:
                skipped += 1
                continue
            rows.append((w.re, w.im, Y, T, X))
    return ["w_re", "w_im", "Y", "T", "X"], rows, skipped


def cloud_geodesic(params, rng, args):
    q0 = fib.section(random_chart_point(rng, params), params)
    rows, skipped = [], 0
    for t in np.linspace(0.0, args.t_max, args.steps + 1):
        q = fib.horizontal_geodesic(q0, float(t))
        c = fib.pi_project(q)
        if c.chart != "w":
            skipped += 1
            continue
        rows.append((t, q.x, q.y, q.u, q.v, c.value.re, c.value.im))
    return ["t", "x", "y", "u", "v", "w_re", "w_im"], rows, skipped


CLOUDS = {"fibers": cloud_fibers, "sphere": cloud_sphere, "geodesic": cloud_geodesic}


def cmd_cloud(args, out) -> int:
    params = resolve_params(args)
    rng = np.random.default_rng(resolve_seed(args))
    columns, rows, skipped = CLOUDS[args.what](params, rng, args)
    if skipped:
        print(f"skipped {skipped} null-locus samples", file=sys.stderr)
    if args.format == "json":
        out.write(to_json({"columns": columns, "rows": [list(r) for r in rows],
                           "skipped": skipped}) + "\n")
    else:
        write_csv(out, columns, rows)
    return EXIT_OK


def cmd_exp(args, out) -> int:
    params = resolve_params(args)
    m = kin.one_param(args.gen, args.param, params)
    record = {"kappa1": params.kappa1 + 0.0, "kappa2": params.kappa2 + 0.0,
              "generator": args.gen, "param": args.param,
              "matrix": [[float(v) for v in row] for row in m]}
    if args.format == "json":
        out.write(to_json(record) + "\n")
    else:
        write_csv(out, ["y", "t", "x"], m.tolist())
    return EXIT_OK


def cmd_holonomy(args, out) -> int:
    params = resolve_params(args)
    center = GenComplex(args.w_re, args.w_im, params.kappa2)
    loop = fib.square_loop(center, args.side, args.per_side)
    theta = fib.holonomy_loop(loop, fib.section(loop[0], params), params)
    area = args.side ** 2 / (1.0 + params.kappa1 * center.norm_sq()) ** 2
    record = {"kappa1": params.kappa1 + 0.0, "kappa2": params.kappa2 + 0.0,
              "center": {"re": center.re, "im": center.im}, "side": args.side,
              "area": area, "theta": theta,
              "ratio": theta / (params.kappa1 * area) if params.kappa1 else None}
    emit_record(record, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.all:
        if args.group is not None or args.kappa1 is not None or args.kappa2 is not None:
            raise UsageError("--all cannot be combined with --group/--kappa1/--kappa2")
        patterns = SIGN_PATTERNS
    else:
        patterns = [resolve_params(args)]
    seed = resolve_seed(args)
    report, failing = [], []
    for params in patterns:
        results = run_suite(params, seed=seed, tolerance=args.tolerance)
        for r in results:
            if not r.passed:
                failing.append(f"{r.name}@({params.kappa1:g},{params.kappa2:g})")
        report.append({
            "kappa1": params.kappa1 + 0.0, "kappa2": params.kappa2 + 0.0,
            "group": kin.classify(params),
            "passed": sum(r.passed for r in results),
            "failed": sum(not r.passed for r in results),
            "checks": [{"name": r.name, "residual": r.residual, "tolerance": r.tolerance,
                        "passed": r.passed} for r in results],
        })
    summary = {"seed": seed, "patterns": report, "failing": failing}
    if args.format == "json":
        out.write(to_json(summary) + "\n")
    else:
        rows = [(p["kappa1"], p["kappa2"], c["name"], c["residual"], c["tolerance"], c["passed"])
                for p in report for c in p["checks"]]
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["kappa1", "kappa2", "check", "residual", "tolerance", "passed"])
        for k1, k2, name, res, tol, ok in rows:
            w.writerow([fmt_float(k1), fmt_float(k2), name, fmt_float(res), fmt_float(tol), ok])
    if failing:
        print("verification failed: " + ", ".join(failing), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--kappa1", type=float)
    p.add_argument("--kappa2", type=float)
    p.add_argument("--group", choices=kin.GROUP_NAMES)
    p.add_argument("--format", choices=("json", "csv"), default=default_format)
    p.add_argument("--seed", type=int, default=None,
                   help="random seed (falls back to $KINELAB_SEED, then 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kinelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="name the kinematical group and its structure constants")
    _add_common(p, "json")
    p.add_argument("--contract", choices=("speed-space", "speed-time", "space-time"))
    p.add_argument("--symmetry", choices=("S_P", "S_H", "S_K"))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("boost", help="apply an inertial transformation to an event")
    _add_common(p, "json")
    p.add_argument("-v", type=float, required=True, help="relative velocity")
    p.add_argument("-t", type=float, required=True, help="event time")
    p.add_argument("-x", type=float, required=True, help="event position")
    p.set_defaults(func=cmd_boost)

    p = sub.add_parser("cloud", help="sample fibers, the sphere map, or a horizontal geodesic")
    _add_common(p, "csv")
    p.add_argument("what", choices=tuple(CLOUDS))
    p.add_argument("--count", type=int, default=8, help="number of fibers")
    p.add_argument("--thetas", type=int, default=16, help="samples per fiber")
    p.add_argument("--theta-max", type=float, default=2.0,
                   help="fiber parameter range when kappa2 <= 0")
    p.add_argument("--radius", type=float, default=2.0, help="half-width of the w sampling box")
    p.add_argument("--grid", type=int, default=11, help="grid points per axis for 'sphere'")
    p.add_argument("--steps", type=int, default=100, help="time steps for 'geodesic'")
    p.add_argument("--t-max", type=float, default=1.0)
    p.set_defaults(func=cmd_cloud)

    p = sub.add_parser("exp", help="closed-form one-parameter subgroup matrix")
    _add_common(p, "json")
    p.add_argument("gen", choices=("H", "P", "K"))
    p.add_argument("param", type=float)
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("holonomy", help="fiber angle around a small square loop in the w-chart")
    _add_common(p, "json")
    p.add_argument("--side", type=float, default=0.1)
    p.add_argument("--per-side", type=int, default=250)
    p.add_argument("--w-re", type=float, default=0.0)
    p.add_argument("--w-im", type=float, default=0.0)
    p.set_defaults(func=cmd_holonomy)

    p = sub.add_parser("verify", help="run the invariant suite")
    _add_common(p, "json")
    p.add_argument("--all", action="store_true", help="run all nine sign patterns")
    p.add_argument("--tolerance", type=float, default=None,
                   help="override every check's tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kinelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KinelabError as exc:
        print(f"kinelab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
