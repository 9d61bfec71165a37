"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 invalid input.
"""
import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import homogeneous as hg
from .errors import GeoprodError, SpecError
from .geodesic import energy, generators_from_velocity, lax_residual, ProductCurve
from .oracle import OdeConfig, OrbitMap, bench, compare_paths, integrate_horizontal
from .spaces import EXAMPLES, build_space, load_spec

DEFAULT_TOL = 1e-11
COMPARE_TOL = 1e-5
FMT = "%.17g"


class InputError(Exception):
    pass


def check_tolerance():
    raw = os.environ.get("GEOPROD_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"GEOPROD_TOL is not a number: {raw!r}") from None
    if not tol > 0:
        raise InputError("GEOPROD_TOL must be positive")
    return tol


def _load(path):
    try:
        spec = load_spec(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except GeoprodError as exc:
        raise InputError(f"{path}: {exc}") from None
    return spec


def _velocity(cm, text, seed):
    p = cm.m_basis.shape[1]
    if text is None:
        c = np.random.default_rng(seed).standard_normal(p)
        c /= np.linalg.norm(c)
    else:
        try:
            c = np.array([float(x) for x in text.split(",") if x.strip()])
        except ValueError:
            raise InputError(f"--velocity must be comma-separated numbers, got {text!r}") from None
        if c.shape != (p,):
            raise InputError(f"--velocity needs {p} coefficients (dim m = {p}), got {c.size}")
        if not np.all(np.isfinite(c)):
            raise InputError("--velocity has non-finite entries")
    return c, cm.from_m_coords(c)


def run_checks(cm, seed=42, tol=DEFAULT_TOL):
    """Every algebraic hypothesis behind the closed-form geodesics, as (name, violation) pairs."""
    split = cm.split
    alg = cm.algebra
    rng = np.random.default_rng(seed)
    proj = max((hg.check_lem2(cm, rng.standard_normal(alg.dim), rng.standard_normal(alg.dim))
                for _ in range(hg.N_RANDOM)), default=0.0)
    checks = [
        ("jacobi_identity", alg.jacobi_violation()),
        ("form_ad_invariance", split.Q.ad_invariance_violation()),
        ("h_m_orthogonality", split.orthogonality_violation()),
        ("reductivity", split.reductivity_violation()),
        ("natural_reductivity", hg.check_natural_reductivity(split).max_violation),
        ("ad_h_skew_symmetry", hg.check_ad_h_skew(split).max_violation),
        ("direct_sum_decomposition", hg.check_decomposition(cm).max_violation),
        ("h_invariance_of_eigenspaces", hg.check_h_invariance(cm).max_violation),
        ("bracket_condition", hg.check_bracket_condition(cm).max_violation),
        ("A_symmetry", hg.check_A_symmetry(cm).max_violation),
        ("A_equivariance", hg.check_A_equivariance(cm).max_violation),
        ("m_projection_identity", proj),
    ]
    rows = [{"name": n, "violation": float(v), "threshold": tol, "passed": bool(v <= tol)}
            for n, v in checks]
    return {"checks": rows, "passed": all(r["passed"] for r in rows)}


def cmd_verify(args):
    spec = _load(args.spec)
    tol = check_tolerance()
    _, _, cm = build_space(spec)
    report = run_checks(cm, seed=args.seed, tol=tol)
    report = {"space": spec.label, "lambdas": list(spec.lambdas), "seed": args.seed, **report}
    width = max(len(r["name"]) for r in report["checks"])
    print(f"{spec.label}  lambdas={list(spec.lambdas)}  dims(m_i)={list(cm.dims)}")
    for r in report["checks"]:
        print(f"{r['name']:<{width}}  {r['violation']:.3e}  <= {r['threshold']:.1e}  "
              f"{'PASS' if r['passed'] else 'FAIL'}")
    print("overall:", "PASS" if report["passed"] else "FAIL")
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    return 0 if report["passed"] else 1


def geodesic_csv(cm, c, v, t_max, samples):
    pc = ProductCurve(generators_from_velocity(cm, v))
    om = OrbitMap.from_split(cm.split)
    n = cm.algebra.size
    header = ["t"] + [f"g_{r}_{col}" for col in om.anchored for r in range(n)]
    header += ["residual_mod_h", "residual_full", "energy"]
    lines = [",".join(header)]
    for t in np.linspace(0.0, t_max, samples):
        cols = om(pc.eval(t)).T.reshape(-1)
        res = lax_residual(cm, pc, t)
        vals = [t, *cols, res.mod_h, res.full, energy(cm, pc, t)]
        lines.append(",".join(FMT % x for x in vals))
    companion = {
        "lambdas": list(cm.lambdas),
        "velocity_m": [float(x) for x in c],
        "velocity": [float(x) for x in v],
        "generators": [[float(x) for x in X] for X in pc.gen.X],
        "dims": list(cm.dims),
    }
    return "\n".join(lines) + "\n", companion


def cmd_geodesic(args):
    spec = _load(args.spec)
    _, _, cm = build_space(spec)
    c, v = _velocity(cm, args.velocity, args.seed)
    if args.samples < 1:
        raise InputError("--samples must be >= 1")
    text, companion = geodesic_csv(cm, c, v, args.t_max, args.samples)
    if args.out:
        out = Path(args.out)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        out.with_suffix(".json").write_text(json.dumps(companion, indent=2) + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text)
        print(json.dumps(companion["generators"]), file=sys.stderr)
    return 0


def cmd_compare(args):
    spec = _load(args.spec)
    _, _, cm = build_space(spec)
    _, v = _velocity(cm, args.velocity, args.seed)
    try:
        cfg = OdeConfig(step=args.step, t_max=args.t_max)
        path = integrate_horizontal(cm, v, cfg)
    except GeoprodError as exc:
        raise InputError(str(exc)) from None
    pc = ProductCurve(generators_from_velocity(cm, v))
    res = compare_paths(pc, path, OrbitMap.from_split(cm.split))
    stride = max(1, len(res["ts"]) // 20)
    print("t,deviation")
    for k in range(0, len(res["ts"]), stride):
        print(f"{res['ts'][k]:.6g},{res['per_sample'][k]:.3e}")
    ok = res["max_deviation"] <= COMPARE_TOL
    print(f"max_deviation {res['max_deviation']:.3e} (limit {COMPARE_TOL:.0e}) {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_bench(args):
    spec = _load(args.spec)
    _, _, cm = build_space(spec)
    _, v = _velocity(cm, args.velocity, args.seed)
    ts = np.linspace(0.0, args.t_max, 21)
    try:
        r = bench(cm, v, ts, OdeConfig(step=args.step, t_max=args.t_max))
    except GeoprodError as exc:
        raise InputError(str(exc)) from None
    print(f"space            {spec.label}  lambdas={list(spec.lambdas)}")
    print(f"samples          {len(ts)} on [0, {args.t_max:g}]")
    print(f"closed form      {r['closed_form_time'] * 1e3:.3f} ms")
    print(f"rk4 (step {args.step:g})  {r['ode_time'] * 1e3:.3f} ms")
    print(f"speedup          {r['ode_time'] / max(r['closed_form_time'], 1e-12):.1f}x")
    print(f"deviation        {r['deviation']:.3e}")
    return 0


def cmd_catalog(args):
    print("groups:  SO(n), n >= 2, Lie algebra so(n) with basis E_ij - E_ji (i < j, lexicographic, 0-based)")
    print("chain:   h_0 < ... < h_{N-1} as lower-right blocks; entries {\"family\": \"trivial\"} (first only)")
    print("         or {\"family\": \"SO\", \"k\": k} with 2 <= k < n, k strictly increasing")
    print("form:    negative_trace, Q(X, Y) = -tr(XY)")
    print("metric:  m_1 = complement of h_{N-1} in g, ..., m_N = complement of h_0 in h_1; A = lambda_i on m_i")
    print("velocity coefficients: Q-orthonormal basis of m_1, then m_2, ..., m_N (each in basis order)")
    print()
    for name, spec in EXAMPLES.items():
        print(f"# {name}: {spec.label}")
        print(spec.to_json())
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="geoprod", description="Closed-form geodesics on homogeneous spaces G/H.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("spec", help="space specification (JSON)")
        sp.add_argument("--seed", type=int, default=42)

    sp = sub.add_parser("verify", help="check every algebraic hypothesis")
    common(sp)
    sp.add_argument("--report", help="write a JSON report here")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("geodesic", help="sample the closed-form geodesic to CSV")
    common(sp)
    sp.add_argument("--velocity", help="comma-separated m-coefficients (default: seeded random unit vector)")
    sp.add_argument("--t-max", type=float, default=5.0)
    sp.add_argument("--samples", type=int, default=51)
    sp.add_argument("--out", help="CSV path; generators go to the same path with a .json suffix")
    sp.set_defaults(func=cmd_geodesic)

    sp = sub.add_parser("compare", help="compare against the RK4 oracle")
    common(sp)
    sp.add_argument("--velocity")
    sp.add_argument("--t-max", type=float, default=2.0)
    sp.add_argument("--step", type=float, default=1e-3)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("bench", help="time closed form against RK4")
    common(sp)
    sp.add_argument("--velocity")
    sp.add_argument("--t-max", type=float, default=2.0)
    sp.add_argument("--step", type=float, default=1e-3)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("catalog", help="list supported groups and example specs")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeoprodError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
