"""Command-line interface: ``constnormal <command> [flags]``.

Output is JSON (default, with ``"schema": 1``) or CSV. In exact mode rationals
print as ``num/den`` strings; with ``--double`` they print as shortest
round-trip floats. Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__, csets, density, f23, rectifier, semigroup, verify
from .liecore import LieError, algebra_by_name

SCHEMA = 1


class UsageError(Exception):
    pass


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _point(text: str, n: int = 5):
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"expected {n} comma-separated coordinates, got {len(parts)}")
    return tuple(_frac(p) for p in parts)


def _steps(text: str):
    """``a:b;a:b;...`` -> ((a, b), ...)."""
    out = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        ab = chunk.split(":")
        if len(ab) != 2:
            raise UsageError(f"step {chunk!r} is not of the form a:b")
        out.append((_frac(ab[0]), _frac(ab[1])))
    if not out:
        raise UsageError("empty step list")
    return out


def _num(v, exact: bool):
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator) if exact else float(v)
        return str(v) if exact else float(v)
    if isinstance(v, dict):
        return {k: _num(x, exact) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_num(x, exact) for x in v]
    return v


def _emit(payload: dict, args, rows=None, columns=None):
    """Write one JSON document, or CSV with ``columns`` from ``rows``."""
    exact = not args.double
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows is None:
            rows = [payload]
            columns = [k for k in payload if k != "schema"]
        w.writerow(columns)
        for r in rows:
            w.writerow([_csv_cell(_num(r.get(c), exact)) for c in columns])
        sys.stdout.write(buf.getvalue())
    else:
        doc = {"schema": SCHEMA, "command": args.command}
        doc.update(_num(payload, exact))
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return v


# commands


def cmd_mul(args):
    if args.coords == "first":
        r = f23.mul1(_point(args.x), _point(args.y))
    else:
        r = f23.mul2(_point(args.x), _point(args.y))
    _emit({"coords": args.coords, "product": list(r)}, args)
    return 0


def cmd_coords(args):
    x = _point(args.x)
    r = f23.to_first(x) if args.to == "first" else f23.to_second(x)
    _emit({"to": args.to, "input": list(x), "result": list(r)}, args)
    return 0


def cmd_flow(args):
    a, t = _frac(args.a), _frac(args.t)
    x0 = _point(args.x) if args.x else f23.ZERO2
    r = f23.mul2(x0, f23.flow_horiz(a, t))
    _emit({"a": a, "t": t, "start": list(x0), "end": list(r)}, args)
    return 0


def cmd_member(args):
    m = semigroup.member_S(_point(args.x))
    _emit({
        "verdict": m.verdict.value,
        "in_S": m.in_S,
        "P": m.P_value,
        "residuals": dict(m.residuals),
    }, args)
    return 0


def cmd_zigzag(args):
    if args.factor:
        x = _point(args.factor)
        m = semigroup.member_S(x)
        if m.verdict is semigroup.Verdict.ParaboloidInterior:
            zz = semigroup.factor_in_W6(x)
        elif m.verdict is semigroup.Verdict.ParaboloidBoundary:
            zz = semigroup.factor_boundary(x)
        else:
            raise UsageError(f"no factorization available for a point classified {m.verdict.value}")
        end = semigroup.zigzag_endpoint(zz)
        _emit({"point": list(x), "steps": [list(s) for s in zz.steps], "endpoint": list(end),
               "reproduces": tuple(end) == tuple(x)}, args)
        return 0
    if not args.steps:
        raise UsageError("give --steps a:b;a:b;... or --factor x1,...,x5")
    zz = semigroup.ZigZag(_steps(args.steps))
    end = semigroup.zigzag_endpoint(zz)
    _emit({"steps": [list(s) for s in zz.steps], "endpoint": list(end), "in_W1": zz.is_w1(),
           "in_W3": zz.is_w3()}, args)
    return 0


def cmd_wedge(args):
    a = _point(args.a)
    _emit({"a": list(a), "in_wedge": semigroup.member_wedge(a), "P_tilde": semigroup.P_tilde(a)}, args)
    return 0


def cmd_verify(args):
    results, elapsed = verify.run_all()
    failed = sum(1 for r in results if not r.ok)
    if args.format == "csv":
        _emit({}, args, [{"status": "PASS" if r.ok else "FAIL", "identity": r.name} for r in results],
              ["status", "identity"])
    else:
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}")
        print(f"{len(results) - failed}/{len(results)} identities hold")
    return 1 if failed else 0


def _oracle(name, depth):
    try:
        return csets.registry(name, depth)
    except csets.CsetError as e:
        raise UsageError(str(e)) from None


def cmd_monotone(args):
    o = _oracle(args.set, args.depth)
    rep = csets.monotonicity_test(o, args.samples, args.directions, args.times, args.seed)
    _emit({"set": o.name, "points": rep.n_points, "checks": rep.n_checks, "violations": rep.violations,
           "ok": rep.ok, "seed": args.seed}, args)
    return 0 if rep.ok else 1


def cmd_density(args):
    o = _oracle(args.set, args.depth)
    center = _point(args.center) if args.center else f23.ZERO2
    n = args.n if args.n is not None else args.samples
    radii = [_frac(r) for r in args.r.split(",")]
    ests = density.density_profile(o, center, radii, n, args.seed, workers=args.workers)
    rows = [{"r": e.radius, "mean": e.mean, "half_width_95": e.half_width_95, "count": e.count,
             "n": e.n_samples, "stream": e.stream} for e in ests]
    if args.format == "csv":
        _emit({}, args, rows, ["r", "mean", "half_width_95", "count", "n", "stream"])
    else:
        _emit({"set": o.name, "center": [float(c) for c in center], "gauge": "box", "seed": args.seed,
               "estimates": rows, "flat_99": density.profile_is_flat(ests)}, args)
    return 0


def cmd_blowup(args):
    res = density.blowup_experiment(csets.ZSpec(n1=args.n1, depth=2 * args.ell_max + 3), args.ell_max,
                                    args.samples, args.seed, workers=args.workers)
    rows = [{"ell": l, "upper": u.mean, "lower": w.mean} for l, u, w in zip(res.ells, res.upper, res.lower)]
    if args.format == "csv":
        _emit({}, args, rows, ["ell", "upper", "lower"])
    else:
        _emit({"n1": args.n1, "seed": args.seed, "samples": args.samples, "sequences": rows,
               "E1": res.e1.mean, "E2": res.e2.mean, "gap": res.gap}, args)
    return 0


def cmd_cantor(args):
    spec = csets.CantorSpec(depth=args.depth)
    try:
        spec.check()
    except csets.CsetError as e:
        print(f"FAIL {e}")
        return 1
    ws = [csets.slope_witness(spec, n) for n in range(args.depth)]
    rows = [{"n": w.n, "q": w.q, "p": w.p, "q_prime": w.q_prime, "slope": w.slope, "bound": w.bound}
            for w in ws]
    if args.format == "csv":
        _emit({}, args, rows, ["n", "q", "p", "q_prime", "slope", "bound"])
    else:
        _emit({"depth": args.depth, "partial_sum": spec.partial_sum(args.depth), "witnesses": rows}, args)
    return 0


def cmd_rectify(args):
    try:
        alg = algebra_by_name(args.algebra)
    except (LieError, OSError, ValueError) as e:
        raise UsageError(str(e)) from None
    inv = [int(i) for i in args.invariant.split(",")] if args.invariant else None
    try:
        v = rectifier.run(alg, args.normal, inv, args.promotions)
    except rectifier.RectifierError as e:
        raise UsageError(str(e)) from None
    doc = v.to_json()
    doc.pop("schema")
    if args.brief:
        doc["log"] = len(doc["log"])
    if args.format == "csv":
        _emit({}, args, [{"verdict": v.kind, "missing_layers": v.missing_layers}], ["verdict", "missing_layers"])
    else:
        _emit(doc, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="print rationals as num/den (default)")
    mode.add_argument("--double", action="store_true", help="print numbers as round-trip floats")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10**5)
    common.add_argument("--depth", type=int, default=12)
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="constnormal", description="Constant-normal sets in the free Carnot group F23.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mul", parents=[common], help="group product")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--coords", choices=("second", "first"), default="second")
    s.set_defaults(fn=cmd_mul)

    s = sub.add_parser("coords", parents=[common], help="change between first- and second-kind coordinates")
    s.add_argument("--x", required=True)
    s.add_argument("--to", choices=("first", "second"), required=True)
    s.set_defaults(fn=cmd_coords)

    s = sub.add_parser("flow", parents=[common], help="x . exp(t (a X1 + X2))")
    s.add_argument("--a", required=True)
    s.add_argument("--t", required=True)
    s.add_argument("--x")
    s.set_defaults(fn=cmd_flow)

    s = sub.add_parser("member", parents=[common], help="classify a point against the semigroup")
    s.add_argument("--x", required=True)
    s.set_defaults(fn=cmd_member)

    s = sub.add_parser("zigzag", parents=[common], help="endpoint of a zig-zag, or factorization of a point")
    s.add_argument("--steps", help="a:b;a:b;... for exp(a X1 + b X2) factors")
    s.add_argument("--factor", help="point of S to factor")
    s.set_defaults(fn=cmd_zigzag)

    s = sub.add_parser("wedge", parents=[common], help="wedge membership in first-kind coordinates")
    s.add_argument("--a", required=True)
    s.set_defaults(fn=cmd_wedge)

    s = sub.add_parser("verify-identities", parents=[common], help="run the exact identity suite")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("monotone-check", parents=[common], help="exact monotonicity test; CSV columns: set,points,checks,violations,ok,seed")
    s.add_argument("--set", required=True, help="halfspace, E1, E2, S, coneAB:a:b, pathE[:depth]")
    s.add_argument("--directions", type=int, default=1)
    s.add_argument("--times", type=int, default=1)
    s.set_defaults(fn=cmd_monotone)

    s = sub.add_parser("density", parents=[common], help="Monte-Carlo gauge-ball density; CSV columns: r,mean,half_width_95,count,n,stream")
    s.add_argument("--set", required=True)
    s.add_argument("--r", default="1", help="radius or comma-separated radii")
    s.add_argument("--n", type=int, help="samples per radius (overrides --samples)")
    s.add_argument("--center")
    s.set_defaults(fn=cmd_density)

    s = sub.add_parser("blowup", parents=[common], help="densities of the two blow-up sequences; CSV columns: ell,upper,lower")
    s.add_argument("--n1", type=int, default=2)
    s.add_argument("--ell-max", type=int, default=2)
    s.set_defaults(fn=cmd_blowup)

    s = sub.add_parser("cantor", parents=[common], help="Cantor-set slope witnesses; CSV columns: n,q,p,q_prime,slope,bound")
    s.set_defaults(fn=cmd_cantor)

    s = sub.add_parser("rectify", parents=[common], help="run the direction-propagation engine")
    s.add_argument("--algebra", default="F23", help="F23, F24, free:r:s or a structure-constant file")
    s.add_argument("--normal", type=int, default=1)
    s.add_argument("--invariant", help="comma-separated 1-based horizontal indices")
    s.add_argument("--promotions", type=int, default=1)
    s.add_argument("--brief", action="store_true", help="replace the derivation log by its length")
    s.set_defaults(fn=cmd_rectify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.samples < 1:
        print("error: --samples must be positive", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (semigroup.SemigroupError, csets.CsetError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
