"""Batch command-line front-end.

Subcommands: verify, moments, mellin, atoms, hermite-scan, table.  All
output is deterministic; CSV uses '.' decimals with 17 significant
digits.  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import json
import sys

from . import verify
from .catalog import resolve
from .errors import DomainError, MomentForgeError, UnsupportedError
from .hermite import positivity_scan
from .measures import AtomicMeasure


def _fmt(x):
    return "%.17g" % x


def _grid(lo, hi, step):
    if step <= 0:
        raise DomainError("step must be positive")
    count = int(round((hi - lo) / step)) + 1
    if count < 1:
        raise DomainError("empty grid: [%g, %g] step %g" % (lo, hi, step))
    return [round(lo + i * step, 12) for i in range(count)]


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_params(pairs):
    params = {}
    for item in pairs or []:
        if "=" not in item:
            raise DomainError("parameter %r is not key=value" % item)
        key, _, value = item.partition("=")
        params[key] = float(value)
    return params


def build_parser():
    parser = argparse.ArgumentParser(
        prog="momentforge",
        description="Moment sequences, product convolution semigroups, "
                    "q-series measures and Hermite positivity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=list(verify.SUITE_NAMES) + ["all"])
    p.add_argument("--tol", type=float, default=None,
                   help="override every check tolerance")
    p.add_argument("--out", default=None)

    for name in ("moments", "table"):
        p = sub.add_parser(name)
        p.add_argument("object_id")
        p.add_argument("--n-max", type=int, default=10)
        p.add_argument("--param", action="append", metavar="KEY=VALUE",
                       help="extra catalog parameters (e.g. alpha=1)")
        p.add_argument("--output", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)

    p = sub.add_parser("mellin")
    p.add_argument("object_id")
    p.add_argument("--z", required=True,
                   help="evaluation point, real or complex (e.g. 2+1j)")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--output", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("atoms")
    p.add_argument("object_id")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--output", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("hermite-scan")
    p.add_argument("--tmin", type=float, default=-0.95)
    p.add_argument("--tmax", type=float, default=0.95)
    p.add_argument("--tstep", type=float, default=0.05)
    p.add_argument("--xmin", type=float, default=-10.0)
    p.add_argument("--xmax", type=float, default=10.0)
    p.add_argument("--xstep", type=float, default=0.25)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    return parser


def _cmd_verify(args):
    results = verify.run_suite(args.suite, tol=args.tol)
    _emit(verify.render_report(results), args.out)
    return 0 if verify.all_passed(results) else 1


def _cmd_moments(args):
    obj = resolve(args.object_id, _parse_params(args.param))
    values = obj.moments(args.n_max)
    if args.output == "json":
        text = json.dumps({"object": args.object_id,
                           "moments": values}) + "\n"
    else:
        lines = ["n,value"]
        lines.extend("%d,%s" % (n, _fmt(v)) for n, v in enumerate(values))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_table(args):
    obj = resolve(args.object_id, _parse_params(args.param))
    values = obj.moments(args.n_max)
    rows = []
    for n, v in enumerate(values):
        row = {"n": n, "moment": v}
        if obj.mellin_fn is not None:
            mval = obj.mellin(n)
            row["mellin"] = complex(mval).real
            row["residual"] = abs(complex(mval).real - v)
        rows.append(row)
    if args.output == "json":
        text = json.dumps({"object": args.object_id, "rows": rows}) + "\n"
    else:
        if obj.mellin_fn is not None:
            lines = ["n,moment,mellin,residual"]
            lines.extend("%d,%s,%s,%s" % (r["n"], _fmt(r["moment"]),
                                          _fmt(r["mellin"]),
                                          _fmt(r["residual"]))
                         for r in rows)
        else:
            lines = ["n,moment"]
            lines.extend("%d,%s" % (r["n"], _fmt(r["moment"]))
                         for r in rows)
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_mellin(args):
    obj = resolve(args.object_id, _parse_params(args.param))
    try:
        z = complex(args.z)
    except ValueError:
        raise DomainError("cannot parse z = %r" % args.z)
    value = complex(obj.mellin(z))
    if args.output == "json":
        text = json.dumps({"object": args.object_id, "z": args.z,
                           "value": [value.real, value.imag]}) + "\n"
    elif value.imag == 0.0:
        text = _fmt(value.real) + "\n"
    else:
        text = "%s,%s\n" % (_fmt(value.real), _fmt(value.imag))
    _emit(text, args.out)
    return 0


def _cmd_atoms(args):
    obj = resolve(args.object_id, _parse_params(args.param))
    m = obj.measure()
    if args.output == "json":
        text = json.dumps(m.to_json_dict()) + "\n"
    else:
        if not isinstance(m, AtomicMeasure):
            raise UnsupportedError(
                "%s is a density; use --output json" % args.object_id)
        lines = ["location,weight"]
        if m.zero_mass > 0:
            lines.append("0,%s" % _fmt(m.zero_mass))
        lines.extend("%s,%s" % (_fmt(loc), _fmt(wt)) for loc, wt in m.atoms)
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_hermite_scan(args):
    t_grid = _grid(args.tmin, args.tmax, args.tstep)
    x_grid = _grid(args.xmin, args.xmax, args.xstep)
    for t in t_grid:
        if not abs(t) < 1.0:
            raise DomainError("t grid leaves (-1, 1): t = %g" % t)
    report = positivity_scan(t_grid, x_grid, tol=args.tol)
    lines = ["t,x,G,tail_bound"]
    lines.extend("%s,%s,%s,%s" % (_fmt(g.t), _fmt(g.x), _fmt(g.value),
                                  _fmt(g.tail_bound))
                 for g in report.points)
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.all_positive else 1


_DISPATCH = {
    "verify": _cmd_verify,
    "moments": _cmd_moments,
    "table": _cmd_table,
    "mellin": _cmd_mellin,
    "atoms": _cmd_atoms,
    "hermite-scan": _cmd_hermite_scan,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (DomainError, UnsupportedError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except MomentForgeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
