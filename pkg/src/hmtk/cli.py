"""Command line front-end: ``hmtk {eval,norms,verify,fuzz,heatmap}``.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or
input error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import HarmonicPolynomial, derivatives, evaluate
from .errors import ConvergenceError, DomainError, FieldError, PreconditionError
from .io import (SpecError, dumps, format_point, load_majorant, load_map, map_to_dict,
                 parse_point, write_atomic)
from .quad import QuadratureSpec, SupSearchSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _grid(text):
    try:
        nr, nt = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NRxNT, got {text!r}") from None
    return nr, nt


def _plist(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _numerics(p):
    g = p.add_argument_group("numerics")
    g.add_argument("--grid", type=_grid, default=(64, 128), metavar="NRxNT",
                   help="coarse polar grid of the sup search (default: 64x128)")
    g.add_argument("--angular-nodes", type=int, default=256,
                   help="trapezoid nodes per circle (default: %(default)s)")
    g.add_argument("--radial-nodes", type=int, default=32,
                   help="Gauss-Legendre nodes per radial panel (default: %(default)s)")
    g.add_argument("--rel-tol", type=float, default=1e-8,
                   help="quadrature relative tolerance (default: %(default)s)")
    g.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")


def _specs(args):
    quad = QuadratureSpec(angular_nodes=args.angular_nodes, radial_nodes=args.radial_nodes,
                          rel_tol=args.rel_tol)
    return quad, SupSearchSpec(coarse_grid=tuple(args.grid))


def _emit(args, text):
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_eval(args):
    f = load_map(args.map)
    z = parse_point(args.z)
    val = evaluate(f, z)
    out = {"z": [z.real, z.imag], "value": [val.real, val.imag]}
    if abs(z) < 1 or args.closed:
        out["derivatives"] = derivatives(f, z, closed=args.closed).as_dict()
    if args.format == "text":
        lines = [f"f({format_point(z)}) = {format_point(val)}"]
        for k, v in out.get("derivatives", {}).items():
            lines.append(f"{k} = {format_point(complex(*v)) if isinstance(v, list) else repr(v)}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, dumps(out))
    return EXIT_OK


def cmd_norms(args):
    from .norms import norm_report

    f = load_map(args.map)
    quad, search = _specs(args)
    w = load_majorant(args.majorant) if args.majorant else None
    r_grid = np.linspace(0.05, 0.95, args.curve_points)
    rep = norm_report(f, ps=args.p, r_grid=r_grid, search=search, quad=quad, majorant=w)
    _emit(args, dumps(rep.to_dict()))
    if args.curves_dir:
        for name, curves in (("mp", rep.mp_curve), ("ip", rep.ip_curve)):
            for p, rows in curves.items():
                buf = _io.StringIO()
                wr = csv.writer(buf, lineterminator="\n")
                wr.writerow(["r", "value"])
                wr.writerows([[repr(r), repr(v)] for r, v in rows])
                write_atomic(Path(args.curves_dir) / f"{name}_p{p:g}.csv", buf.getvalue())
    return EXIT_OK


def _slack(entries):
    out = {}
    for item in entries or []:
        if "=" in item:
            name, val = item.split("=", 1)
            names = [name.strip()]
        else:
            from .verifier import CHECKS
            names, val = list(CHECKS), item
        try:
            v = float(val)
        except ValueError:
            raise SpecError(f"bad slack value {item!r}") from None
        for n in names:
            out[n] = v
    return out


def _options(args):
    from .verifier import SuiteOptions

    _, search = _specs(args)
    quad = QuadratureSpec(angular_nodes=args.angular_nodes, radial_nodes=args.radial_nodes,
                          rel_tol=args.rel_tol)
    w = load_majorant(args.majorant) if getattr(args, "majorant", None) else None
    return SuiteOptions(slack=_slack(args.slack), chain_constant=args.chain_constant,
                        majorant=w, search=search, quad=quad, seed=args.seed)


def cmd_verify(args):
    from .verifier import run_suite

    f = load_map(args.map)
    verdicts = run_suite(f, args.suite, _options(args))
    ok = all(v.passed for v in verdicts)
    _emit(args, dumps({"map": map_to_dict(f), "suite": args.suite, "pass": ok,
                       "verdicts": [v.to_dict() for v in verdicts]}))
    if not args.quiet:
        for v in verdicts:
            print(f"{'PASS' if v.passed else 'FAIL'} {v.check_name}: lhs={v.lhs:.6g} "
                  f"rhs={v.rhs:.6g} margin={v.margin:.3g}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fuzz(args):
    from .verifier import FUZZ_CHECKS, FuzzConfig, fuzz

    checks = tuple(args.checks.split(",")) if args.checks else FUZZ_CHECKS
    config = FuzzConfig(trials=args.trials, max_degree=args.degree, coeff_bound=args.coeff_bound,
                        seed=args.seed, checks=checks)
    opts = _options(args)
    summary = fuzz(config, opts)
    _emit(args, dumps(summary))
    if not args.quiet:
        print(f"{summary['trials_passed']}/{summary['trials']} trials passed", file=sys.stderr)
        for name, st in sorted(summary["checks"].items()):
            print(f"  {name}: {st['pass']} pass, {st['fail']} fail, "
                  f"worst margin {st['worst_margin']}", file=sys.stderr)
    return EXIT_OK if summary["pass"] else EXIT_FAIL


HEATMAP_QUANTITIES = ("lambda", "bloch_field", "bmo_chart", "poisson_gap")


def heatmap_values(f: HarmonicPolynomial, quantity: str, n: int) -> np.ndarray:
    """``n x n`` grid over ``[-1, 1]^2``, rows by increasing ``y``; NaN outside the closed disk."""
    from .core import dilations
    from .norms import bloch_field, chart_oscillation, poisson_gap_field

    k = np.arange(n)
    coord = (2.0 * k - (n - 1)) / (n - 1)
    z = coord[None, :] + 1j * coord[:, None]
    inside = np.abs(z) <= 1 + 1e-12
    # corner cells are masked below; points a hair outside snap to the circle
    pts = np.where(inside, z, 0)
    mod = np.abs(pts)
    pts = np.where(mod > 1, pts / np.maximum(mod, 1), pts)
    if quantity == "lambda":
        vals, _ = dilations(f, pts, closed=True)
    elif quantity == "bloch_field":
        vals = bloch_field(f)(pts)
    elif quantity == "bmo_chart":
        vals = chart_oscillation(f, pts.ravel(), 2).reshape(pts.shape)
    elif quantity == "poisson_gap":
        vals = poisson_gap_field(f, pts)
    else:
        raise SpecError(f"unknown heatmap quantity {quantity!r}")
    return np.where(inside, vals, np.nan)


def cmd_heatmap(args):
    f = load_map(args.map)
    if args.n < 2:
        raise SpecError("--n must be >= 2")
    vals = heatmap_values(f, args.quantity, args.n)
    buf = _io.StringIO()
    buf.write(f"# quantity={args.quantity} n={args.n} extent=[-1,1]x[-1,1] "
              f"rows=y_ascending cols=x_ascending map={dumps(map_to_dict(f)).replace(chr(10), '').replace(' ', '')}\n")
    wr = csv.writer(buf, lineterminator="\n")
    for row in vals:
        wr.writerow(["" if math.isnan(v) else repr(float(v)) for v in row])
    _emit(args, buf.getvalue())
    return EXIT_OK


def _output(p, what, formats=("json",)):
    p.add_argument("--format", choices=formats, default=formats[0],
                   help="output format (default: %(default)s)")
    p.add_argument("--out", help=f"{what} file; stdout when omitted")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hmtk", description="Norms and inequality checks for planar harmonic polynomial maps.",
        epilog="Exit codes: 0 ok, 1 a check failed, 2 usage or input error, 3 non-convergence.")
    parser.add_argument("--version", action="version", version=f"hmtk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="value and derivative bundle at a point")
    p.add_argument("--map", required=True, help="map spec JSON")
    p.add_argument("--z", required=True, help='point as "a+bi"')
    p.add_argument("--closed", action="store_true", help="allow derivatives on |z| = 1")
    _output(p, "result", ("json", "text"))
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("norms", help="Bloch seminorm, BMO_p norms and p-mean curves")
    p.add_argument("--map", required=True, help="map spec JSON")
    p.add_argument("--p", type=_plist, default=[2.0], metavar="P[,P...]",
                   help="exponents for BMO_p, M_p, I_p (default: 2)")
    p.add_argument("--majorant", help="majorant spec JSON; adds the Lipschitz fit and Poisson gap")
    p.add_argument("--curve-points", type=int, default=19,
                   help="radii in [0.05, 0.95] for the M_p / I_p curves (default: %(default)s)")
    p.add_argument("--curves-dir", help="also write mp_p*.csv / ip_p*.csv (columns r,value) here")
    _output(p, "report")
    _numerics(p)
    p.set_defaults(func=cmd_norms)

    for name, func, helptext in (("verify", cmd_verify, "run a verification suite on one map"),
                                 ("fuzz", cmd_fuzz, "run checks on random maps")):
        p = sub.add_parser(name, help=helptext)
        if name == "verify":
            p.add_argument("--map", required=True, help="map spec or norms report JSON")
            p.add_argument("--suite", default="all",
                           help="all, fuzz, chain, lemmas, equivalences, or one check name "
                                "(default: %(default)s)")
        else:
            p.add_argument("--trials", type=int, default=200,
                           help="number of random maps (default: %(default)s)")
            p.add_argument("--degree", type=int, default=8,
                           help="max degree of h and of g (default: %(default)s)")
            p.add_argument("--coeff-bound", type=float, default=1.0,
                           help="coefficients drawn from this disk (default: %(default)s)")
            p.add_argument("--checks", help="comma-separated check names (default: the fuzz suite)")
        p.add_argument("--slack", action="append", metavar="[CHECK=]X",
                       help="relative slack for all checks or one check; repeatable")
        p.add_argument("--chain-constant", type=float, default=2.0,
                       help="C in beta <= C ||f||_BMO2 (default: %(default)s)")
        p.add_argument("--majorant", help="majorant spec JSON for the Lipschitz-type checks")
        p.add_argument("--quiet", action="store_true", help="no per-check lines on stderr")
        _output(p, "summary")
        _numerics(p)
        p.set_defaults(func=func)
    sub.choices["fuzz"].set_defaults(seed=42)

    p = sub.add_parser("heatmap", help="field values on an n x n grid over [-1,1]^2 as CSV")
    p.add_argument("--map", required=True, help="map spec JSON")
    p.add_argument("--quantity", choices=HEATMAP_QUANTITIES, required=True, help="field to sample")
    p.add_argument("--n", type=int, default=101, help="cells per side (default: %(default)s)")
    _output(p, "CSV", ("csv",))
    p.set_defaults(func=cmd_heatmap)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"hmtk: numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SpecError, DomainError, PreconditionError, FieldError, ValueError, OSError) as exc:
        print(f"hmtk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
