"""Command-line front end; every subcommand writes CSV.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 failed audit
under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from gfd import operators, solver, suites, taylor
from gfd.errors import GFDError, ParseError, PositivityError
from gfd.expr import parse, simplify, to_string
from gfd.operators import Kind, parse_method
from gfd.report import Verdict, fmt, reports_to_csv
from gfd.weights import WeightSpec

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_STRICT = 0, 1, 2, 3

COMPARE_COLUMNS = ("caputo", "khalil", "anderson", "guebbai", "gfd_alpha")

PDE_PRESETS = {
    "pde1-corrected": solver.pde1_corrected_solution,
    "pde1-static": solver.pde1_static_solution,
    "pde2-separated": solver.pde2_separated_solution,
    "pde2-unscaled": solver.pde2_unscaled_solution,
    "pde2-rescaled": solver.pde2_rescaled_solution,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` with ``stop`` included (to rounding)."""
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise UsageError(f"grid must be start:stop:step, got {text!r}") from None
    if not step > 0 or stop < start:
        raise UsageError(f"grid needs step > 0 and stop >= start, got {text!r}")
    n = math.floor((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 12) for i in range(n)]


def _writer(out: io.StringIO):
    return csv.writer(out, lineterminator="\n")


def _weight(text: str) -> WeightSpec:
    try:
        return WeightSpec.from_string(text)
    except ParseError:
        raise
    except GFDError as exc:
        raise UsageError(str(exc)) from None


def _points(args) -> list[float]:
    if args.t is not None:
        return [args.t]
    if args.grid is not None:
        return parse_grid(args.grid)
    raise UsageError("give --t or --grid")


# {{{ commands


def cmd_eval(args, out) -> int:
    f = parse(args.expr)
    kind = Kind(args.op)
    method = parse_method(args.method)
    weight = _weight(args.weight)
    w = _writer(out)
    w.writerow(["t", "value"])
    rows = []
    for t in _points(args):
        if kind is Kind.GFD and args.alpha > 1:
            v = operators.gfd_higher(f, args.alpha, weight, t, method)
        else:
            v = operators.named_derivative(
                kind, f, args.alpha, t, method, weight=weight, lower=args.lower, n_steps=args.caputo_steps
            )
        rows.append([fmt(t), fmt(v)])
    w.writerows(rows)
    return EXIT_OK


def cmd_deriv(args, out) -> int:
    f = parse(args.expr)
    w = _writer(out)
    w.writerow(["order", "expression"])
    if args.alpha is None:
        e = f
        for k in range(1, args.order + 1):
            e = operators.derivative(e, args.var)
            w.writerow([k, to_string(e)])
    else:
        e = operators.gfd_expr(f, args.alpha, _weight(args.weight), args.var)
        w.writerow([f"alpha={args.alpha!r}", to_string(simplify(e))])
    return EXIT_OK


def compare_rows(f, alpha: float, grid: list[float], caputo_steps: int) -> list[list[str]]:
    operators.check_alpha(alpha, closed=False)
    if grid[0] <= 0:
        raise GFDError(f"grid must start above 0, got {grid[0]!r}")
    gfd_alpha = WeightSpec.alpha_const()
    rows = []
    for t in grid:
        values = {
            "caputo": operators.caputo(f, alpha, 0.0, t, caputo_steps),
            "khalil": operators.named_derivative(Kind.KHALIL, f, alpha, t),
            "anderson": operators.named_derivative(Kind.ANDERSON_ULNESS, f, alpha, t),
            "gfd_alpha": operators.gfd(f, alpha, gfd_alpha, t),
        }
        try:
            values["guebbai"] = operators.named_derivative(Kind.GUEBBAI_GHIAT, f, alpha, t)
        except PositivityError:
            values["guebbai"] = None
        rows.append([fmt(t)] + [fmt(values[c]) for c in COMPARE_COLUMNS])
    return rows


def cmd_compare(args, out) -> int:
    grid = parse_grid(args.grid)
    rows = compare_rows(parse(args.expr), args.alpha, grid, args.caputo_steps)
    w = _writer(out)
    w.writerow(["t", *COMPARE_COLUMNS])
    w.writerows(rows)
    return EXIT_OK


def cmd_audit(args, out) -> int:
    weight = _weight(args.weight) if args.weight else None
    reports = suites.run_suite(args.suite, args.seed, weight)
    out.write(reports_to_csv(reports))
    failed = [r for r in reports if r.verdict is Verdict.FAIL]
    if failed and args.strict:
        return EXIT_STRICT
    return EXIT_OK


def cmd_taylor(args, out) -> int:
    f = parse(args.expr)
    weight = _weight(args.weight)
    s = taylor.taylor_build(f, args.x0, args.alpha, weight, args.N, var=args.var)
    out.write(
        f"# regime={s.regime.value},alpha={fmt(s.alpha)},x0={fmt(s.x0)},w={fmt(s.weight_value)},"
        f"N={s.N},f={to_string(f)}\n"
    )
    w = _writer(out)
    w.writerow(["exponent", "coefficient"])
    w.writerows([fmt(e), fmt(c)] for c, e in s.terms)
    return EXIT_OK


def cmd_ode(args, out) -> int:
    if args.y0_at_zero is not None:
        # closed form through (0, y0); RK4 starts from its value at t0
        closed = solver.solve_linear_closed(
            solver.LinearFracODE(args.a, args.b, args.c, args.alpha, args.w, 0.0, args.y0_at_zero)
        )
        y0 = solver.evaluate(closed, t=args.t0)
    else:
        y0 = args.y0
    ode = solver.LinearFracODE(args.a, args.b, args.c, args.alpha, args.w, args.t0, y0)
    if args.y0_at_zero is None:
        closed = solver.solve_linear_closed(ode)
    traj = solver.solve_linear_numeric(ode, args.t_end, args.step)
    out.write(f"# y(t) = {to_string(closed)}\n")
    w = _writer(out)
    w.writerow(["t", "y_rk4", "y_closed"])
    every = max(1, args.every)
    for k, (t, y) in enumerate(traj):
        if k % every == 0 or k == len(traj) - 1:
            w.writerow([f"{t:.17g}", f"{y:.17g}", f"{solver.evaluate(closed, t=t):.17g}"])
    return EXIT_OK


def cmd_pde_check(args, out) -> int:
    if args.equation.startswith("custom:"):
        equation = solver.CustomPDE.parse(args.equation[7:])
    else:
        equation = args.equation
    if args.u in PDE_PRESETS:
        u = PDE_PRESETS[args.u]()
    else:
        u = parse(args.u, variables={"x", "t"})
    axis = parse_grid(args.grid)
    points = [{"x": x, "t": t} for x in axis for t in axis]
    rep = solver.pde_residual(equation, u, points)
    out.write(rep.to_csv(("x", "t")))
    out.write(f"# equation={rep.label},u={to_string(u)},max_abs_residual={fmt(rep.max_abs_residual)}\n")
    return EXIT_OK


# }}}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gfd", description="Generalised fractional derivative toolkit (CSV output).")
    p.add_argument("--out", default="stdout", help="output path (default: stdout)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, *, expr=True, alpha=True, weight="one"):
        if expr:
            sp.add_argument("--expr", required=True)
        if alpha:
            sp.add_argument("--alpha", type=float, required=True)
        sp.add_argument("--weight", default=weight, help="one | alpha | power-t | tau:<g>:<tau> | custom:<expr>")
        sp.add_argument("--out", default=argparse.SUPPRESS)

    sp = sub.add_parser("eval", help="evaluate an operator at points")
    common(sp)
    sp.add_argument("--op", default="gfd", choices=[k.value for k in Kind])
    sp.add_argument("--t", type=float)
    sp.add_argument("--grid")
    sp.add_argument("--method", default="exact", help="exact | limit:<h>")
    sp.add_argument("--lower", type=float, default=0.0, help="Caputo lower limit")
    sp.add_argument("--caputo-steps", type=int, default=1000)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("deriv", help="symbolic derivative")
    common(sp, alpha=False)
    sp.add_argument("--alpha", type=float, help="print the GFD expression instead")
    sp.add_argument("--var", default="t")
    sp.add_argument("--order", type=int, default=1)
    sp.set_defaults(func=cmd_deriv)

    sp = sub.add_parser("compare", help="all operators on a grid")
    common(sp)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--caputo-steps", type=int, default=1000)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("audit", help="run an audit suite")
    common(sp, expr=False, alpha=False, weight=None)
    sp.add_argument("--suite", required=True, choices=suites.SUITES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--strict", action="store_true")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("taylor", help="fractional Taylor coefficients")
    common(sp)
    sp.add_argument("--x0", type=float, default=0.0)
    sp.add_argument("--N", type=int, default=10)
    sp.add_argument("--var", default="x")
    sp.set_defaults(func=cmd_taylor)

    sp = sub.add_parser("ode", help="solve a D^alpha y + b y = c")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--w", type=float, default=1.0, help="constant weight value")
    sp.add_argument("--t0", type=float, default=0.01)
    start = sp.add_mutually_exclusive_group()
    start.add_argument("--y0", type=float, default=0.0, help="value at t0")
    start.add_argument("--y0-at-zero", type=float, help="value at t = 0+; RK4 then starts from the closed form at t0")
    sp.add_argument("--t-end", type=float, default=2.0)
    sp.add_argument("--step", type=float, default=1e-3)
    sp.add_argument("--every", type=int, default=1, help="emit every k-th step")
    sp.add_argument("--out", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_ode)

    sp = sub.add_parser("pde-check", help="residual of a candidate PDE solution")
    sp.add_argument("--equation", required=True, help="pde1 | pde2 | pde2-original | custom:<expr>")
    sp.add_argument("--u", required=True, help=f"expression in x, t or one of {sorted(PDE_PRESETS)}")
    sp.add_argument("--grid", required=True, help="axis grid start:stop:step for both x and t")
    sp.add_argument("--out", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_pde_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (UsageError, ParseError, ValueError) as exc:
        if isinstance(exc, GFDError) and not isinstance(exc, ParseError):
            print(f"gfd: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        print(f"gfd: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out == "stdout":
        sys.stdout.write(buf.getvalue())
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    return code


if __name__ == "__main__":
    raise SystemExit(main())
