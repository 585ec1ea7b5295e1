"""Executable audit of the algebra carried by the GFD.

For alpha in (0, 1] and a positive weight the GFD is ``m(t) * D`` with
``m(t) = w(t, alpha) * t^(1-alpha) > 0``, so it inherits linearity, the
Leibniz rule and the quotient rule from the classical derivative; those
checks are expected to PASS.  The stated chain rule and composition law
are not identities, so their checks only record residuals
(verdict AUDIT).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from gfd.errors import DomainError, GFDError, NoWitnessError
from gfd.expr import Const, Cos, Div, Exp, Expr, Pow, Sin, Var, evaluate, free_vars, substitute
from gfd.operators import (
    EXACT, EvalMethod, Kind, LimitQuotient, check_alpha, derivative, gfd, gfd_expr, gfd_higher, weight_of,
)
from gfd.report import NONZERO_RESIDUAL, PropertyReport, Verdict
from gfd.weights import WeightSpec

PASS_TOL = 1e-9
IDENTITY_TOL = 1e-10
WITNESS_TOL = 1e-9
SCAN_POINTS = 10_000


def _grid_eval(grid: Iterable[float], row: Callable[[float], tuple]) -> tuple[list, list, list, list, list]:
    """Evaluate ``row(t) -> (lhs, rhs, scale)`` per point, skipping domain errors."""
    pts, lhs, rhs, scale, notes = [], [], [], [], []
    for t in grid:
        try:
            l, r, s = row(float(t))
        except DomainError as exc:
            notes.append(f"t={t!r} excluded: {exc}")
            continue
        pts.append(float(t))
        lhs.append(l)
        rhs.append(r)
        scale.append(s)
    return pts, lhs, rhs, scale, notes


def _inputs(**kw) -> dict:
    return {k: (str(v) if isinstance(v, (Expr, WeightSpec)) else v) for k, v in kw.items()}


# {{{ ring axioms


def check_linearity(
    f: Expr, g: Expr, a: float, b: float, alpha: float, w: WeightSpec, grid, method: EvalMethod = EXACT
) -> PropertyReport:
    combo = Const(a) * f + Const(b) * g

    def row(t):
        df, dg = gfd(f, alpha, w, t, method), gfd(g, alpha, w, t, method)
        return gfd(combo, alpha, w, t, method), a * df + b * dg, max(abs(a * df), abs(b * dg))

    pts, lhs, rhs, scale, notes = _grid_eval(grid, row)
    return PropertyReport.build(
        "linearity", _inputs(f=f, g=g, a=a, b=b, alpha=alpha, w=w), pts, lhs, rhs,
        tolerance=PASS_TOL, scale=scale, notes=notes,
    )


def check_leibniz(f: Expr, g: Expr, alpha: float, w: WeightSpec, grid, method: EvalMethod = EXACT) -> PropertyReport:
    check_alpha(alpha)
    prod = f * g

    def row(t):
        fv, gv = evaluate(f, t=t), evaluate(g, t=t)
        t1, t2 = fv * gfd(g, alpha, w, t, method), gv * gfd(f, alpha, w, t, method)
        return gfd(prod, alpha, w, t, method), t1 + t2, max(abs(t1), abs(t2))

    pts, lhs, rhs, scale, notes = _grid_eval(grid, row)
    return PropertyReport.build(
        "leibniz", _inputs(f=f, g=g, alpha=alpha, w=w), pts, lhs, rhs,
        tolerance=PASS_TOL, scale=scale, notes=notes,
    )


def check_quotient(f: Expr, g: Expr, alpha: float, w: WeightSpec, grid, method: EvalMethod = EXACT) -> PropertyReport:
    quot = Div(f, g)
    kept = []
    notes = []
    for t in grid:
        try:
            gv = evaluate(g, t=t)
        except DomainError as exc:
            notes.append(f"t={t!r} excluded: {exc}")
            continue
        if abs(gv) < 1e-12:
            notes.append(f"t={t!r} excluded: |g(t)| < 1e-12")
        else:
            kept.append(t)

    def row(t):
        fv, gv = evaluate(f, t=t), evaluate(g, t=t)
        t1, t2 = gv * gfd(f, alpha, w, t, method), fv * gfd(g, alpha, w, t, method)
        return gfd(quot, alpha, w, t, method), (t1 - t2) / gv**2, max(abs(t1), abs(t2)) / gv**2

    pts, lhs, rhs, scale, more = _grid_eval(kept, row)
    return PropertyReport.build(
        "quotient", _inputs(f=f, g=g, alpha=alpha, w=w), pts, lhs, rhs,
        tolerance=PASS_TOL, scale=scale, notes=notes + more,
    )


# }}}


# {{{ audited claims


def _outer_var(f: Expr, preferred: str = "x") -> str:
    names = free_vars(f)
    if len(names) > 1:
        raise GFDError(f"outer function must have one variable, got {sorted(names)}")
    return next(iter(names), preferred)


def check_chain(
    f: Expr, g: Expr, alpha: float, w: WeightSpec, grid, interpretation: str = "composite-in-t",
    method: EvalMethod = EXACT,
) -> PropertyReport:
    """Residuals of ``D(f o g) = t^(alpha-1)/w * D(f(g)) * D(g)``.

    ``f`` is a function of one variable (usually ``x``), ``g`` a function of
    ``t``.  The factor ``D(f(g))`` is read either as the GFD in ``t`` of the
    composite (``composite-in-t``) or as ``[D f]`` evaluated at ``g(t)``
    (``outer-at-inner``).  Always AUDIT.
    """
    if interpretation not in ("composite-in-t", "outer-at-inner"):
        raise GFDError(f"unknown interpretation {interpretation!r}")
    check_alpha(alpha)
    xv = _outer_var(f)
    comp = substitute(f, {xv: g})
    outer = substitute(f, {xv: Var("t")})

    def row(t):
        lhs = gfd(comp, alpha, w, t, method)
        if interpretation == "composite-in-t":
            middle = lhs
        else:
            s = evaluate(g, t=t)
            if not s > 0:
                raise DomainError(f"g(t) = {s!r} is not positive")
            middle = gfd(outer, alpha, w, s, method)
        pref = t ** (alpha - 1) / w.value(t, alpha)
        return lhs, pref * middle * gfd(g, alpha, w, t, method), 0.0

    pts, lhs, rhs, scale, notes = _grid_eval(grid, row)
    return PropertyReport.build(
        f"chain[{interpretation}]", _inputs(f=f, g=g, alpha=alpha, w=w), pts, lhs, rhs,
        audit=True, notes=notes,
    )


def check_composition_law(
    f: Expr, alpha: float, beta: float, w: WeightSpec, grid, method: EvalMethod = EXACT
) -> tuple[PropertyReport, PropertyReport]:
    """Residuals of ``D^(a+b) f = w_a w_b t / w_(a+b) * D^a D^b f``.

    Returns the report for the law itself and one for the special-case
    condition ``w_(a+b) / (w_a w_b) = t``.  Both are AUDIT: the right-hand
    side involves ``f''`` while the left-hand side (for a+b <= 1) does not.
    """
    check_alpha(alpha)
    check_alpha(beta)
    inner = gfd_expr(f, beta, w)

    def law(t):
        lhs = gfd_higher(f, alpha + beta, w, t, method)
        pref = w.value(t, alpha) * w.value(t, beta) * t / w.value(t, alpha + beta)
        return lhs, pref * gfd(inner, alpha, w, t, method), 0.0

    def condition(t):
        return w.value(t, alpha + beta) / (w.value(t, alpha) * w.value(t, beta)), t, 0.0

    structural = (
        "RHS applies two first-order operators (second order in f); "
        "LHS is first order in f when alpha+beta <= 1, so equality cannot hold for all f"
    )
    inputs = _inputs(f=f, alpha=alpha, beta=beta, w=w)
    pts, lhs, rhs, _, notes = _grid_eval(grid, law)
    law_rep = PropertyReport.build("composition_law", inputs, pts, lhs, rhs, audit=True, notes=[structural, *notes])
    pts, lhs, rhs, _, notes = _grid_eval(grid, condition)
    cond_rep = PropertyReport.build("composition_condition", inputs, pts, lhs, rhs, audit=True, notes=notes)
    return law_rep, cond_rep


def check_anderson_weight(f: Expr, alpha: float, grid) -> PropertyReport:
    """Compare the tabulated Anderson-Ulness weight with the one forced by
    ``D f = w t^(1-alpha) f'``.  AUDIT only."""
    df = derivative(f)

    def row(t):
        fv, dv = evaluate(f, t=t), evaluate(df, t=t)
        tabulated = ((1 - alpha) * t**alpha * fv + alpha * t ** (1 - alpha) * dv) / (alpha * t ** (1 - alpha))
        return weight_of(Kind.ANDERSON_ULNESS, f, alpha, t), tabulated, 0.0

    pts, lhs, rhs, _, notes = _grid_eval(grid, row)
    return PropertyReport.build(
        "anderson_weight", _inputs(f=f, alpha=alpha), pts, lhs, rhs, audit=True,
        notes=["lhs: weight forced by the defining relation; rhs: tabulated weight", *notes],
    )


# }}}


# {{{ identities


def identity_argument(alpha: float, w: WeightSpec) -> Expr:
    """``t^alpha / (alpha * w)`` for a t-constant weight."""
    wc = w.constant_value(alpha)
    return Div(Pow(Var("t"), Const(alpha)), Const(alpha * wc))


def check_identities(alpha: float, w: WeightSpec, grid, method: EvalMethod = EXACT) -> list[PropertyReport]:
    """The four identities for ``u = t^alpha/(alpha w)``: D u = 1,
    D sin u = cos u, D cos u = -sin u, D exp u = exp u."""
    check_alpha(alpha)
    u = identity_argument(alpha, w)
    cases = [
        ("identity_1", u, Const(1.0)),
        ("identity_2", Sin(u), Cos(u)),
        ("identity_3", Cos(u), -Sin(u)),
        ("identity_4", Exp(u), Exp(u)),
    ]
    limit = isinstance(method, LimitQuotient)
    reports = []
    for name, f, expected in cases:
        if limit:
            tol = 1e-5
        else:
            tol = 1e-12 if name == "identity_1" else IDENTITY_TOL

        def row(t, f=f, expected=expected):
            return gfd(f, alpha, w, t, method), evaluate(expected, t=t), 0.0

        pts, lhs, rhs, _, notes = _grid_eval(grid, row)
        reports.append(
            PropertyReport.build(
                name, _inputs(f=f, alpha=alpha, w=w, method=type(method).__name__), pts, lhs, rhs,
                tolerance=tol, notes=notes,
            )
        )
    return reports


# }}}


# {{{ Rolle / mean value witnesses


@dataclass(frozen=True)
class WitnessResult:
    c: float
    target_value: float
    achieved_value: float
    iterations: int


@dataclass(frozen=True)
class MVTResult:
    witness: WitnessResult
    naive_target: float
    naive_witness: WitnessResult | None
    note: str


def _solve_interior(fn: Callable[[float], float], target: float, a: float, b: float) -> WitnessResult:
    """Find c in (a, b) with fn(c) = target by scanning then bracketing."""
    tol = WITNESS_TOL * (1 + abs(target))
    xs = np.linspace(a, b, SCAN_POINTS + 1)[1:-1]
    vals = np.array([fn(x) - target for x in xs])
    if np.all(np.abs(vals) <= tol):
        mid = 0.5 * (a + b)
        return WitnessResult(mid, target, fn(mid), 0)
    hits = np.flatnonzero(np.abs(vals) <= tol)
    changes = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    candidates = sorted([(int(i), "hit") for i in hits] + [(int(i), "bracket") for i in changes])
    if not candidates:
        raise NoWitnessError(f"no point in ({a!r}, {b!r}) attains {target!r} on a {SCAN_POINTS}-point scan")
    i, how = candidates[0]
    if how == "hit":
        c, iterations = float(xs[i]), 0
    else:
        c, info = brentq(lambda x: fn(x) - target, xs[i], xs[i + 1], xtol=1e-15, full_output=True)
        iterations = info.iterations
    achieved = fn(c)
    if abs(achieved - target) > tol:
        raise NoWitnessError(f"root refinement stalled at c={c!r}: residual {achieved - target!r}")
    return WitnessResult(float(c), target, achieved, iterations)


def find_rolle_witness(f: Expr, a: float, b: float, alpha: float, w: WeightSpec) -> WitnessResult:
    """c in (a, b) with D f(c) = 0, for f(a) = f(b)."""
    check_alpha(alpha)
    if not (0 < a < b):
        raise GFDError(f"need 0 < a < b, got a={a!r}, b={b!r}")
    fa, fb = evaluate(f, t=a), evaluate(f, t=b)
    if abs(fa - fb) > 1e-12 * max(1.0, abs(fa)):
        raise GFDError(f"Rolle needs f(a) = f(b); got {fa!r} and {fb!r}")
    return _solve_interior(lambda c: gfd(f, alpha, w, c), 0.0, a, b)


def find_mvt_witness(f: Expr, a: float, b: float, alpha: float, w: WeightSpec) -> MVTResult:
    """c in (a, b) with ``D f(c) = alpha w (f(b)-f(a)) / (b^alpha - a^alpha)``.

    The naive constant, with ``b - a`` in the denominator, is also tried
    and the outcome recorded.
    """
    check_alpha(alpha)
    if not (0 < a < b):
        raise GFDError(f"need 0 < a < b, got a={a!r}, b={b!r}")
    wc = w.constant_value(alpha)
    delta = evaluate(f, t=b) - evaluate(f, t=a)
    corrected = alpha * wc * delta / (b**alpha - a**alpha)
    naive = alpha * wc * delta / (b - a)

    def d(c):
        return gfd(f, alpha, w, c)

    witness = _solve_interior(d, corrected, a, b)
    try:
        naive_witness = _solve_interior(d, naive, a, b)
        note = f"naive constant {naive!r} attained at c={naive_witness.c!r}"
    except NoWitnessError:
        naive_witness = None
        note = f"naive constant {naive!r} unattainable in interval ({a!r}, {b!r})"
    return MVTResult(witness, naive, naive_witness, note)


# }}}


def leibniz_counterexample_higher(alpha: float, w: WeightSpec, t: float) -> PropertyReport:
    """With f = g = t, D(fg) = 2 w t^(ceil(alpha)-alpha) but f Dg + g Df = 0."""
    if not (1 < alpha <= 2):
        raise GFDError(f"alpha must lie in (1, 2], got {alpha!r}")
    f = Var("t")
    lhs = gfd_higher(f * f, alpha, w, t)
    rhs = 2 * evaluate(f, t=t) * gfd_higher(f, alpha, w, t)
    rep = PropertyReport.build(
        "leibniz_higher_counterexample", _inputs(f="t", g="t", alpha=alpha, w=w), [t], [lhs], [rhs], audit=True
    )
    established = rep.max_abs_residual > NONZERO_RESIDUAL
    return replace(rep, verdict=Verdict.PASS if established else Verdict.FAIL)
