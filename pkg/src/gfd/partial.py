"""Generalised partial fractional derivatives (first and mixed second order)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from gfd import ring
from gfd.errors import DomainError, GFDError
from gfd.expr import Const, Expr, Pow, Var, evaluate, simplify, substitute
from gfd.operators import check_alpha, derivative
from gfd.report import PropertyReport
from gfd.weights import WeightSpec


@dataclass(frozen=True)
class PartialSpec:
    """Differentiate in ``var`` at order ``alpha`` with weight ``weight``.

    The weight's ``t`` is read as ``var``; e.g. ``WeightSpec.custom("t^2")``
    on ``var="x"`` means ``w = x^2``.
    """

    var: str
    alpha: float
    weight: WeightSpec

    def __post_init__(self):
        check_alpha(self.alpha)

    def multiplier(self, point: Mapping[str, float]) -> float:
        ti = point[self.var]
        return self.weight.value(ti, self.alpha) * ti ** (1 - self.alpha)

    def multiplier_expr(self) -> Expr:
        return self.weight.expr(self.alpha, self.var) * Pow(Var(self.var), Const(1 - self.alpha))


def _check_point(p: Mapping[str, float]) -> dict[str, float]:
    bad = {k: v for k, v in p.items() if not v > 0}
    if bad:
        raise DomainError(f"point coordinates must be positive, got {bad}")
    return dict(p)


def gpfd(f: Expr, spec: PartialSpec, p: Mapping[str, float]) -> float:
    """``w(t_i) t_i^(1-alpha) df/dt_i`` at ``p``."""
    p = _check_point(p)
    if spec.var not in p:
        raise DomainError(f"point has no coordinate {spec.var!r}")
    return spec.multiplier(p) * evaluate(derivative(f, spec.var), p)


def gpfd_expr(f: Expr, spec: PartialSpec) -> Expr:
    return simplify(spec.multiplier_expr() * derivative(f, spec.var))


def gpfd_second(f: Expr, spec_i: PartialSpec, spec_j: PartialSpec, p: Mapping[str, float]) -> float:
    """Mixed second-order operator: first along ``spec_i``, then ``spec_j``.

    Evaluates ``w_j w_i (t_j t_i)^(1-alpha) d/dt_j (df/dt_i)``.
    """
    if spec_i.alpha != spec_j.alpha:
        raise GFDError("the mixed operator is defined for a common alpha")
    p = _check_point(p)
    mixed = derivative(derivative(f, spec_i.var), spec_j.var)
    return spec_i.multiplier(p) * spec_j.multiplier(p) * evaluate(mixed, p)


def restrict(f: Expr, var: str, p: Mapping[str, float]) -> Expr:
    """Freeze every coordinate of ``p`` except ``var`` and rename ``var`` to ``t``."""
    frozen = {k: Const(v) for k, v in p.items() if k != var}
    return substitute(substitute(f, frozen), {var: Var("t")})


def check_mixed_symmetry(
    f: Expr, spec_i: PartialSpec, spec_j: PartialSpec, points: Iterable[Mapping[str, float]], tol: float = 1e-10
) -> PropertyReport:
    pts, lhs, rhs, notes = [], [], [], []
    for p in points:
        try:
            l, r = gpfd_second(f, spec_i, spec_j, p), gpfd_second(f, spec_j, spec_i, p)
        except DomainError as exc:
            notes.append(f"{dict(p)} excluded: {exc}")
            continue
        pts.append(tuple(p[k] for k in sorted(p)))
        lhs.append(l)
        rhs.append(r)
    inputs = {"f": str(f), "i": spec_i.var, "j": spec_j.var, "alpha": spec_i.alpha,
              "w_i": str(spec_i.weight), "w_j": str(spec_j.weight)}
    return PropertyReport.build("mixed_symmetry", inputs, pts, lhs, rhs, tolerance=tol, notes=notes)


def _ring_check(name, f, g, spec, points, lhs_fn, rhs_fn, tol):
    pts, lhs, rhs, scale, notes = [], [], [], [], []
    for p in points:
        try:
            l = lhs_fn(p)
            r, s = rhs_fn(p)
        except DomainError as exc:
            notes.append(f"{dict(p)} excluded: {exc}")
            continue
        pts.append(tuple(p[k] for k in sorted(p)))
        lhs.append(l)
        rhs.append(r)
        scale.append(s)
    inputs = {"f": str(f), "g": str(g), "var": spec.var, "alpha": spec.alpha, "w": str(spec.weight)}
    return PropertyReport.build(name, inputs, pts, lhs, rhs, tolerance=tol, scale=scale, notes=notes)


def check_partial_linearity(f, g, a, b, spec, points, tol=1e-9) -> PropertyReport:
    combo = Const(a) * f + Const(b) * g

    def rhs(p):
        x, y = a * gpfd(f, spec, p), b * gpfd(g, spec, p)
        return x + y, max(abs(x), abs(y))

    return _ring_check("partial_linearity", f, g, spec, points, lambda p: gpfd(combo, spec, p), rhs, tol)


def check_partial_leibniz(f, g, spec, points, tol=1e-9) -> PropertyReport:
    prod = f * g

    def rhs(p):
        x, y = evaluate(f, p) * gpfd(g, spec, p), evaluate(g, p) * gpfd(f, spec, p)
        return x + y, max(abs(x), abs(y))

    return _ring_check("partial_leibniz", f, g, spec, points, lambda p: gpfd(prod, spec, p), rhs, tol)


def audit_partial_properties(f: Expr, g: Expr, spec: PartialSpec, p: Mapping[str, float], beta: float | None = None):
    """Quotient, chain and composition claims for a partial operator.

    Freezing the other coordinates turns the partial operator into the
    univariate GFD in ``spec.var``, so the univariate checkers apply as is.
    ``g`` is the inner function for the chain rule and must be positive.
    """
    grid = [p[spec.var]]
    fr, gr = restrict(f, spec.var, p), restrict(g, spec.var, p)
    outer = substitute(fr, {"t": Var("x")})
    beta = spec.alpha if beta is None else beta
    return [
        ring.check_quotient(fr, gr, spec.alpha, spec.weight, grid),
        ring.check_chain(outer, gr, spec.alpha, spec.weight, grid, "composite-in-t"),
        ring.check_chain(outer, gr, spec.alpha, spec.weight, grid, "outer-at-inner"),
        *ring.check_composition_law(fr, spec.alpha, beta, spec.weight, grid),
    ]
