"""Linear fractional ODE ``a D^alpha y + b y = c`` and residual checks for
the two fractional PDE examples.

With a t-constant weight ``w`` the ODE is equivalent to the classical
``y' = (c - b y) t^(alpha-1) / (a w)``, which has the closed form
``y = c/b + (y0 - c/b) exp(-b (t^alpha - t0^alpha) / (a w alpha))``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from gfd.errors import BlowupError, DomainError, GFDError, ParameterError, StepError
from gfd.expr import Const, Exp, Expr, Pow, Var, evaluate, parse, simplify, substitute
from gfd.operators import derivative, gfd
from gfd.partial import PartialSpec, gpfd_second
from gfd.weights import WeightSpec

BLOWUP = 1e12


@dataclass(frozen=True)
class LinearFracODE:
    a: float
    b: float
    c: float
    alpha: float
    weight_value: float = 1.0
    t0: float = 0.0
    y0: float = 0.0

    def __post_init__(self):
        if self.a == 0:
            raise ParameterError("a must be nonzero")
        if not (0 < self.alpha <= 1):
            raise ParameterError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not self.weight_value > 0:
            raise ParameterError(f"weight must be positive, got {self.weight_value!r}")
        if self.t0 < 0:
            raise ParameterError(f"t0 must be non-negative, got {self.t0!r}")

    @property
    def weight(self) -> WeightSpec:
        return WeightSpec.custom(Const(self.weight_value))

    def rhs(self, t: float, y: float) -> float:
        """Right-hand side of the equivalent classical ODE."""
        return (self.c - self.b * y) * t ** (self.alpha - 1) / (self.a * self.weight_value)


@dataclass(frozen=True)
class ResidualReport:
    label: str
    points: tuple
    residuals: tuple[float, ...]
    max_abs_residual: float
    notes: tuple[str, ...] = field(default=())

    def to_csv(self, columns: Sequence[str] = ("t",)) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([*columns, "residual"])
        for p, r in zip(self.points, self.residuals):
            coords = p if isinstance(p, tuple) else (p,)
            w.writerow([f"{v:.17g}" for v in (*coords, r)])
        return buf.getvalue()


def _report(label, points, residuals, notes) -> ResidualReport:
    res = tuple(float(r) for r in residuals)
    worst = max((abs(r) for r in res), default=math.nan)
    return ResidualReport(label, tuple(points), res, worst, tuple(notes))


# {{{ ODE


def solve_linear_closed(ode: LinearFracODE) -> Expr:
    """Closed-form solution through ``(t0, y0)`` as an expression in ``t``."""
    a, b, c, alpha, w = ode.a, ode.b, ode.c, ode.alpha, ode.weight_value
    t_pow = Pow(Var("t"), Const(alpha))
    shift = Const(ode.t0**alpha)
    if b == 0:
        return simplify(Const(ode.y0) + Const(c / (a * w * alpha)) * (t_pow - shift))
    steady = c / b
    amp = ode.y0 - steady
    if amp == 0:
        return Const(steady)
    decay = Exp(Const(-b / (a * w * alpha)) * (t_pow - shift))
    return simplify(Const(steady) + Const(amp) * decay)


def solve_linear_numeric(ode: LinearFracODE, t_end: float, step: float) -> list[tuple[float, float]]:
    """Classical RK4 on the reduced ODE from ``t0`` to ``t_end``."""
    if not ode.t0 > 0:
        raise StepError("the reduced equation is singular at t = 0; start at t0 > 0")
    span = t_end - ode.t0
    if not (step > 0 and span > 0 and step <= span / 10):
        raise StepError(f"step must lie in (0, (t_end - t0)/10], got {step!r} for span {span!r}")
    n = math.ceil(span / step - 1e-9)
    h = span / n
    f = ode.rhs
    t, y = ode.t0, ode.y0
    out = [(t, y)]
    for k in range(1, n + 1):
        k1 = f(t, y)
        k2 = f(t + h / 2, y + h / 2 * k1)
        k3 = f(t + h / 2, y + h / 2 * k2)
        k4 = f(t + h, y + h * k3)
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = ode.t0 + k * h
        if not abs(y) <= BLOWUP:
            raise BlowupError(f"|y| exceeded {BLOWUP:g} at t={t!r}")
        out.append((t, y))
    return out


def ode_residual(ode: LinearFracODE, y: Expr, grid: Iterable[float]) -> ResidualReport:
    """``a D^alpha y + b y - c`` on ``grid`` (exact GFD path)."""
    w = ode.weight
    pts, res, notes = [], [], []
    for t in grid:
        try:
            r = ode.a * gfd(y, ode.alpha, w, t) + ode.b * evaluate(y, t=t) - ode.c
        except DomainError as exc:
            notes.append(f"t={t!r} excluded: {exc}")
            continue
        pts.append(float(t))
        res.append(r)
    return _report("ode", pts, res, notes)


def trajectory_to_csv(traj: Iterable[tuple[float, float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "y"])
    for t, y in traj:
        w.writerow([f"{t:.17g}", f"{y:.17g}"])
    return buf.getvalue()


# }}}


# {{{ PDE residuals

PDE_SYMBOLS = ("u", "u_x", "u_t", "u_xx", "u_tt", "u_xt")
PDE_VARIABLES = frozenset({"x", "t", *PDE_SYMBOLS})

# weights of the second example: w_x = x^2, w_t = t^(-1/3), alpha = 1/5
PDE2_SPEC_X = PartialSpec("x", 0.2, WeightSpec.custom("t^2"))
PDE2_SPEC_T = PartialSpec("t", 0.2, WeightSpec.custom("t^(-1/3)"))


@dataclass(frozen=True)
class CustomPDE:
    """Residual expression in x, t, u and its classical partials
    (``u_x``, ``u_t``, ``u_xx``, ``u_tt``, ``u_xt``)."""

    expr: Expr

    @classmethod
    def parse(cls, text: str) -> "CustomPDE":
        return cls(parse(text, variables=PDE_VARIABLES))


def _partials(u: Expr, p: Mapping[str, float]) -> dict[str, float]:
    u_x, u_t = derivative(u, "x"), derivative(u, "t")
    exprs = {
        "u": u,
        "u_x": u_x,
        "u_t": u_t,
        "u_xx": derivative(u_x, "x"),
        "u_tt": derivative(u_t, "t"),
        "u_xt": derivative(u_x, "t"),
    }
    return {k: evaluate(e, p) for k, e in exprs.items()}


def _pde1(u, p):
    d = _partials(u, p)
    x = p["x"]
    return d["u_t"] + 2.0 / 3.0 * x * d["u_x"] + d["u"] - x * x


def _pde2(u, p):
    d = _partials(u, p)
    x, t = p["x"], p["t"]
    return x**2 * x**0.8 * t**0.8 * d["u_xt"] + 2.0 * t ** (1.0 / 3.0) * d["u"]


def _pde2_original(u, p):
    return gpfd_second(u, PDE2_SPEC_X, PDE2_SPEC_T, p) + 2.0 * evaluate(u, p) / p["x"]


_EQUATIONS = {"pde1": _pde1, "pde2": _pde2, "pde2-original": _pde2_original}


def pde_residual(equation: str | CustomPDE, u: Expr, points: Iterable[Mapping[str, float]]) -> ResidualReport:
    """Pointwise defect of ``u`` in one of the PDE examples.

    ``pde1``: u_t + (2/3) x u_x + u - x^2.
    ``pde2``: x^2 x^(4/5) t^(4/5) u_xt + 2 t^(1/3) u (reduced form).
    ``pde2-original``: mixed GPFD (w_x = x^2, w_t = t^(-1/3), alpha = 1/5) + 2u/x,
    the equation before reduction.
    """
    if isinstance(equation, CustomPDE):
        label = f"custom:{equation.expr}"

        def fn(u, p):
            return evaluate(equation.expr, {**p, **_partials(u, p)})
    else:
        try:
            fn = _EQUATIONS[equation]
        except KeyError:
            raise GFDError(f"unknown equation {equation!r}; choose from {sorted(_EQUATIONS)}") from None
        label = equation
    pts, res, notes = [], [], []
    for p in points:
        p = dict(p)
        if any(not v > 0 for v in p.values()):
            notes.append(f"{p} excluded: coordinates must be positive")
            continue
        try:
            r = fn(u, p)
        except DomainError as exc:
            notes.append(f"{p} excluded: {exc}")
            continue
        pts.append((p["x"], p["t"]))
        res.append(r)
    return _report(label, pts, res, notes)


def square_grid(lo: float, hi: float, n: int) -> list[dict[str, float]]:
    axis = np.linspace(lo, hi, n)
    return [{"x": float(x), "t": float(t)} for x in axis for t in axis]


def _with_k(text: str, k: float) -> Expr:
    return simplify(substitute(parse(text, {"x", "t", "k"}), {"k": k}))


def pde1_corrected_solution() -> Expr:
    return parse("3/7*x^2*(1 - exp(-7*t/3))")


def pde1_static_solution() -> Expr:
    """Time-independent candidate; fails the equation."""
    return parse("x^2/7*(1 - exp(-7/3))")


def pde2_separated_solution(k: float = 1.0) -> Expr:
    """Separated solution of the reduced second example.

    f'/f = k x^(-14/5) and g'/g = -2 t^(-7/15)/k integrate to
    f = exp(-(5k/9) x^(-9/5)) and g = exp(-(15/(4k)) t^(8/15)).
    """
    return _with_k("exp(-(5*k/9)*x^(-9/5))*exp(-(15/(4*k))*t^(8/15))", k)


def pde2_unscaled_solution(k: float = 1.0) -> Expr:
    """Separation without the antiderivative factors; fails the reduced form."""
    return _with_k("exp(k*x^(1/15) - 2*t^(8/15)/k)", k)


def pde2_rescaled_solution(k: float = 1.0) -> Expr:
    """Unscaled separation with the antiderivative factors restored
    (``f'/f = k x^(-14/15)``); still not a solution of the reduced form."""
    return _with_k("exp(15*k*x^(1/15))*exp(-(15/(4*k))*t^(8/15))", k)


# }}}
