"""Fractional derivative operators: the GFD, the six named definitions it
generalises, the higher-order GFD and an L1 quadrature for Caputo.

All conformable-type operators reduce to ``m(t) * f'(t)`` for some
multiplier ``m``; :data:`EXACT` evaluates that closed form with the
symbolic derivative, :class:`LimitQuotient` evaluates each definition's
own difference quotient at a small step.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable

import numpy as np
from scipy.special import gamma

from gfd.errors import AlphaError, DomainError, GFDError, GridError, PositivityError, SingularError, StepError
from gfd.expr import Const, Expr, Pow, Var, evaluate, evaluate_array, nth_derivative, simplify
from gfd.report import PropertyReport, Verdict
from gfd.weights import WeightSpec


class Kind(str, enum.Enum):
    GFD = "gfd"
    KHALIL = "khalil"
    ANDERSON_ULNESS = "anderson"
    KATUGAMPOLA = "katugampola"
    GUEBBAI_GHIAT = "guebbai"
    CAMRUD = "camrud"
    CAPUTO_L1 = "caputo"


@dataclass(frozen=True)
class ExactReduction:
    pass


@dataclass(frozen=True)
class LimitQuotient:
    h: float = 1e-6

    def __post_init__(self):
        if not (0.0 < self.h <= 1e-2):
            raise StepError(f"limit step must lie in (0, 1e-2], got {self.h!r}")


EXACT = ExactReduction()
EvalMethod = ExactReduction | LimitQuotient


def parse_method(text: str) -> EvalMethod:
    """``exact`` or ``limit:<h>``."""
    if text == "exact":
        return EXACT
    if text.startswith("limit:"):
        try:
            return LimitQuotient(float(text[6:]))
        except ValueError:
            raise GFDError(f"invalid step in {text!r}") from None
    if text == "limit":
        return LimitQuotient()
    raise GFDError(f"unknown method {text!r}")


def check_alpha(alpha: float, *, upper: float = 1.0, closed: bool = True) -> float:
    alpha = float(alpha)
    ok = alpha > 0 and (alpha <= upper if closed else alpha < upper)
    if not ok or not math.isfinite(alpha):
        bracket = "]" if closed else ")"
        raise AlphaError(f"alpha must lie in (0, {upper:g}{bracket}, got {alpha!r}")
    return alpha


def ceil_order(alpha: float) -> int:
    """Smallest integer >= alpha."""
    return math.ceil(alpha)


def _check_t(t: float) -> float:
    t = float(t)
    if not t > 0:
        raise DomainError(f"fractional derivatives are evaluated at t > 0, got t={t!r}")
    return t


@functools.lru_cache(maxsize=4096)
def derivative(f: Expr, var: str = "t", order: int = 1) -> Expr:
    """Cached symbolic derivative."""
    return nth_derivative(f, var, order)


def _func(f: Expr, var: str) -> Callable[[float], float]:
    return lambda x: evaluate(f, {var: x})


def _quotient(fn: Callable[[float], float], t: float, scale: float, h: float) -> float:
    """Symmetric quotient ``(fn(t + s*eps) - fn(t - s*eps)) / (2*eps)``.

    ``eps`` is ``h`` unless ``|s| > 1``, in which case it shrinks so that the
    argument moves by at most ``h``.
    """
    if scale == 0.0:
        return 0.0
    eps = h / max(1.0, abs(scale))
    step = scale * eps
    try:
        hi, lo = fn(t + step), fn(t - step)
    except DomainError as exc:
        raise StepError(f"difference step {step:g} at t={t!r} leaves the domain: {exc}") from None
    return (hi - lo) / (2.0 * eps)


def multiplier(alpha: float, w: WeightSpec, t: float) -> float:
    """``w(t, alpha) * t^(ceil(alpha) - alpha)``."""
    return w.value(t, alpha) * t ** (ceil_order(alpha) - alpha)


# {{{ GFD


def gfd(f: Expr, alpha: float, w: WeightSpec, t: float, method: EvalMethod = EXACT, var: str = "t") -> float:
    """Generalised fractional derivative of order ``alpha`` in (0, 1]."""
    alpha = check_alpha(alpha)
    return gfd_higher(f, alpha, w, t, method, var)


def gfd_higher(f: Expr, alpha: float, w: WeightSpec, t: float, method: EvalMethod = EXACT, var: str = "t") -> float:
    """GFD for alpha in (n, n+1]: ``w * t^(ceil(alpha)-alpha) * f^(ceil(alpha))``."""
    if not alpha > 0:
        raise AlphaError(f"alpha must be positive, got {alpha!r}")
    t = _check_t(t)
    n = ceil_order(alpha)
    m = multiplier(alpha, w, t)
    if isinstance(method, LimitQuotient):
        return _quotient(_func(derivative(f, var, n - 1), var), t, m, method.h)
    return m * evaluate(derivative(f, var, n), {var: t})


def gfd_expr(f: Expr, alpha: float, w: WeightSpec, var: str = "t") -> Expr:
    """The GFD of ``f`` as an expression in ``var`` (any alpha > 0)."""
    n = ceil_order(alpha)
    factor = w.expr(alpha, var) * Pow(Var(var), Const(n - alpha))
    return simplify(factor * derivative(f, var, n))


# }}}


# {{{ named operators


def _positive_increasing(f: Expr, t: float, var: str) -> tuple[float, float]:
    fv = evaluate(f, {var: t})
    dv = evaluate(derivative(f, var), {var: t})
    if not fv > 0 or dv < 0:
        raise PositivityError(f"requires f(t) > 0 and f'(t) >= 0; got f={fv!r}, f'={dv!r} at t={t!r}")
    return fv, dv


def named_derivative(
    kind: Kind | str,
    f: Expr,
    alpha: float,
    t: float,
    method: EvalMethod = EXACT,
    *,
    weight: WeightSpec | None = None,
    lower: float = 0.0,
    n_steps: int = 1000,
    var: str = "t",
) -> float:
    """Evaluate one of the named fractional derivatives at ``t``.

    ``weight`` is only used by :attr:`Kind.GFD`; ``lower`` and ``n_steps``
    only by :attr:`Kind.CAPUTO_L1`.
    """
    kind = Kind(kind)
    if kind is Kind.GFD:
        if weight is None:
            raise GFDError("the GFD needs a weight")
        return gfd(f, alpha, weight, t, method, var)
    if kind is Kind.CAPUTO_L1:
        return caputo(f, alpha, lower, t, n_steps, var)

    alpha = check_alpha(alpha)
    t = _check_t(t)
    fn = _func(f, var)
    exact = not isinstance(method, LimitQuotient)
    h = None if exact else method.h

    match kind:
        case Kind.KHALIL:
            if exact:
                return t ** (1 - alpha) * evaluate(derivative(f, var), {var: t})
            return _quotient(fn, t, t ** (1 - alpha), h)
        case Kind.KATUGAMPOLA:
            if exact:
                return t ** (1 - alpha) * evaluate(derivative(f, var), {var: t})
            # displacement is ~ t^(1-alpha) * eps; same shrink rule as _quotient
            eps = h / max(1.0, t ** (1 - alpha))
            try:
                hi = fn(t * math.exp(eps * t ** -alpha))
                lo = fn(t * math.exp(-eps * t ** -alpha))
            except DomainError as exc:
                raise StepError(f"difference step leaves the domain: {exc}") from None
            return (hi - lo) / (2 * eps)
        case Kind.ANDERSON_ULNESS:
            if exact:
                df = evaluate(derivative(f, var), {var: t})
            else:
                df = _quotient(fn, t, 1.0, h)
            return (1 - alpha) * abs(t) ** alpha * fn(t) + alpha * abs(t) ** (1 - alpha) * df
        case Kind.GUEBBAI_GHIAT:
            fv, dv = _positive_increasing(f, t, var)
            if exact:
                return dv**alpha * fv ** (1 - alpha)
            log_s = (1 - alpha) / alpha * math.log(fv)
            if log_s < 0:
                q = _quotient(fn, t, math.exp(log_s), h)
                return max(q, 0.0) ** alpha
            # |s| >= 1: the quotient is s * (unit-scale quotient), and s^alpha
            # = f^(1-alpha); factoring avoids overflow of s for small alpha
            q = _quotient(fn, t, 1.0, h)
            return fv ** (1 - alpha) * max(q, 0.0) ** alpha
        case Kind.CAMRUD:
            fv, dv = _positive_increasing(f, t, var)
            if exact:
                return dv**alpha * fv ** (1 - alpha)
            q = _quotient(fn, t, 1.0, h)
            return fv ** (1 - alpha) * max(q, 0.0) ** alpha
    raise GFDError(f"unsupported operator {kind}")


def weight_of(
    kind: Kind | str,
    f: Expr,
    alpha: float,
    t: float,
    *,
    weight: WeightSpec | None = None,
    lower: float = 0.0,
    n_steps: int = 1000,
    var: str = "t",
) -> float:
    """The weight ``w`` for which the GFD reproduces ``kind`` at this point.

    Defined as ``D_kind f(t) / (t^(1-alpha) f'(t))``; undefined where
    ``f'(t) = 0``.
    """
    t = _check_t(t)
    dv = evaluate(derivative(f, var), {var: t})
    if dv == 0.0:
        raise SingularError(f"f'({t!r}) = 0: the representing weight is undefined")
    value = named_derivative(kind, f, alpha, t, EXACT, weight=weight, lower=lower, n_steps=n_steps, var=var)
    return value / (t ** (1 - alpha) * dv)


# }}}


# {{{ Caputo


def caputo(f: Expr, alpha: float, a: float, t: float, n_steps: int = 1000, var: str = "t") -> float:
    """L1 approximation of the Caputo derivative on ``[a, t]``.

    ``f'`` is frozen at each cell midpoint and the kernel ``(t-x)^-alpha``
    integrated exactly, giving order ``2 - alpha``.
    """
    alpha = check_alpha(alpha, closed=False)
    if n_steps < 2:
        raise GridError(f"need at least 2 cells, got {n_steps}")
    if not t > a:
        raise GridError(f"need t > a, got a={a!r}, t={t!r}")
    x = np.linspace(a, t, n_steps + 1)
    mid = 0.5 * (x[:-1] + x[1:])
    df = evaluate_array(derivative(f, var), {var: mid})
    df = np.broadcast_to(df, mid.shape)
    s = t - x
    s[-1] = 0.0
    kernel = s[:-1] ** (1 - alpha) - s[1:] ** (1 - alpha)
    return float(np.dot(df, kernel) / gamma(2 - alpha))


# }}}


def validate_weight(w: WeightSpec, ts: Iterable[float], alphas: Iterable[float], tol: float = 1e-12) -> PropertyReport:
    """Check ``w(t, alpha) = 1`` if and only if ``alpha = 1`` on a sample grid."""
    points, values, violations = [], [], []
    for alpha in alphas:
        alpha = check_alpha(alpha)
        for t in ts:
            v = w.value(_check_t(t), alpha)
            points.append((t, alpha))
            values.append(v)
            is_one = abs(v - 1.0) <= tol
            if alpha == 1.0 and not is_one:
                violations.append(f"w({t!r}, 1) = {v!r} != 1")
            elif alpha != 1.0 and is_one:
                violations.append(f"w({t!r}, {alpha!r}) = 1 although alpha < 1")
    report = PropertyReport.build(
        "weight_iff", {"weight": str(w)}, points, values, [1.0] * len(values), notes=violations
    )
    verdict = "PASS" if not violations and points else "FAIL"
    return _with_verdict(report, verdict)


def _with_verdict(report: PropertyReport, verdict: str) -> PropertyReport:
    return replace(report, verdict=Verdict(verdict))
