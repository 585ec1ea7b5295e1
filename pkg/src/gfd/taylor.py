"""alpha-fractional Taylor series in three regimes.

R1 (0 < alpha <= 1): f(x0) + sum_{i>=1} D^i f(x0) / (w (alpha)_i) (x-x0)^(alpha+i-1)
R2 (1 < alpha <= 2): f(x0) + f'(x0)(x-x0) + sum_{i>=2} D^i f(x0) / (w (alpha-1)_i) (x-x0)^(alpha+i-2)
R3 (alpha = n + A):  classical terms up to order n, then
                     sum_{i>n} D^i f(x0) / (w (A)_i) (x-x0)^(A+i-1)

``(a)_i`` is the rising factorial a(a+1)...(a+i-1) and ``D^i`` the
classical i-th derivative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from gfd.errors import AlphaError, DomainError
from gfd.expr import Expr, evaluate
from gfd.operators import derivative
from gfd.weights import WeightSpec


class Regime(str, enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"


def rising_factorial(alpha: float, i: int) -> float:
    if i < 1:
        raise ValueError(f"i must be >= 1, got {i}")
    return math.prod(alpha + k for k in range(i))


def regime_of(alpha: float) -> tuple[Regime, int, float]:
    """``(regime, n, A)`` with ``alpha = n + A``.

    Integer orders above 2 use ``A = 1``; the series then reduces to the
    classical Taylor series, as it does for alpha = 1 and alpha = 2.
    """
    if not (alpha > 0 and math.isfinite(alpha)):
        raise AlphaError(f"alpha must be positive, got {alpha!r}")
    if alpha <= 1:
        return Regime.R1, 0, alpha
    if alpha <= 2:
        return Regime.R2, 1, alpha - 1
    n = math.ceil(alpha) - 1
    return Regime.R3, n, alpha - n


@dataclass(frozen=True)
class FracTaylorSeries:
    x0: float
    alpha: float
    weight_value: float
    regime: Regime
    n: int
    A: float
    N: int
    terms: tuple[tuple[float, float], ...]  # (coefficient, exponent)

    @property
    def exponents(self) -> list[float]:
        return [e for _, e in self.terms]

    @property
    def coefficients(self) -> list[float]:
        return [c for c, _ in self.terms]


def taylor_build(f: Expr, x0: float, alpha: float, w: WeightSpec | float = 1.0, N: int = 10, var: str = "x") -> FracTaylorSeries:
    if N < 1:
        raise ValueError(f"truncation order must be >= 1, got {N}")
    wv = w.constant_value(alpha) if isinstance(w, WeightSpec) else float(w)
    if wv == 0:
        raise DomainError("weight value must be nonzero")
    regime, n, A = regime_of(alpha)

    def d(i: int) -> float:
        return evaluate(derivative(f, var, i), {var: x0})

    terms = [(d(0), 0.0)]
    if regime is Regime.R1:
        terms += [(d(i) / (wv * rising_factorial(alpha, i)), float(alpha + i - 1)) for i in range(1, N + 1)]
    elif regime is Regime.R2:
        terms.append((d(1), 1.0))
        terms += [(d(i) / (wv * rising_factorial(alpha - 1, i)), float(alpha + i - 2)) for i in range(2, N + 1)]
    else:
        terms += [(d(i) / math.factorial(i), float(i)) for i in range(1, min(n, N) + 1)]
        terms += [(d(i) / (wv * rising_factorial(A, i)), float(A + i - 1)) for i in range(n + 1, N + 1)]
    return FracTaylorSeries(x0, alpha, wv, regime, n, A, N, tuple(terms))


def taylor_eval(s: FracTaylorSeries, x: float) -> float:
    dx = x - s.x0
    if dx < 0:
        raise DomainError(f"series about {s.x0!r} is evaluated for x >= x0, got x={x!r}")
    return math.fsum(c * (1.0 if e == 0 else dx**e) for c, e in s.terms)
