"""Seeded random expressions that stay finite and well-conditioned on
positive grids such as [0.5, 5]."""

from __future__ import annotations

import random

from gfd.expr import Add, Const, Cos, Exp, Expr, Ln, Mul, Pow, Sin, Sqrt, Sub, Var


def random_expr(rng: random.Random, depth: int = 3, var: str = "t") -> Expr:
    """A random expression in ``var``.

    Only ``var`` itself is ever raised to fractional powers or passed to
    ``ln``/``sqrt``, and ``exp`` only sees bounded arguments, so the result
    is defined for every positive value of ``var``.
    """
    v = Var(var)
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.7:
            return v
        return Const(round(rng.uniform(-2, 2), 2))
    pick = rng.randrange(9)
    if pick == 0:
        return Add(random_expr(rng, depth - 1, var), random_expr(rng, depth - 1, var))
    if pick == 1:
        return Sub(random_expr(rng, depth - 1, var), random_expr(rng, depth - 1, var))
    if pick == 2:
        return Mul(random_expr(rng, depth - 1, var), random_expr(rng, depth - 1, var))
    if pick == 3:
        return Sin(random_expr(rng, depth - 1, var))
    if pick == 4:
        return Cos(random_expr(rng, depth - 1, var))
    if pick == 5:
        return Exp(Sin(random_expr(rng, depth - 1, var)))
    if pick == 6:
        return Pow(v, Const(rng.choice([2, 3, 0.5, 1.5, -1])))
    if pick == 7:
        return Ln(v)
    return Sqrt(v)


def random_pair(rng: random.Random, depth: int = 3, var: str = "t") -> tuple[Expr, Expr]:
    return random_expr(rng, depth, var), random_expr(rng, depth, var)


def nonvanishing(g: Expr) -> Expr:
    """``1.5 + sin(g)``: bounded below by 0.5, for use as a denominator."""
    return Add(Const(1.5), Sin(g))


def random_multivariate(rng: random.Random, names=("t1", "t2"), depth: int = 3) -> Expr:
    """Sum or product of random univariate pieces in each of ``names``."""
    parts = [random_expr(rng, depth - 1, n) for n in names]
    out = parts[0]
    for p in parts[1:]:
        out = Mul(out, p) if rng.random() < 0.5 else Add(out, p)
    return out
