"""Acceptance criteria 1-11, each at its stated tolerance.

Run under pytest (one PASS/FAIL line per criterion is printed to the
terminal) or directly: ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import random
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.special import gamma

from gfd import ring, solver, suites
from gfd.expr import evaluate, parse
from gfd.operators import EXACT, Kind, LimitQuotient, caputo, gfd, named_derivative
from gfd.report import Verdict
from gfd.taylor import taylor_build, taylor_eval
from gfd.weights import ALPHA, ONE, WeightSpec

LIMIT = LimitQuotient(1e-6)


def criterion_1():
    start = time.perf_counter()
    worst = {"item1_exact": 0.0, "item1_limit": 0.0, "items2to4": 0.0}
    for w in (ONE, ALPHA, WeightSpec.from_string("tau:alpha:2")):
        for alpha in suites.IDENTITY_ALPHAS:
            exact = ring.check_identities(alpha, w, suites.IDENTITY_GRID, EXACT)
            worst["item1_exact"] = max(worst["item1_exact"], exact[0].max_rel_residual)
            worst["items2to4"] = max(worst["items2to4"], *(r.max_rel_residual for r in exact[1:]))
            limit = ring.check_identities(alpha, w, suites.IDENTITY_GRID, LIMIT)[0]
            worst["item1_limit"] = max(worst["item1_limit"], limit.max_rel_residual)
    elapsed = time.perf_counter() - start
    ok = worst["item1_exact"] <= 1e-12 and worst["item1_limit"] <= 1e-5 and worst["items2to4"] <= 1e-10 and elapsed < 5
    return ok, f"max rel {worst}, runtime {elapsed:.2f}s"


def criterion_2():
    rng = random.Random(2)
    f = parse("exp(t)")
    worst_exact = worst_limit = 0.0
    for _ in range(200):
        alpha, t = 1.0 - rng.random(), rng.uniform(0.1, 5.0)
        closed_k = t ** (1 - alpha) * math.exp(t)
        closed_g = math.exp(t) ** alpha * math.exp(t) ** (1 - alpha)
        groups = [
            (closed_k, [(Kind.KHALIL, None), (Kind.KATUGAMPOLA, None), (Kind.GFD, ONE)]),
            (closed_g, [(Kind.GUEBBAI_GHIAT, None), (Kind.CAMRUD, None)]),
        ]
        for closed, members in groups:
            for kind, w in members:
                e = named_derivative(kind, f, alpha, t, EXACT, weight=w)
                l = named_derivative(kind, f, alpha, t, LIMIT, weight=w)
                worst_exact = max(worst_exact, abs(e - closed) / abs(closed))
                worst_limit = max(worst_limit, abs(l - closed) / abs(closed))
    ok = worst_exact <= 1e-12 and worst_limit <= 1e-5
    return ok, f"max rel deviation exact {worst_exact:.2e}, limit {worst_limit:.2e}"


def criterion_3():
    f = parse("t")
    worst = {1000: 0.0, 10_000: 0.0}
    for alpha in (0.25, 0.5, 0.75):
        for t in (0.5, 1.0, 2.0):
            want = t ** (1 - alpha) / gamma(2 - alpha)
            for n in worst:
                worst[n] = max(worst[n], abs(caputo(f, alpha, 0.0, t, n) - want) / want)
    # midpoint-L1 is exact for linear f, so the order is measured on t^2
    g = parse("t^2")
    orders = []
    for alpha in (0.25, 0.5, 0.75):
        want = 2 / gamma(3 - alpha)
        e1 = abs(caputo(g, alpha, 0.0, 1.0, 1000) - want)
        e2 = abs(caputo(g, alpha, 0.0, 1.0, 10_000) - want)
        orders.append(math.log10(e1 / e2))
    ok = worst[1000] <= 1e-2 and worst[10_000] <= 1e-3 and min(orders) >= 1.2
    return ok, f"f=t rel err {worst[1000]:.1e} / {worst[10_000]:.1e}; order on t^2 {[round(o, 3) for o in orders]}"


def criterion_4():
    reports = {r.property_id: r for r in suites.ring_suite(seed=4, pairs=100)}
    parts = [reports[k] for k in ("linearity", "leibniz", "quotient")]
    ok = all(r.verdict is Verdict.PASS and r.max_rel_residual <= 1e-9 for r in parts)
    return ok, "; ".join(f"{r.property_id} {r.verdict.value} max rel {r.max_rel_residual:.1e}" for r in parts)


def criterion_5():
    rep = ring.leibniz_counterexample_higher(1.5, ONE, 1.0)
    gap = rep.max_abs_residual
    return abs(gap - 2.0) <= 1e-12, f"gap {gap!r}"


def criterion_6():
    rolle = ring.find_rolle_witness(parse("(t-1)*(t-3)"), 1.0, 3.0, 0.5, ONE)
    mvt = ring.find_mvt_witness(parse("t^2"), 1.0, 2.0, 0.5, ONE)
    c = mvt.witness.c
    target = 1.5 / (math.sqrt(2) - 1)
    achieved_gap = abs(mvt.witness.achieved_value - mvt.witness.target_value)
    ok = (
        abs(rolle.c - 2.0) <= 1e-8
        and 1 < c < 2
        and abs(2 * c**1.5 - target) <= 1e-9 * target
        and achieved_gap <= 1e-9
        and mvt.naive_witness is None
        and "unattainable" in mvt.note
    )
    return ok, f"rolle c={rolle.c!r}; mvt c={c!r} gap {achieved_gap:.1e}; {mvt.note}"


def criterion_7():
    f = parse("exp(x)")
    worst, sums = 0.0, []
    for alpha in (1.0, 2.0):
        s = taylor_build(f, 0.0, alpha, 1.0, 10)
        for i, (c, e) in enumerate(s.terms):
            want = 1 / math.factorial(i)
            worst = max(worst, abs(c - want) / want)
            assert e == i
        sums.append(abs(taylor_eval(s, 1.0) - math.e))
    return worst <= 1e-14 and max(sums) <= 1e-7, f"coef rel {worst:.1e}; |S(1) - e| {max(sums):.1e}"


def criterion_8():
    start = time.perf_counter()
    ode = solver.LinearFracODE(1.0, 2.0, 4.0, 0.5, 1.0, 0.0, 1.0)
    closed = solver.solve_linear_closed(ode)
    grid = np.linspace(0.1, 2.0, 191).tolist()
    residual = solver.ode_residual(ode, closed, grid).max_abs_residual
    matches_formula = max(abs(evaluate(closed, t=t) - (2 - math.exp(-4 * math.sqrt(t)))) for t in grid)
    t0 = 0.01
    numeric = solver.LinearFracODE(1.0, 2.0, 4.0, 0.5, 1.0, t0, evaluate(closed, t=t0))
    traj = solver.solve_linear_numeric(numeric, 2.0, 1e-4)
    err = max(abs(y - evaluate(closed, t=t)) for t, y in traj)
    elapsed = time.perf_counter() - start
    ok = residual <= 1e-9 and matches_formula <= 1e-14 and err <= 1e-6 and elapsed < 2
    return ok, f"residual {residual:.1e}; rk4 max err {err:.1e}; runtime {elapsed:.2f}s"


def criterion_9():
    p1 = solver.square_grid(0.5, 2.0, 16)
    corrected = solver.pde_residual("pde1", solver.pde1_corrected_solution(), p1).max_abs_residual
    static = solver.pde_residual("pde1", solver.pde1_static_solution(), p1).max_abs_residual
    p2 = solver.square_grid(1.0, 2.0, 11)
    separated = solver.pde_residual("pde2", solver.pde2_separated_solution(1.0), p2).max_abs_residual
    ok = corrected <= 1e-8 and static >= 1e-2 and separated <= 1e-6
    return ok, f"pde1 corrected {corrected:.1e}, time-free candidate {static:.2f} (flagged); pde2 separated {separated:.1e}"


def criterion_10():
    argv = [sys.executable, "-m", "gfd", "compare", "--expr", "sin(2*t)", "--grid", "0.1:10:0.01"]
    a = subprocess.run(argv + ["--alpha", "0.75"], capture_output=True, check=True).stdout
    b = subprocess.run(argv + ["--alpha", "0.75"], capture_output=True, check=True).stdout
    near = subprocess.run(argv + ["--alpha", "0.999"], capture_output=True, check=True, text=True).stdout
    worst = 0.0
    for line in near.splitlines()[1:]:
        cells = line.split(",")
        want = 2 * math.cos(2 * float(cells[0]))
        worst = max(worst, abs(float(cells[2]) - want) / (1 + abs(want)))
    ok = a == b and len(a) > 0 and worst <= 1e-2
    return ok, f"byte-identical {a == b} ({len(a)} bytes); khalil vs 2cos(2t) max scaled dev {worst:.1e}"


def criterion_11():
    grid = suites.RING_GRID
    outer, inner = parse("x^2"), parse("t^2")
    reports = [
        ring.check_chain(outer, inner, 0.5, ONE, grid, "composite-in-t"),
        ring.check_chain(outer, inner, 0.5, ONE, grid, "outer-at-inner"),
        ring.check_composition_law(inner, 0.5, 0.5, ONE, grid)[0],
    ]
    ok = all(r.verdict is Verdict.AUDIT and r.max_abs_residual > 1e-6 for r in reports)
    return ok, "; ".join(f"{r.property_id} {r.verdict.value} max abs {r.max_abs_residual:.3g}" for r in reports)


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}


def _line(i, ok, detail):
    return f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("i", sorted(CRITERIA))
def test_acceptance(i, capsys):
    ok, detail = CRITERIA[i]()
    with capsys.disabled():
        print("\n" + _line(i, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(_line(i, ok, detail))
    sys.exit(1 if failed else 0)
