"""Named audit suites, deterministic for a given seed."""

from __future__ import annotations

import math
import random
from dataclasses import replace

import numpy as np

from gfd import partial, ring
from gfd.expr import parse
from gfd.operators import EXACT, LimitQuotient, gfd
from gfd.partial import PartialSpec
from gfd.randexpr import nonvanishing, random_multivariate, random_pair
from gfd.report import PropertyReport, merge_reports
from gfd.weights import ALPHA, ONE, POWER_T, WeightSpec

SUITES = ("ring", "partial", "identities", "theorems")
RING_GRID = tuple(np.linspace(0.5, 5.0, 10).tolist())
IDENTITY_ALPHAS = tuple(round(0.1 * k, 1) for k in range(1, 11))
IDENTITY_GRID = tuple(np.linspace(0.1, 10.0, 100).tolist())


def _draw_alpha(rng: random.Random) -> float:
    return 1.0 - rng.random()  # (0, 1]


def ring_suite(seed: int = 0, pairs: int = 20, grid=RING_GRID) -> list[PropertyReport]:
    rng = random.Random(seed)
    lin, leib, quot = [], [], []
    for _ in range(pairs):
        f, g = random_pair(rng)
        alpha = _draw_alpha(rng)
        w = rng.choice([ONE, ALPHA, POWER_T])
        a, b = round(rng.uniform(-3, 3), 2), round(rng.uniform(-3, 3), 2)
        lin.append(ring.check_linearity(f, g, a, b, alpha, w, grid))
        leib.append(ring.check_leibniz(f, g, alpha, w, grid))
        quot.append(ring.check_quotient(f, nonvanishing(g), alpha, w, grid))
    info = {"seed": seed, "pairs": pairs}
    outer, inner, sq = parse("x^2"), parse("t^2"), parse("t^2")
    return [
        merge_reports("linearity", lin, info),
        merge_reports("leibniz", leib, info),
        merge_reports("quotient", quot, info),
        ring.check_chain(outer, inner, 0.5, ONE, grid, "composite-in-t"),
        ring.check_chain(outer, inner, 0.5, ONE, grid, "outer-at-inner"),
        *ring.check_composition_law(sq, 0.5, 0.5, ONE, grid),
        ring.check_anderson_weight(parse("exp(t)"), 0.5, grid),
    ]


def partial_suite(seed: int = 0, pairs: int = 10) -> list[PropertyReport]:
    rng = random.Random(seed)
    axis = np.linspace(0.5, 3.0, 4).tolist()
    points = [{"t1": a, "t2": b} for a in axis for b in axis]
    lin, leib, restr, comp = [], [], [], []
    for _ in range(pairs):
        f, g = random_multivariate(rng), random_multivariate(rng)
        alpha = _draw_alpha(rng)
        w = rng.choice([ONE, ALPHA, POWER_T])
        var, other = rng.choice([("t1", "t2"), ("t2", "t1")])
        spec = PartialSpec(var, alpha, w)
        a, b = round(rng.uniform(-3, 3), 2), round(rng.uniform(-3, 3), 2)
        lin.append(partial.check_partial_linearity(f, g, a, b, spec, points))
        leib.append(partial.check_partial_leibniz(f, g, spec, points))
        restr.append(_restriction_report(f, spec, points))
        comp.append(_composition_report(f, spec, PartialSpec(other, alpha, rng.choice([ONE, ALPHA, POWER_T])), points))
    info = {"seed": seed, "pairs": pairs}
    fixture = parse("t1^3*sin(t2)")
    half = 0.5
    reports = [
        merge_reports("partial_linearity", lin, info),
        merge_reports("partial_leibniz", leib, info),
        merge_reports("partial_restriction", restr, info),
        merge_reports("partial_composition", comp, info),
        partial.check_mixed_symmetry(fixture, PartialSpec("t1", half, ONE), PartialSpec("t2", half, ONE), points),
    ]
    audits = partial.audit_partial_properties(
        parse("t1^2*t2"), parse("t1^2 + t2"), PartialSpec("t1", half, ONE), {"t1": 2.0, "t2": 1.5}
    )
    reports += [_renamed(r, "partial_" + r.property_id) for r in audits]
    return reports


def _renamed(report: PropertyReport, name: str) -> PropertyReport:
    return replace(report, property_id=name)


def _restriction_report(f, spec: PartialSpec, points) -> PropertyReport:
    lhs, rhs = [], []
    for p in points:
        lhs.append(partial.gpfd(f, spec, p))
        rhs.append(gfd(partial.restrict(f, spec.var, p), spec.alpha, spec.weight, p[spec.var]))
    pts = [(p["t1"], p["t2"]) for p in points]
    return PropertyReport.build("partial_restriction", {"f": str(f)}, pts, lhs, rhs, tolerance=1e-12)


def _composition_report(f, spec_i: PartialSpec, spec_j: PartialSpec, points) -> PropertyReport:
    inner = partial.gpfd_expr(f, spec_i)
    lhs = [partial.gpfd_second(f, spec_i, spec_j, p) for p in points]
    rhs = [partial.gpfd(inner, spec_j, p) for p in points]
    pts = [(p["t1"], p["t2"]) for p in points]
    return PropertyReport.build("partial_composition", {"f": str(f)}, pts, lhs, rhs, tolerance=1e-10)


def identities_suite(weight: WeightSpec = ALPHA, alphas=IDENTITY_ALPHAS, grid=IDENTITY_GRID,
                     limit_h: float = 1e-6) -> list[PropertyReport]:
    per_item: dict[str, list[PropertyReport]] = {}
    limit = []
    for alpha in alphas:
        for rep in ring.check_identities(alpha, weight, grid, EXACT):
            per_item.setdefault(rep.property_id, []).append(rep)
        limit.append(ring.check_identities(alpha, weight, grid, LimitQuotient(limit_h))[0])
    info = {"weight": str(weight), "alphas": list(alphas), "points": len(grid)}
    out = [merge_reports(name, reps, info) for name, reps in per_item.items()]
    out.append(merge_reports("identity_1[limit]", limit, {**info, "h": limit_h}))
    return out


def witness_report(property_id: str, inputs: dict, w: ring.WitnessResult) -> PropertyReport:
    return PropertyReport.build(
        property_id, {**inputs, "iterations": w.iterations}, [w.c], [w.achieved_value], [w.target_value],
        tolerance=ring.WITNESS_TOL,
    )


def theorems_suite() -> list[PropertyReport]:
    reports = []
    for f_text, a, b, alpha, w in [
        ("(t-1)*(t-3)", 1.0, 3.0, 0.5, ONE),
        ("sin(t)", math.pi / 4, 3 * math.pi / 4, 0.3, ALPHA),
    ]:
        wit = ring.find_rolle_witness(parse(f_text), a, b, alpha, w)
        reports.append(witness_report("rolle", {"f": f_text, "a": a, "b": b, "alpha": alpha, "w": str(w)}, wit))

    inputs = {"f": "t^2", "a": 1.0, "b": 2.0, "alpha": 0.5, "w": "one"}
    mvt = ring.find_mvt_witness(parse("t^2"), 1.0, 2.0, 0.5, ONE)
    reports.append(witness_report("mvt", inputs, mvt.witness))
    if mvt.naive_witness is None:
        naive = PropertyReport.build("mvt_naive_constant", inputs, [], [], [], audit=True, notes=[mvt.note])
    else:
        w = mvt.naive_witness
        naive = PropertyReport.build(
            "mvt_naive_constant", inputs, [w.c], [w.achieved_value], [w.target_value], audit=True, notes=[mvt.note]
        )
    reports.append(naive)

    higher = [ring.leibniz_counterexample_higher(alpha, ONE, t) for alpha, t in [(1.5, 1.0), (1.5, 4.0), (2.0, 1.0)]]
    reports.append(merge_reports("leibniz_higher_counterexample", higher, {"f": "t", "g": "t", "w": "one"}))
    return reports


def run_suite(name: str, seed: int = 0, weight: WeightSpec | None = None) -> list[PropertyReport]:
    if name == "ring":
        return ring_suite(seed)
    if name == "partial":
        return partial_suite(seed)
    if name == "identities":
        return identities_suite(weight or ALPHA)
    if name == "theorems":
        return theorems_suite()
    raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
