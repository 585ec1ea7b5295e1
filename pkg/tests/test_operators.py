import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import gamma

from gfd.errors import AlphaError, DomainError, GFDError, PositivityError, SingularError
from gfd.expr import parse
from gfd.operators import (
    EXACT, Kind, LimitQuotient, caputo, gfd, gfd_expr, gfd_higher, named_derivative, parse_method, validate_weight,
    weight_of,
)
from gfd.report import Verdict
from gfd.weights import ALPHA, ONE, POWER_T, WeightSpec
from gfd.expr import evaluate

alphas = st.floats(min_value=0.05, max_value=1.0)
times = st.floats(min_value=0.2, max_value=5.0)
LIMIT = LimitQuotient(1e-6)


# {{{ GFD


def test_gfd_identity_argument():
    w = WeightSpec.custom("2")
    for t in (0.1, 1.0, 7.5):
        assert gfd(parse("t^0.5/(0.5*2)"), 0.5, w, t) == pytest.approx(1.0, rel=1e-15)


def test_alpha_one_is_classical():
    assert gfd(parse("sin(t)"), 1.0, ONE, 0.5) == math.cos(0.5)


@pytest.mark.parametrize("method", [EXACT, LimitQuotient(1e-7)])
def test_gfd_of_t(method):
    assert gfd(parse("t"), 0.5, ONE, 4.0, method) == pytest.approx(2.0, rel=1e-8)


@given(alphas, times)
def test_exact_and_limit_agree(alpha, t):
    f = parse("sin(t)*exp(t/4) + t^1.5")
    for w in (ONE, ALPHA, POWER_T):
        exact = gfd(f, alpha, w, t)
        assert abs(exact - gfd(f, alpha, w, t, LIMIT)) <= 1e-5 * (1 + abs(exact))


def test_gfd_expr_matches_numeric():
    f = parse("t^3*cos(t)")
    e = gfd_expr(f, 0.4, POWER_T)
    assert evaluate(e, t=1.7) == pytest.approx(gfd(f, 0.4, POWER_T, 1.7), rel=1e-14)


@pytest.mark.parametrize("t", [0.0, -1.0])
def test_gfd_requires_positive_t(t):
    with pytest.raises(DomainError):
        gfd(parse("t"), 0.5, ONE, t)


@pytest.mark.parametrize("alpha", [0.0, -0.5, 1.5, math.nan])
def test_gfd_rejects_alpha(alpha):
    with pytest.raises(AlphaError):
        gfd(parse("t"), alpha, ONE, 1.0)


@pytest.mark.parametrize(
    "f, alpha, t, expected",
    [("t^2", 1.5, 1.0, 2.0), ("t", 1.5, 3.0, 0.0), ("t^3", 2.0, 2.0, 12.0), ("t^3", 1.5, 4.0, 48.0)],
)
def test_gfd_higher(f, alpha, t, expected):
    assert gfd_higher(parse(f), alpha, ONE, t) == pytest.approx(expected, rel=1e-15)


def test_gfd_higher_limit_path():
    assert gfd_higher(parse("t^3"), 1.5, ONE, 4.0, LIMIT) == pytest.approx(48.0, rel=1e-6)


@pytest.mark.parametrize("text, h", [("exact", None), ("limit", 1e-6), ("limit:1e-4", 1e-4)])
def test_parse_method(text, h):
    m = parse_method(text)
    assert (m is EXACT) if h is None else m.h == h


@pytest.mark.parametrize("text", ["limit:0", "limit:1", "limit:abc", "newton"])
def test_parse_method_rejects(text):
    with pytest.raises(GFDError):
        parse_method(text)


# }}}


# {{{ named operators


@pytest.mark.parametrize("method", [EXACT, LIMIT])
@pytest.mark.parametrize("alpha", [0.3, 0.75, 1.0])
def test_camrud_on_exp_is_identity(method, alpha):
    for t in (0.5, 2.0):
        v = named_derivative(Kind.CAMRUD, parse("exp(t)"), alpha, t, method)
        assert v == pytest.approx(math.exp(t), rel=1e-5)


def test_anderson_at_alpha_one():
    f = parse("t^3 - sin(t)")
    assert named_derivative(Kind.ANDERSON_ULNESS, f, 1.0, 2.0) == pytest.approx(12 - math.cos(2.0), rel=1e-15)


@pytest.mark.parametrize("method", [EXACT, LIMIT])
def test_khalil_example(method):
    v = named_derivative(Kind.KHALIL, parse("sin(2*t)"), 0.75, 1.0, method)
    assert v == pytest.approx(2 * math.cos(2.0), rel=1e-6)


@given(alphas, times)
def test_khalil_equals_katugampola_equals_gfd_one(alpha, t):
    f = parse("exp(t)")
    k = named_derivative(Kind.KHALIL, f, alpha, t)
    assert named_derivative(Kind.KATUGAMPOLA, f, alpha, t) == k
    assert gfd(f, alpha, ONE, t) == pytest.approx(k, rel=1e-15)
    assert named_derivative(Kind.KATUGAMPOLA, f, alpha, t, LIMIT) == pytest.approx(k, rel=1e-5)


@pytest.mark.parametrize("kind", [Kind.GUEBBAI_GHIAT, Kind.CAMRUD])
@pytest.mark.parametrize("f, t", [("sin(t)", 2.0), ("-exp(t)", 1.0), ("t^2", -1.0)])
def test_positivity_precondition(kind, f, t):
    with pytest.raises(GFDError):
        named_derivative(kind, parse(f), 0.5, t)


def test_positivity_error_type():
    with pytest.raises(PositivityError):
        named_derivative(Kind.GUEBBAI_GHIAT, parse("sin(t)"), 0.5, 2.0)


def test_gfd_kind_needs_weight():
    with pytest.raises(GFDError):
        named_derivative(Kind.GFD, parse("t"), 0.5, 1.0)
    assert named_derivative("gfd", parse("t"), 0.5, 4.0, weight=ONE) == 2.0


@pytest.mark.parametrize(
    "kind, f, alpha, t, expected",
    [
        (Kind.KHALIL, "t^2", 0.3, 3.0, 1.0),
        (Kind.KATUGAMPOLA, "t^2", 0.3, 3.0, 1.0),
        (Kind.CAMRUD, "exp(t)", 0.5, 2.0, 1 / math.sqrt(2)),
        (Kind.GUEBBAI_GHIAT, "exp(t)", 0.5, 2.0, 1 / math.sqrt(2)),
        (Kind.ANDERSON_ULNESS, "exp(t)", 0.5, 1.0, 1.0),
        (Kind.ANDERSON_ULNESS, "t", 0.5, 4.0, 2.5),
    ],
)
def test_weight_of(kind, f, alpha, t, expected):
    assert weight_of(kind, parse(f), alpha, t) == pytest.approx(expected, rel=1e-15)


def test_weight_of_singular():
    with pytest.raises(SingularError):
        weight_of(Kind.KHALIL, parse("3"), 0.5, 1.0)


# }}}


# {{{ Caputo


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_caputo_of_t_is_exact(alpha, t):
    want = t ** (1 - alpha) / gamma(2 - alpha)
    assert caputo(parse("t"), alpha, 0.0, t, 1000) == pytest.approx(want, rel=1e-12)


def test_caputo_frozen_values():
    assert caputo(parse("t^2"), 0.5, 0.0, 1.0, 1000) == pytest.approx(1.5044908143658504, rel=1e-13)
    assert caputo(parse("sin(t)"), 0.5, 0.0, 1.0, 1000) == pytest.approx(0.8460629929250322, rel=1e-13)
    assert abs(caputo(parse("t^2"), 0.5, 0.0, 1.0, 10_000) - 8 / (3 * math.sqrt(math.pi))) <= 1e-3


def test_caputo_of_constant():
    assert caputo(parse("3"), 0.4, 0.0, 2.0) == 0.0


def test_caputo_lower_limit():
    # shift invariance: Caputo of (t - 1) from 1 equals Caputo of t from 0 at t - 1
    assert caputo(parse("t - 1"), 0.5, 1.0, 3.0) == pytest.approx(caputo(parse("t"), 0.5, 0.0, 2.0), rel=1e-12)


@pytest.mark.parametrize(
    "alpha, a, t, n", [(1.0, 0.0, 1.0, 100), (0.0, 0.0, 1.0, 100), (0.5, 1.0, 1.0, 100), (0.5, 0.0, 1.0, 1)]
)
def test_caputo_preconditions(alpha, a, t, n):
    with pytest.raises(GFDError):
        caputo(parse("t"), alpha, a, t, n)


# }}}


@pytest.mark.parametrize(
    "weight, verdict",
    [(ALPHA, Verdict.PASS), (ONE, Verdict.FAIL), (WeightSpec.from_string("tau:alpha:2"), Verdict.PASS)],
)
def test_validate_weight(weight, verdict):
    ts = [0.5, 1.0, 2.0, 4.0]
    alphas_ = [round(0.05 * k, 2) for k in range(1, 21)]
    assert validate_weight(weight, ts, alphas_).verdict is verdict


@pytest.mark.parametrize("text", ["one", "alpha", "power-t", "tau:alpha:2", "custom:alpha*t"])
def test_weight_string_round_trip(text):
    w = WeightSpec.from_string(text)
    assert WeightSpec.from_string(str(w)) == w


def test_power_t_weight_cancels_power():
    # w = t^(1-alpha) gives D f = t^(2-2 alpha) f'
    assert gfd(parse("t"), 0.5, POWER_T, 4.0) == pytest.approx(4.0, rel=1e-15)
