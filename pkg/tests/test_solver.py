import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfd import solver
from gfd.errors import BlowupError, GFDError, ParameterError, ParseError, StepError
from gfd.expr import evaluate, parse
from gfd.solver import LinearFracODE

EXAMPLE = LinearFracODE(a=1.0, b=2.0, c=4.0, alpha=0.5, weight_value=1.0, t0=0.0, y0=1.0)
GRID = np.linspace(0.1, 2.0, 20).tolist()


# {{{ ODE


def test_closed_form_example():
    y = solver.solve_linear_closed(EXAMPLE)
    assert evaluate(y, t=1.0) == pytest.approx(2 - math.exp(-4), rel=1e-15)
    assert evaluate(y, t=1.0) == pytest.approx(1.9816843611112658, rel=1e-15)
    assert solver.ode_residual(EXAMPLE, y, GRID).max_abs_residual <= 1e-9


def test_constant_solution():
    ode = LinearFracODE(1.0, 2.0, 4.0, 0.5, 1.0, 0.0, 2.0)
    y = solver.solve_linear_closed(ode)
    assert y == parse("2")
    assert solver.ode_residual(ode, y, GRID).max_abs_residual == 0.0


def test_zero_candidate_residual_is_minus_c():
    rep = solver.ode_residual(EXAMPLE, parse("0"), GRID)
    assert set(rep.residuals) == {-4.0}


def test_alpha_one_classical():
    ode = LinearFracODE(2.0, 1.0, 3.0, 1.0, 1.0, 0.0, 0.5)
    y = solver.solve_linear_closed(ode)
    for t in (0.5, 1.0, 3.0):
        assert evaluate(y, t=t) == pytest.approx(3 + (0.5 - 3) * math.exp(-t / 2), rel=1e-14)


def test_b_zero():
    ode = LinearFracODE(1.0, 0.0, 0.0, 0.5, 1.0, 0.0, 3.0)
    assert evaluate(solver.solve_linear_closed(ode), t=5.0) == 3.0
    ode = LinearFracODE(2.0, 0.0, 1.0, 0.5, 1.0, 0.0, 0.0)
    y = solver.solve_linear_closed(ode)
    assert solver.ode_residual(ode, y, GRID).max_abs_residual <= 1e-12


def test_rk4_matches_closed_form():
    y = solver.solve_linear_closed(EXAMPLE)
    t0 = 0.01
    ode = LinearFracODE(1.0, 2.0, 4.0, 0.5, 1.0, t0, evaluate(y, t=t0))
    traj = solver.solve_linear_numeric(ode, 1.0, 1e-4)
    assert traj[-1][0] == pytest.approx(1.0)
    assert abs(traj[-1][1] - evaluate(y, t=1.0)) <= 1e-6


def test_rk4_classical_decay():
    ode = LinearFracODE(1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0)
    assert solver.solve_linear_numeric(ode, 2.0, 1e-3)[-1][1] == pytest.approx(math.exp(-1), abs=1e-8)


@pytest.mark.parametrize("seed", range(20))
def test_rk4_random_draws(seed):
    rng = random.Random(seed)
    a, b, c = rng.uniform(0.5, 2), rng.uniform(0.1, 3), rng.uniform(-3, 3)
    alpha, w = rng.uniform(0.3, 1.0), rng.uniform(0.5, 2)
    closed = solver.solve_linear_closed(LinearFracODE(a, b, c, alpha, w, 0.0, rng.uniform(-2, 2)))
    t0 = 0.01
    ode = LinearFracODE(a, b, c, alpha, w, t0, evaluate(closed, t=t0))
    traj = solver.solve_linear_numeric(ode, 2.0, 1e-4)
    assert max(abs(y - evaluate(closed, t=t)) for t, y in traj) <= 1e-6
    assert solver.ode_residual(ode, closed, np.linspace(0.05, 10, 30)).max_abs_residual <= 1e-9


@pytest.mark.parametrize("kw", [{"a": 0.0}, {"alpha": 0.0}, {"alpha": 1.5}, {"weight_value": 0.0}, {"t0": -1.0}])
def test_ode_parameters(kw):
    args = dict(a=1.0, b=1.0, c=1.0, alpha=0.5) | kw
    with pytest.raises(ParameterError):
        LinearFracODE(**args)


@pytest.mark.parametrize("t0, t_end, step", [(0.0, 1.0, 1e-3), (0.1, 1.0, 0.5), (0.1, 1.0, -1e-3), (1.0, 0.5, 1e-3)])
def test_step_errors(t0, t_end, step):
    with pytest.raises(StepError):
        solver.solve_linear_numeric(LinearFracODE(1.0, 1.0, 1.0, 0.5, 1.0, t0, 0.0), t_end, step)


def test_blowup():
    with pytest.raises(BlowupError):
        solver.solve_linear_numeric(LinearFracODE(1.0, -40.0, 0.0, 1.0, 1.0, 0.1, 1.0), 2.0, 1e-3)


def test_trajectory_csv():
    text = solver.trajectory_to_csv([(0.1, 1.0), (0.2, 1 / 3)])
    assert text == "t,y\n0.10000000000000001,1\n0.20000000000000001,0.33333333333333331\n"


# }}}


# {{{ PDE


def test_pde1_corrected_and_static():
    pts = solver.square_grid(0.5, 2.0, 7)
    assert solver.pde_residual("pde1", solver.pde1_corrected_solution(), pts).max_abs_residual <= 1e-8
    assert solver.pde_residual("pde1", solver.pde1_static_solution(), pts).max_abs_residual >= 1e-2


def test_pde1_zero_candidate():
    pts = solver.square_grid(0.5, 2.0, 4)
    rep = solver.pde_residual("pde1", parse("0*x"), pts)
    assert rep.residuals == pytest.approx([-p["x"] ** 2 for p in pts])


@given(st.floats(0.5, 2), st.floats(0.5, 2))
def test_pde1_affine_in_u(x, t):
    u1, u2 = parse("x*t"), parse("sin(x)*exp(-t)")
    p = [{"x": x, "t": t}]

    def r(u):
        return solver.pde_residual("pde1", u, p).residuals[0]

    assert r(u1 + u2) == pytest.approx(r(u1) + r(u2) + x * x, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
def test_pde2_separated(k):
    pts = solver.square_grid(1.0, 2.0, 6)
    assert solver.pde_residual("pde2", solver.pde2_separated_solution(k), pts).max_abs_residual <= 1e-6


@pytest.mark.parametrize("make", [solver.pde2_unscaled_solution, solver.pde2_rescaled_solution])
def test_pde2_unscaled_variants_fail(make):
    pts = solver.square_grid(1.0, 2.0, 6)
    assert solver.pde_residual("pde2", make(1.0), pts).max_abs_residual >= 1e-2


def test_pde2_original_form_differs():
    pts = solver.square_grid(1.0, 2.0, 6)
    rep = solver.pde_residual("pde2-original", solver.pde2_separated_solution(1.0), pts)
    assert rep.max_abs_residual > 1e-6


def test_custom_pde():
    eq = solver.CustomPDE.parse("u_t - u_xx")
    rep = solver.pde_residual(eq, parse("exp(-t)*sin(x)"), solver.square_grid(0.5, 2.0, 4))
    assert rep.max_abs_residual <= 1e-15
    with pytest.raises(ParseError):
        solver.CustomPDE.parse("u_q")


def test_pde_excludes_nonpositive_points():
    rep = solver.pde_residual("pde1", parse("x"), [{"x": 0.0, "t": 1.0}, {"x": 1.0, "t": 1.0}])
    assert len(rep.points) == 1 and rep.notes


def test_unknown_equation():
    with pytest.raises(GFDError):
        solver.pde_residual("pde9", parse("x"), [{"x": 1.0, "t": 1.0}])


# }}}
