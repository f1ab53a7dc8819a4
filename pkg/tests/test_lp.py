import numpy as np
import pytest

from oracles import random_bounded_lp, vertex_enumeration
from quasiexp.dice import certificate_lp
from quasiexp.lp import LinearProgram, LpNumericalError, residuals, solve
from quasiexp.simplex import enumerate_multiindices


def test_simple_optimum():
    sol = solve(LinearProgram([1, 0], [[1, 1]], [1]))
    assert sol.status == "optimal"
    assert sol.value == 1.0
    assert np.array_equal(sol.primal, [1, 0])


def test_infeasible():
    assert solve(LinearProgram([1], [[1]], [-1])).status == "infeasible"


def test_unbounded():
    assert solve(LinearProgram([1, 0], [[1, -1]], [0])).status == "unbounded"


def test_free_variable_goes_negative():
    # max -x1 with x1 free, x1 - x2 = -3, x2 >= 0: best is x1 = -3
    sol = solve(LinearProgram([-1, 0], [[1, -1]], [-3], free=[True, False]))
    assert sol.value == pytest.approx(3.0)
    assert sol.primal[0] == pytest.approx(-3.0)


def test_redundant_rows_are_dropped():
    sol = solve(LinearProgram([1, 2, 0], [[1, 1, 1], [2, 2, 2]], [4, 8]))
    assert sol.value == pytest.approx(8.0)
    assert residuals(LinearProgram([1, 2, 0], [[1, 1, 1], [2, 2, 2]], [4, 8]), sol)["gap"] <= 1e-12


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        LinearProgram([np.nan], [[1]], [1])


def test_pivot_budget_is_numerical_error():
    with pytest.raises(LpNumericalError):
        solve(LinearProgram([1, 1, 1], [[1, 1, 1], [1, -1, 0]], [2, 0]), max_iter=1)


def test_worked_dice_certificate_lp(witness_g):
    lp = certificate_lp(witness_g, 2)
    sol = solve(lp)
    assert sol.value == pytest.approx(-0.45, abs=1e-9)
    res = residuals(lp, sol)
    assert max(res.values()) <= 1e-9
    # the dual is the quasi-moment vector: all weight on theta1*theta2
    cross = enumerate_multiindices(6, 2).index((1, 1, 0, 0, 0, 0))
    assert np.flatnonzero(np.abs(sol.dual) > 1e-12).tolist() == [cross]
    assert sol.dual[cross] == pytest.approx(0.5)


def test_agrees_with_vertex_enumeration():
    rng = np.random.default_rng(7)
    seen = 0
    while seen < 80:
        c, a, b = random_bounded_lp(rng)
        expected = vertex_enumeration(c, a, b)
        sol = solve(LinearProgram(c, a, b))
        if expected is None:
            assert sol.status == "infeasible"
            continue
        seen += 1
        assert sol.status == "optimal"
        assert abs(sol.value - expected) <= 1e-8
        res = residuals(LinearProgram(c, a, b), sol)
        assert res["gap"] <= 1e-9 and res["dual"] <= 1e-9 and res["slackness"] <= 1e-9


def test_larger_random_lps_weak_duality():
    rng = np.random.default_rng(11)
    solved = 0
    for _ in range(20):
        m, n = rng.integers(5, 30), rng.integers(10, 31)
        a = rng.standard_normal((m, n))
        x0 = rng.random(n)
        # bounding row sum(x) + s = sum(x0) + 1 keeps x0 feasible
        a = np.vstack([np.hstack([a, np.zeros((m, 1))]), np.ones(n + 1)])
        b = np.append(a[:-1, :n] @ x0, x0.sum() + 1)
        c = np.append(rng.standard_normal(n), 0.0)
        lp = LinearProgram(c, a, b)
        sol = solve(lp)
        if sol.status == "optimal":
            solved += 1
            assert abs(c @ sol.primal - b @ sol.dual) <= 1e-9 * max(1, abs(sol.value))
    assert solved == 20


def test_deterministic_dual():
    rng = np.random.default_rng(3)
    c, a, b = random_bounded_lp(rng)
    first = solve(LinearProgram(c, a, b))
    second = solve(LinearProgram(c, a, b))
    assert first.status == second.status
    if first.status == "optimal":
        assert np.array_equal(first.dual, second.dual)
