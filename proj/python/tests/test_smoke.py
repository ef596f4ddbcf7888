import math

import pytest

import jwvie


def test_legendre_rule():
    rule = jwvie.gauss_jacobi_rule(jwvie.JacobiParams(0.0, 0.0), 2)
    r = 1.0 / math.sqrt(3.0)
    assert rule.nodes == pytest.approx([-r, r], abs=1e-15)
    assert sum(rule.weights) == pytest.approx(2.0, abs=1e-14)
    assert rule.apply(lambda t: t * t) == pytest.approx(2.0 / 3.0, abs=1e-15)


def test_invalid_params_raise_value_error():
    with pytest.raises(ValueError):
        jwvie.JacobiParams(-1.0, 0.0)


def test_example1_first_cell():
    problem = jwvie.make_benchmark("example1")
    basis = jwvie.WaveletBasis(1, 3, 1.0, jwvie.JacobiParams(0.5, 0.5))
    sol = jwvie.solve(problem, basis)
    assert jwvie.weighted_l2_error(sol, problem.exact) == pytest.approx(6.61e-4, rel=0.01)
    assert sol(1.0) == pytest.approx(1.0, abs=5e-3)


def test_python_callbacks():
    problem = jwvie.VIEProblem(0.0, 1.0, 1.0, lambda t, x: 0.0, lambda t: t * t)
    sol = jwvie.solve(problem, jwvie.WaveletBasis(2, 2, 1.0, jwvie.JacobiParams(0.0, 0.0)))
    for t in (0.1, 0.5, 0.93):
        assert sol(t) == pytest.approx(t * t, abs=1e-10)


def test_convergence_study_rows():
    rows = jwvie.run_convergence_study("example2", jwvie.JacobiParams(0.0, 0.0), [3], [1, 2, 3])
    assert [r["k"] for r in rows] == [1, 2, 3]
    assert rows[0]["ratio"] is None
    assert rows[2]["ratio"] == pytest.approx(7.71, abs=0.8)


def test_select_basis_dict():
    problem = jwvie.make_benchmark("example2")
    out = jwvie.select_basis(problem, jwvie.JacobiParams(0.5, 0.5), 1e-5, 3, 3)
    assert out["satisfied"]
    assert out["solution"].basis.k == out["k"]
