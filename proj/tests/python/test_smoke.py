import math

import pytest

import mbfem


def test_space_and_interpolation():
    space = mbfem.build_space(4, 2)
    assert space.num_dofs == 9
    assert space.h == 0.25
    coeffs = mbfem.interpolate(space, lambda y: y * (1.0 - y))
    assert space.evaluate(coeffs, 0.3) == pytest.approx(0.21)
    assert mbfem.l2_norm(space, [1.0] * 9) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        mbfem.build_space(0, 1)


def test_solve_and_measure():
    problem = mbfem.example1().with_final_time(0.2)
    space = mbfem.build_space(8, 2)
    result = mbfem.solve(problem, space, 0.01, snapshot_times=[0.0, 0.1])
    assert result["steps"] == 20
    assert result["time"] == 0.2
    assert [t for t, _ in result["snapshots"]] == pytest.approx([0.0, 0.1])
    errors = mbfem.measure(problem, space, result["coeffs"], result["time"])
    assert max(errors["max_nodal"]) < 1e-3


def test_fit_and_study():
    fit = mbfem.fit_slope([(h, h**3) for h in (0.1, 0.05, 0.025)])
    assert fit.slope == pytest.approx(3.0)
    assert fit.reliable
    with pytest.raises(ValueError):
        mbfem.fit_slope([(0.1, 1.0), (0.05, 0.5)])
    problem = mbfem.example1().with_final_time(0.1)
    study = mbfem.convergence_study(problem, "space", [2], [2, 4, 8], [0.001], jobs=2)
    assert len(study["rows"]) == 6
    assert [f["equation"] for f in study["fits"]] == [1, 2]
    assert all(f["slope"] > 2.0 for f in study["fits"])


def test_config_and_validate():
    config = mbfem.parse_config("problem=example2 nt=4 k=4 delta=0.001")
    assert config.q == 6
    problem = mbfem.resolve_problem(config)
    assert problem.final_time == 1.0
    assert not problem.has_exact
    overall, checks = mbfem.validate(problem)
    assert overall == "pass"
    assert checks
    with pytest.raises(mbfem.ParseError):
        mbfem.parse_config("problem=example2\nnt=x\n")
    with pytest.raises(mbfem.MissingExactSolutionError):
        problem.exact(0, 0.5, 0.0)


def test_forcing_is_finite_on_boundaries():
    problem = mbfem.example1()
    for t in (0.0, 1.0, 3.0):
        for i in (0, 1):
            assert math.isfinite(mbfem.example1_forcing(i, problem.alpha(t), t))
            assert math.isfinite(mbfem.example1_forcing(i, problem.beta(t), t))
