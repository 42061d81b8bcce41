import math

import numpy as np
import pytest

from wtransform.exceptions import DivergenceError, ExpressionError
from wtransform.homotopy import minimize_homotopy, minimize_stage
from wtransform.models import Expression, RbfTerm, Schedule
from wtransform.parser import parse
from wtransform.smoothing import gradient, smooth


@pytest.fixture
def two_wells():
    """A wide deep well at the origin and a narrow shallow one at (2.5, 2.5)."""
    return Expression.build(2, [
        RbfTerm(-1.0, (0.0, 0.0), 1.5),
        RbfTerm(-0.5, (2.5, 2.5), 0.3),
    ])


@pytest.fixture
def narrow_deep_well():
    """A narrow deep well at the origin and a wide shallow one at (2.5, 2.5)."""
    return Expression.build(2, [
        RbfTerm(-1.0, (0.0, 0.0), 0.3),
        RbfTerm(-0.5, (2.5, 2.5), 1.5),
    ])


def _grid_argmin(e):
    grid = np.linspace(-1.0, 4.0, 401)
    points = np.array([(a, b) for a in grid for b in grid])
    return points[np.argmin(e.evaluate_many(points))]


def test_square_from_five(config):
    stage = minimize_stage(parse("x1^2"), 0.0, (5.0,), config=config)
    assert stage.converged
    assert stage.status == "converged"
    assert stage.point == (0.0,)
    assert stage.value == 0.0


def test_square_through_the_schedule(config):
    report = minimize_homotopy(parse("x1^2"), x0=(5.0,), config=config)
    assert report.converged
    assert report.point[0] == pytest.approx(0.0, abs=1e-8)
    assert report.value == pytest.approx(0.0, abs=1e-12)
    assert [s.sigma for s in report.stages] == list(Schedule.geometric().sigmas)


def test_single_well(config):
    e = Expression.build(2, [RbfTerm(-1.0, (1.0, -1.0), 1.0)])
    report = minimize_homotopy(e, x0=(0.0, 0.0), config=config)
    assert report.converged
    assert report.point == pytest.approx((1.0, -1.0), abs=1e-5)


def test_plain_descent_is_caught_by_the_narrow_well(config, two_wells):
    stage = minimize_stage(two_wells, 0.0, (3.0, 3.0), config=config)
    assert stage.converged
    assert np.hypot(stage.point[0] - 2.5, stage.point[1] - 2.5) < 0.1
    assert stage.value > -0.6


def test_homotopy_reaches_the_deep_well(config, two_wells):
    report = minimize_homotopy(two_wells, x0=(3.0, 3.0), config=config)
    assert report.converged
    assert report.point == pytest.approx((0.0, 0.0), abs=1e-4)

    best = _grid_argmin(two_wells)
    assert np.hypot(*(np.asarray(report.point) - best)) < 0.02
    assert report.value <= two_wells.evaluate(best) + 1e-9


def test_narrow_deep_well_is_invisible_to_both_runs(config, narrow_deep_well):
    """
    Smoothing scales each well's depth by (width / hypot(width, sigma))^2, so
    the wide shallow well stays deeper at every sigma and both runs stop there
    although the origin holds the global minimum.
    """
    best = _grid_argmin(narrow_deep_well)
    assert np.hypot(*best) < 0.02

    plain = minimize_stage(narrow_deep_well, 0.0, (3.0, 3.0), config=config)
    assert plain.point == pytest.approx((2.5, 2.5), abs=1e-4)

    report = minimize_homotopy(narrow_deep_well, x0=(3.0, 3.0), config=config)
    assert report.converged
    assert report.point == pytest.approx((2.5, 2.5), abs=1e-4)
    assert report.value > narrow_deep_well.evaluate(best)


def test_bounded_quartic_ends_stationary(config):
    e = parse("0.1*(x1^4 + x2^4) + x1^2*x2^2 - x1^2")
    report = minimize_homotopy(e, Schedule((0.5, 0.1)), x0=(1.0, 0.5), config=config)
    assert report.converged
    assert np.linalg.norm(gradient(e, report.point)) <= config.TOL
    assert report.point == pytest.approx((math.sqrt(5.0), 0.0), abs=1e-5)
    assert report.value == pytest.approx(-2.5, abs=1e-9)


def test_unbounded_objective_fails_at_the_first_stage(config):
    report = minimize_homotopy(parse("x1^3"), x0=(0.5,), config=config)
    assert not report.converged
    assert report.failed_sigma == Schedule.geometric().sigmas[0]
    assert "radius" in report.message
    assert report.stages == []


def test_stage_raises_on_divergence(config):
    with pytest.raises(DivergenceError) as info:
        minimize_stage(parse("x1^3"), 1.0, (0.5,), config=config)
    assert len(info.value.point) == 1


def test_iteration_budget(config, two_wells):
    stage = minimize_stage(two_wells, 0.0, (3.0, 3.0), max_iter=1, config=config)
    assert stage.status == "max_iter"
    assert not stage.converged
    assert stage.iterations == 1

    report = minimize_homotopy(two_wells, x0=(3.0, 3.0), max_iter=1, config=config)
    assert not report.converged
    assert report.message == "final stage ended with status max_iter"


def test_invalid_stage_arguments(config):
    with pytest.raises(ExpressionError):
        minimize_stage(parse("x1^2"), 0.0, (1.0,), tol=0.0, config=config)
    with pytest.raises(ExpressionError):
        minimize_stage(parse("x1^2"), 0.0, (1.0,), max_iter=0, config=config)


def test_stages_are_warm_started(config, two_wells):
    schedule = Schedule((1.0, 0.3))
    report = minimize_homotopy(two_wells, schedule, x0=(3.0, 3.0), config=config)
    start = (3.0, 3.0)
    for stage in report.stages:
        again = minimize_stage(two_wells, stage.sigma, start, config=config)
        assert again == stage
        assert stage.value <= smooth(two_wells, stage.sigma).evaluate(start)
        start = stage.point


def test_determinism(config, two_wells):
    first = minimize_homotopy(two_wells, x0=(3.0, 3.0), config=config)
    second = minimize_homotopy(two_wells, x0=(3.0, 3.0), config=config)
    assert first == second


def test_schedule_always_ends_at_zero():
    assert Schedule((2.0, 1.0)).sigmas == (2.0, 1.0, 0.0)
    assert Schedule((1.0, 0.0)).sigmas == (1.0, 0.0)
    assert Schedule((0.0,)).sigmas == (0.0,)


@pytest.mark.parametrize("sigmas", [(), (1.0, 2.0), (1.0, 1.0), (1.0, -0.5), (float("nan"),)])
def test_schedule_validation(sigmas):
    with pytest.raises(ExpressionError):
        Schedule(sigmas)


def test_geometric_schedule():
    schedule = Schedule.geometric(2.0, 0.01, 8)
    assert len(schedule.sigmas) == 9
    assert schedule.sigmas[0] == pytest.approx(2.0)
    assert schedule.sigmas[-2] == pytest.approx(0.01)
    assert schedule.sigmas[-1] == 0.0
    with pytest.raises(ExpressionError):
        Schedule.geometric(0.01, 2.0, 8)
    with pytest.raises(ExpressionError):
        Schedule.geometric(2.0, 0.01, 0)
