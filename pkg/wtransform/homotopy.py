"""
Graduated optimization: gradient descent on closed-form smoothed surrogates
over a decreasing sigma schedule, each stage warm-started from the last.
"""
import logging
import math
from typing import Optional

import numpy as np

from .config import get_config
from .exceptions import DivergenceError, ExpressionError, NonFiniteObjectiveError, StageError
from .models import EvalPoint, Expression, Schedule, SolveReport, StageReport, as_point
from .smoothing import gradient, smooth

logger = logging.getLogger(__name__)

MIN_STEP = 1e-16


def minimize_stage(
    expression: Expression,
    sigma: float,
    x0: EvalPoint,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    config=None,
) -> StageReport:
    """Gradient descent with Armijo backtracking on smooth(expression, sigma)."""
    config = config or get_config()
    tol = config.TOL if tol is None else tol
    max_iter = config.MAX_ITER if max_iter is None else max_iter
    if not tol > 0.0:
        raise ExpressionError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ExpressionError(f"max_iter must be positive, got {max_iter}")

    objective = smooth(expression, sigma)
    x = as_point(x0, expression.dimension)
    value = objective.evaluate(x)
    evaluations = 1
    if not math.isfinite(value):
        raise NonFiniteObjectiveError(f"objective is {value} at the starting point", tuple(x))

    iterations = 0
    status = "max_iter"
    grad = gradient(objective, x)
    while True:
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm <= tol:
            status = "converged"
            break
        if iterations >= max_iter:
            break
        step = config.INITIAL_STEP
        slope = grad_norm * grad_norm
        while True:
            candidate = x - step * grad
            candidate_value = objective.evaluate(candidate)
            evaluations += 1
            if not math.isfinite(candidate_value):
                raise NonFiniteObjectiveError(
                    f"objective is {candidate_value} at sigma={sigma} after {iterations} iterations", tuple(x)
                )
            if candidate_value <= value - config.ARMIJO_C * step * slope:
                break
            step *= config.ARMIJO_SHRINK
            if step < MIN_STEP:
                break
        if step < MIN_STEP:
            status = "stalled"
            logger.warning(f"Line search stalled at sigma={sigma:g} after {iterations} iterations")
            break
        x, value = candidate, candidate_value
        iterations += 1
        if np.linalg.norm(x) > config.DIVERGENCE_RADIUS:
            raise DivergenceError(
                f"iterate left the ball of radius {config.DIVERGENCE_RADIUS:g} at sigma={sigma}", tuple(x)
            )
        grad = gradient(objective, x)

    logger.debug(f"Stage sigma={sigma:g}: {status} after {iterations} iterations, value {value:g}")
    return StageReport(
        sigma=float(sigma),
        iterations=iterations,
        point=tuple(float(v) for v in x),
        value=float(value),
        gradient_norm=grad_norm,
        evaluations=evaluations,
        converged=status == "converged",
        status=status,
    )


def minimize_homotopy(
    expression: Expression,
    schedule: Optional[Schedule] = None,
    x0: EvalPoint = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    config=None,
) -> SolveReport:
    """Runs one stage per sigma; the final stage (sigma = 0) minimizes the original objective."""
    config = config or get_config()
    schedule = schedule or Schedule.geometric()
    if x0 is None:
        x0 = (0.0,) * expression.dimension

    report = SolveReport()
    point = tuple(as_point(x0, expression.dimension))
    for sigma in schedule.sigmas:
        try:
            stage = minimize_stage(expression, sigma, point, tol=tol, max_iter=max_iter, config=config)
        except StageError as exc:
            logger.warning(f"Stage sigma={sigma:g} aborted: {exc}")
            report.message = str(exc)
            report.failed_sigma = float(sigma)
            report.converged = False
            return report
        report.stages.append(stage)
        report.evaluations += stage.evaluations
        point = stage.point
        logger.info(f"Finished stage sigma={sigma:g} at value {stage.value:g}")

    report.converged = report.stages[-1].converged
    if not report.converged:
        report.message = f"final stage ended with status {report.stages[-1].status}"
    return report
