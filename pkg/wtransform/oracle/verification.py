import logging
from typing import Optional

import numpy as np

from ..activations import get_activation
from ..models import Expression, LinearArgTerm, VerificationPoint, VerificationReport
from ..smoothing import smooth
from .adapter import ConvolutionOracle

logger = logging.getLogger(__name__)


def has_kinks(expression: Expression) -> bool:
    return any(
        isinstance(t, LinearArgTerm) and get_activation(t.activation).kinked for t in expression.terms
    )


def verify_expression(
    expression: Expression,
    sigma: float,
    config,
    oracle: Optional[ConvolutionOracle] = None,
    points: Optional[int] = None,
    seed: Optional[int] = None,
    tol: Optional[float] = None,
    sample_range: Optional[float] = None,
) -> VerificationReport:
    """Compares the closed-form smoothing against the oracle at uniformly sampled points."""
    oracle = oracle or ConvolutionOracle()
    points = config.VERIFY_POINTS if points is None else points
    seed = config.VERIFY_SEED if seed is None else seed
    sample_range = config.VERIFY_RANGE if sample_range is None else sample_range
    if tol is None:
        tol = config.VERIFY_TOL_NONSMOOTH if has_kinks(expression) else config.VERIFY_TOL

    smoothed = smooth(expression, sigma)
    rng = np.random.default_rng(seed)
    samples = rng.uniform(-sample_range, sample_range, size=(points, expression.dimension))

    report = VerificationReport(sigma=sigma, tol=tol)
    for sample in samples:
        estimate = oracle.convolve(expression, sigma, sample)
        report.points.append(
            VerificationPoint(
                point=tuple(float(v) for v in sample),
                closed_form=smoothed.evaluate(sample),
                oracle=estimate.value,
                error_estimate=estimate.error_estimate,
            )
        )
    logger.info(f"Verified {len(report.points)} points at sigma={sigma:g}: max error {report.max_error:.3g}")
    if not report.passed:
        logger.warning(f"Verification failed: max error {report.max_error:.3g} exceeds tol {tol:.3g}")
    return report
