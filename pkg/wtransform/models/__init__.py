"""
Value types shared by the smoothing, oracle, parser and homotopy layers.
"""
from .terms import Family, MonomialTerm, RbfTerm, TrigTerm, LinearArgTerm, Term
from .expression import Expression, EvalPoint, add, canonicalize, eval, as_point
from .kernel import GaussianKernel, ScaledGaussian
from .solve import Schedule, StageReport, SolveReport
from .verification import VerificationPoint, VerificationReport

__all__ = [
    "Family", "MonomialTerm", "RbfTerm", "TrigTerm", "LinearArgTerm", "Term",
    "Expression", "EvalPoint", "add", "canonicalize", "eval", "as_point",
    "GaussianKernel", "ScaledGaussian",
    "Schedule", "StageReport", "SolveReport",
    "VerificationPoint", "VerificationReport",
]
