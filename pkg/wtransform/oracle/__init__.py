from .adapter import ConvolutionOracle, OracleConfig, OracleEstimate, oracle_convolve, oracle_moment
from .verification import has_kinks, verify_expression

__all__ = [
    "ConvolutionOracle", "OracleConfig", "OracleEstimate", "oracle_convolve", "oracle_moment",
    "has_kinks", "verify_expression",
]
