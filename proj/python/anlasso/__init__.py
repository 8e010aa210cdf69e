"""Analysis-l1 regularized least squares.

Interior-point solver converging to the analytic center of the solution set
(the solution of maximal analysis support), with geometric certification and a
brute-force oracle for small instances.
"""

from ._core import (
    CertificateReport,
    OracleLimitError,
    OracleResult,
    ParseError,
    PrimalDualPoint,
    Problem,
    SolveResult,
    SolveStatus,
    SupportPattern,
    ValidationReport,
    certify_maximal,
    d_support,
    default_support_tol,
    kernel_singleton_check,
    least_squares_x,
    objective,
    run_oracle,
    same_image,
    sign_consistent,
    solve,
    split_variable,
    validate,
)

__all__ = [
    "CertificateReport",
    "OracleLimitError",
    "OracleResult",
    "ParseError",
    "PrimalDualPoint",
    "Problem",
    "SolveResult",
    "SolveStatus",
    "SupportPattern",
    "ValidationReport",
    "certify_maximal",
    "d_support",
    "default_support_tol",
    "kernel_singleton_check",
    "least_squares_x",
    "objective",
    "run_oracle",
    "same_image",
    "sign_consistent",
    "solve",
    "split_variable",
    "validate",
]

__version__ = "0.1.0"
