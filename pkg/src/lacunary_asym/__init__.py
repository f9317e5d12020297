"""High-precision evaluation and saddle-point asymptotics for the lacunary
binomial family f_n(1/y) = sum_k C(n,k) y^{-k(k-1)/2}, y > 1."""

from .numerics import (
    ComputationError,
    DEFAULT_CTX,
    DomainError,
    ExactRational,
    LacunaryError,
    LogValue,
    PrecisionContext,
    as_real,
    binomial,
    compensated_sum,
    log_sum_exp,
)
from .polyeval import (
    EXACT_MODE_CAP,
    MonotonicityCertificate,
    MonotonicityEntry,
    TruncationReport,
    certify_absolute_monotonicity,
    eval_exact,
    eval_float,
    eval_log,
    forward_difference,
)
from .solvers import (
    ResidualRelations,
    RootResult,
    lambert_w,
    residual_relations,
    solve_r,
    solve_w,
)
from .asymptotics import (
    ApproxRecord,
    ApproxSummary,
    ProofResiduals,
    SaddleData,
    Theta3Result,
    approx_bdm,
    approx_theorem,
    approximation_summary,
    b_closed_form,
    euler_frobenius,
    proof_residuals,
    rho,
    saddle_data,
    theta3,
)
from .quadrature import (
    FOURIER_K_CAP,
    QUAD_N_CAP,
    QuadratureResult,
    gaussian_fourier,
    integrand_original,
    integrate_original,
    integrate_shifted,
    psi_exp,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxRecord",
    "ApproxSummary",
    "ComputationError",
    "DEFAULT_CTX",
    "DomainError",
    "EXACT_MODE_CAP",
    "ExactRational",
    "FOURIER_K_CAP",
    "LacunaryError",
    "LogValue",
    "MonotonicityCertificate",
    "MonotonicityEntry",
    "PrecisionContext",
    "ProofResiduals",
    "QUAD_N_CAP",
    "QuadratureResult",
    "ResidualRelations",
    "RootResult",
    "SaddleData",
    "Theta3Result",
    "TruncationReport",
    "approx_bdm",
    "approx_theorem",
    "approximation_summary",
    "as_real",
    "b_closed_form",
    "binomial",
    "certify_absolute_monotonicity",
    "compensated_sum",
    "eval_exact",
    "eval_float",
    "eval_log",
    "euler_frobenius",
    "forward_difference",
    "gaussian_fourier",
    "integrand_original",
    "integrate_original",
    "integrate_shifted",
    "lambert_w",
    "log_sum_exp",
    "proof_residuals",
    "psi_exp",
    "residual_relations",
    "rho",
    "saddle_data",
    "solve_r",
    "solve_w",
    "theta3",
    "__version__",
]
