"""Finite Fourier transforms int_{-1}^{1} P(x) e^{i lam x} dx of Legendre,
Jacobi, Gegenbauer and Chebyshev polynomials."""

from .errors import DomainError, EvaluationError, ParameterError
from .numerics import moment_kernel, shifted_factorial, switch_threshold
from .operator_method import ab_polynomials, operator_hat, sinc_derivative
from .oracle import QuadratureEstimate, quad_hat, quad_spec_hat, quad_weighted_hat
from .parseval import (
    ParsevalReport,
    fourier_coeff_p,
    fourier_coeff_q,
    jacobi_norm,
    parseval_partial_sum,
    w_function,
)
from .polyfamilies import Family, FamilySpec, monomial_coefficients, reduce_to_jacobi
from .specialfns import kummer_1f1, spherical_bessel_j, terminating_pfq
from .transforms import (
    MethodId,
    TransformResult,
    chebyshev_t_hat,
    chebyshev_u_hat,
    gegenbauer_hat,
    hat,
    hat_auto,
    hat_small_lambda,
    jacobi_hat,
    jacobi_hat_zero,
    legendre_hat,
    weighted_jacobi_hat,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "EvaluationError", "ParameterError",
    "Family", "FamilySpec", "MethodId", "TransformResult", "QuadratureEstimate",
    "ParsevalReport",
    "hat", "hat_auto", "hat_small_lambda", "legendre_hat", "jacobi_hat", "gegenbauer_hat",
    "chebyshev_t_hat", "chebyshev_u_hat", "jacobi_hat_zero", "weighted_jacobi_hat",
    "operator_hat", "ab_polynomials", "sinc_derivative",
    "quad_hat", "quad_spec_hat", "quad_weighted_hat",
    "fourier_coeff_p", "fourier_coeff_q", "jacobi_norm", "parseval_partial_sum", "w_function",
    "moment_kernel", "shifted_factorial", "switch_threshold", "monomial_coefficients",
    "reduce_to_jacobi", "kummer_1f1", "spherical_bessel_j", "terminating_pfq",
]
