"""Best weighted mean-square polynomial approximation of rational kernels.

Computes, in closed form, the exact error and the optimal degree <= n-1
polynomial for approximating K(t) = (A + B*t)/(t**2 + lam**2)**(s+1) on the
real line under the weight 1/|rho0 * prod(t - a_k)|**2, and certifies every
closed form against an independent quadrature/least-squares oracle.
"""

from .basis import BasisContext, chi, dzhrbashyan_residual, eval_blaschke, eval_phi
from .closedform import (
    ResidueCoefficients,
    binom,
    coeff_D,
    coeff_D_lower,
    coeff_G,
    cross_integral,
    error_squared,
    error_squared_general,
    laguerre_identity_gap,
    residue_coefficients,
)
from .errors import (
    ConsistencyError,
    ConvergenceError,
    IllConditionedError,
    PoleEvaluationError,
)
from .extremal import (
    RemainderParts,
    extremal_poly,
    partial_sum_R,
    remainder,
    remainder_parts,
)
from .kernel import (
    ComplexPolynomial,
    KernelParams,
    PoleSequence,
    WeightSpec,
    eval_kernel,
    eval_R,
    eval_tau,
    mu_n,
    natural_scale,
)
from .oracle import (
    LeastSquaresResult,
    QuadratureSpec,
    basis_gram,
    fourier_coeff,
    fourier_partial_sum,
    integrate_real_line,
    integrate_real_line_with_estimate,
    ls_best_poly,
)
from .symmetric import NuTable, nu, nu_bruteforce, nu_table

__version__ = "0.1.0"

__all__ = [
    "BasisContext",
    "ComplexPolynomial",
    "ConsistencyError",
    "ConvergenceError",
    "IllConditionedError",
    "KernelParams",
    "LeastSquaresResult",
    "NuTable",
    "PoleEvaluationError",
    "PoleSequence",
    "QuadratureSpec",
    "RemainderParts",
    "ResidueCoefficients",
    "WeightSpec",
    "basis_gram",
    "binom",
    "chi",
    "coeff_D",
    "coeff_D_lower",
    "coeff_G",
    "cross_integral",
    "dzhrbashyan_residual",
    "error_squared",
    "error_squared_general",
    "eval_blaschke",
    "eval_kernel",
    "eval_phi",
    "eval_R",
    "eval_tau",
    "extremal_poly",
    "fourier_coeff",
    "fourier_partial_sum",
    "integrate_real_line",
    "integrate_real_line_with_estimate",
    "laguerre_identity_gap",
    "ls_best_poly",
    "mu_n",
    "natural_scale",
    "nu",
    "nu_bruteforce",
    "nu_table",
    "partial_sum_R",
    "remainder",
    "remainder_parts",
    "residue_coefficients",
]
