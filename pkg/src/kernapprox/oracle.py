"""Brute-force verification tools, independent of the closed-form pipeline.

Three instruments: adaptive quadrature over the whole real line, numerical
Fourier coefficients against the rational basis, and a weighted
least-squares solve for the best polynomial.  The closed forms and this
module certify each other; nothing here consults the residue coefficients.

Quadrature maps the real line to (-pi/2, pi/2) via t = tan(theta) and
bisects panels adaptively, applying a fixed-order Gauss-Legendre rule per
panel.  Integrands must be finite on the axis and decay at least like
1/t**2.  Panel sums are accumulated strictly left to right, so results are
bit-stable for a fixed spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import BasisContext, eval_phi
from .errors import ConvergenceError, IllConditionedError
from .kernel import (
    ComplexPolynomial,
    KernelParams,
    WeightSpec,
    eval_kernel,
    eval_R,
    natural_scale,
)

GRAM_CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for the adaptive real-line integrator."""

    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    max_panels: int = 4096
    nodes_per_panel: int = 15

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_panels < 4:
            raise ValueError("max_panels must be >= 4")
        if self.nodes_per_panel < 2:
            raise ValueError("nodes_per_panel must be >= 2")


@dataclass(frozen=True)
class LeastSquaresResult:
    """Numerical minimizer of the weighted mean-square deviation.

    error is the achieved deviation sqrt(min integral); gram_condition the
    spectral condition number of the normal equations; and
    quadrature_estimate_error the accumulated error estimate of every
    integral that entered the solve.
    """

    poly: ComplexPolynomial
    error: float
    gram_condition: float
    quadrature_estimate_error: float

    def __post_init__(self):
        if self.error < 0.0:
            raise ValueError("error must be nonnegative")


_DEFAULT_SPEC = QuadratureSpec()
_GL_CACHE: dict = {}
_INITIAL_PANELS = 8


def _gl_rule(order: int):
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def _evaluate(f, t: np.ndarray) -> np.ndarray:
    # Vectorized call first; fall back to pointwise for scalar-only callables.
    try:
        y = np.asarray(f(t), dtype=complex)
        if y.shape == t.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([complex(f(float(ti))) for ti in t], dtype=complex)


def _panel(f, a: float, b: float, rule) -> complex:
    x, w = rule
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    theta = mid + half * x
    t = np.tan(theta)
    vals = _evaluate(f, t) * (1.0 + t * t)
    return half * complex(np.sum(w * vals))


def _integrate(f, spec: QuadratureSpec):
    rule = _gl_rule(spec.nodes_per_panel)
    half_pi = 0.5 * math.pi
    edges = np.linspace(-half_pi, half_pi, _INITIAL_PANELS + 1)
    coarse = [_panel(f, edges[i], edges[i + 1], rule) for i in range(_INITIAL_PANELS)]
    panels_used = _INITIAL_PANELS
    tol_scale = max(spec.abs_tol, spec.rel_tol * abs(sum(coarse)))

    total = 0j
    err_total = 0.0
    # LIFO stack prepared so panels are accepted strictly left to right.
    stack = [
        (edges[i], edges[i + 1], coarse[i]) for i in range(_INITIAL_PANELS - 1, -1, -1)
    ]
    while stack:
        a, b, whole = stack.pop()
        panels_used += 2
        if panels_used > spec.max_panels:
            raise ConvergenceError(
                f"quadrature did not converge within {spec.max_panels} panels "
                f"(rel_tol={spec.rel_tol:g}, abs_tol={spec.abs_tol:g})"
            )
        mid = 0.5 * (a + b)
        left = _panel(f, a, mid, rule)
        right = _panel(f, mid, b, rule)
        refined = left + right
        err = abs(refined - whole)
        if err <= tol_scale * (b - a) / math.pi or mid <= a or b <= mid:
            total += refined
            err_total += err
        else:
            stack.append((mid, b, right))
            stack.append((a, mid, left))
    return total, err_total, panels_used


def integrate_real_line(f, spec: QuadratureSpec | None = None) -> complex:
    """Integral of f over the whole real line.

    f is called with numpy arrays of real points (scalar-only callables are
    detected and wrapped).  Raises ConvergenceError when the panel budget
    runs out before the tolerances are met.
    """
    value, _, _ = _integrate(f, spec or _DEFAULT_SPEC)
    return value


def integrate_real_line_with_estimate(f, spec: QuadratureSpec | None = None):
    """Same as integrate_real_line, plus the accumulated local error estimate."""
    value, estimate, _ = _integrate(f, spec or _DEFAULT_SPEC)
    return value, estimate


def fourier_coeff(
    params: KernelParams, ctx: BasisContext, j: int, spec: QuadratureSpec | None = None
) -> complex:
    """Numerical coefficient (1/pi) * integral R(t) conj(Phi_j(t)) dt."""
    if not 1 <= j <= ctx.n:
        raise ValueError(f"j must satisfy 1 <= j <= {ctx.n}, got {j}")

    def f(t):
        return eval_R(params, ctx.poles, t) * np.conj(eval_phi(ctx, j, t))

    return integrate_real_line(f, spec) / math.pi


def fourier_partial_sum(
    params: KernelParams, ctx: BasisContext, z, spec: QuadratureSpec | None = None
) -> complex:
    """sum_{j<=n} hat R(j) Phi_j(z) with numerically computed coefficients."""
    return sum(
        fourier_coeff(params, ctx, j, spec) * eval_phi(ctx, j, z) for j in range(1, ctx.n + 1)
    )


def basis_gram(ctx: BasisContext, spec: QuadratureSpec | None = None) -> np.ndarray:
    """Gram matrix (1/pi) <Phi_j, Phi_k> by quadrature; identity when orthonormal."""
    n = ctx.n
    gram = np.zeros((n, n), dtype=complex)
    for j in range(1, n + 1):
        for k in range(j, n + 1):

            def f(t, j=j, k=k):
                return eval_phi(ctx, j, t) * np.conj(eval_phi(ctx, k, t))

            val = integrate_real_line(f, spec) / math.pi
            gram[j - 1, k - 1] = val
            gram[k - 1, j - 1] = val.conjugate()
    return gram


def ls_best_poly(
    params: KernelParams, weight: WeightSpec, spec: QuadratureSpec | None = None
) -> LeastSquaresResult:
    """Minimize integral |K(t) - p(t)|**2 / |rho_n(t)|**2 dt over deg <= n-1.

    Normal equations on the scaled monomials (t/L)**k: the Gram matrix is the
    Hankel matrix of weighted moments, solved through its eigendecomposition
    so the condition number falls out as a byproduct.  Raises
    IllConditionedError beyond condition 1e12 rather than proceeding.  The
    achieved error is re-integrated directly from the residual, not read off
    the normal equations, to dodge cancellation.
    """
    spec = spec or _DEFAULT_SPEC
    n = weight.poles.n
    L = natural_scale(params.lam, weight.poles)
    estimate = 0.0

    def weight_fn(t):
        return 1.0 / weight.rho_abs_sq(t)

    moments = []
    for q in range(2 * n - 1):
        val, err = integrate_real_line_with_estimate(
            lambda t, q=q: (t / L) ** q * weight_fn(t), spec
        )
        moments.append(val.real)
        estimate += err
    gram = np.array([[moments[k + l] for l in range(n)] for k in range(n)])

    rhs = np.zeros(n, dtype=complex)
    for l in range(n):
        val, err = integrate_real_line_with_estimate(
            lambda t, l=l: eval_kernel(params, t) * (t / L) ** l * weight_fn(t), spec
        )
        rhs[l] = val
        estimate += err

    eigenvalues, eigenvectors = np.linalg.eigh(gram)
    if eigenvalues[0] <= 0.0:
        condition = math.inf
    else:
        condition = float(eigenvalues[-1] / eigenvalues[0])
    if not math.isfinite(condition) or condition > GRAM_CONDITION_LIMIT:
        raise IllConditionedError(
            f"Gram condition {condition:.3e} exceeds {GRAM_CONDITION_LIMIT:g} for n={n}"
        )
    scaled_coeffs = eigenvectors @ ((eigenvectors.conj().T @ rhs) / eigenvalues)
    poly = ComplexPolynomial(tuple(scaled_coeffs[k] / L**k for k in range(n)))

    def residual_sq(t):
        diff = eval_kernel(params, t) - poly(t)
        return (np.real(diff) ** 2 + np.imag(diff) ** 2) * weight_fn(t)

    val, err = integrate_real_line_with_estimate(residual_sq, spec)
    estimate += err
    return LeastSquaresResult(
        poly=poly,
        error=math.sqrt(max(val.real, 0.0)),
        gram_condition=condition,
        quadrature_estimate_error=estimate,
    )
