"""Closed-form residue coefficients and the exact weighted mean-square error.

Two families of coefficients drive everything.  With conj_a the conjugated
pole list, nu the complete-homogeneous sums and tau the node polynomial,

    D_l      = sum_{j=0}^{s-l} (2i*lam)**(s-j) C(s+j, s) nu_{s-l-j}(i*lam, conj_a)
               * (B*lam*(s - j)/(s + j) - i*A)
               / ((2*lam)**(2s+1) * tau(i*lam, conj_a))

is the residue ladder at the upper kernel pole i*lam, and D_lower_l is its
mirror at -i*lam, computed directly (with nu(-i*lam, a), tau(-i*lam, a) and
+i*A) so that complex A, B are handled without any conjugation shortcut.
For real A and B, D_lower_l == conj(D_l).

The rescaled ladder

    G_k = sum_{j=0}^{s-k} C(s+j, s) i**(s-k-j) nu_{s-k-j}(i*lam, conj_a)
          / (2*lam)**(k+j) * (B*lam*(s - j)/(s + j) - i*A)

obeys D_l * tau(i*lam, conj_a) * (2*lam)**(s+1-l) == i**l * G_l and carries
the exact squared error for real A, B:

    E_n**2 = 4*pi / ((2*lam)**(2s+3) * mu_n * |rho0|**2)
             * sum_{k,l} C(l+k, l) G_k conj(G_l).

For complex A, B the error is assembled instead from both residue families
and the pairwise cross integrals

    J(k, j) = integral dt / ((i*lam - t)**(k+1) (-i*lam - t)**(j+1))
            = (pi/lam) * (-1)**j * C(j+k, j) / (2i*lam)**(j+k),

an identity certified against adaptive quadrature in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConsistencyError
from .kernel import KernelParams, PoleSequence, WeightSpec, _powi, eval_tau, mu_n
from .symmetric import nu_table

BINOM_CAP = 64
CROSS_INTEGRAL_CAP = 60
LAGUERRE_CAP = 32


def binom(m: int, k: int) -> float:
    """Binomial coefficient C(m, k) for 0 <= k <= m <= 64 (exact integers)."""
    if k < 0 or m < 0 or k > m:
        raise ValueError(f"need 0 <= k <= m, got m={m}, k={k}")
    if m > BINOM_CAP:
        raise ValueError(f"binomial cap exceeded: m={m} > {BINOM_CAP}")
    return float(math.comb(m, k))


def _slope_ratio(s: int, j: int) -> float:
    # (s - j)/(s + j) as 1 - 2j/(s + j), reduced exactly first
    return float(1 - Fraction(2 * j, s + j)) if j else 1.0


@dataclass(frozen=True)
class ResidueCoefficients:
    """Coefficient lists D_0..D_s (upper pole), lower-pole mirrors and G_0..G_s."""

    D: tuple
    D_lower: tuple
    G: tuple


def residue_coefficients(params: KernelParams, poles: PoleSequence) -> ResidueCoefficients:
    """All residue ladders for one parameter set, sharing the nu tables."""
    s, lam = params.s, params.lam
    A, B = params.A, params.B
    conj_poles = poles.conjugated()
    nu_up = nu_table(s, 1j * lam, conj_poles)
    nu_dn = nu_table(s, -1j * lam, poles.poles)
    denom_up = _powi(2.0 * lam, 2 * s + 1) * eval_tau(1j * lam, conj_poles)
    denom_dn = _powi(2.0 * lam, 2 * s + 1) * eval_tau(-1j * lam, poles.poles)
    base_up = 2j * lam
    base_dn = -2j * lam
    D, D_lower, G = [], [], []
    for l in range(s + 1):
        acc_up = acc_dn = acc_g = 0j
        for j in range(s - l + 1):
            c = math.comb(s + j, s)
            slope = B * lam * _slope_ratio(s, j)
            acc_up += _powi(base_up, s - j) * c * nu_up[s - l - j] * (slope - 1j * A)
            acc_dn += _powi(base_dn, s - j) * c * nu_dn[s - l - j] * (slope + 1j * A)
            acc_g += (
                c * _powi(1j, s - l - j) * nu_up[s - l - j] / _powi(2.0 * lam, l + j)
            ) * (slope - 1j * A)
        D.append(acc_up / denom_up)
        D_lower.append(acc_dn / denom_dn)
        G.append(acc_g)
    return ResidueCoefficients(D=tuple(D), D_lower=tuple(D_lower), G=tuple(G))


def _check_order(params: KernelParams, l: int):
    if not 0 <= l <= params.s:
        raise ValueError(f"coefficient index must satisfy 0 <= l <= s = {params.s}, got {l}")


def _require_real_AB(params: KernelParams, where: str):
    if not params.has_real_AB:
        raise ValueError(
            f"{where} requires real A and B; "
            "route complex parameters through error_squared_general"
        )


def coeff_D(params: KernelParams, poles: PoleSequence, l: int) -> complex:
    """Upper-pole residue coefficient D_l, 0 <= l <= s."""
    _check_order(params, l)
    return residue_coefficients(params, poles).D[l]


def coeff_D_lower(params: KernelParams, poles: PoleSequence, l: int) -> complex:
    """Lower-pole residue coefficient, computed directly (valid for complex A, B)."""
    _check_order(params, l)
    return residue_coefficients(params, poles).D_lower[l]


def coeff_G(params: KernelParams, poles: PoleSequence, k: int) -> complex:
    """Error-form coefficient G_k, 0 <= k <= s; stated for real A and B only."""
    _check_order(params, k)
    _require_real_AB(params, "coeff_G")
    return residue_coefficients(params, poles).G[k]


def _real_nonnegative(value: complex, label: str) -> float:
    if abs(value.imag) > 1e-12 * abs(value.real):
        raise ConsistencyError(
            f"{label}: imaginary residue {value.imag:.3e} exceeds 1e-12 of {value.real:.3e}"
        )
    if value.real < 0.0:
        raise ConsistencyError(f"{label}: negative value {value.real:.3e}")
    return value.real


def error_squared(params: KernelParams, weight: WeightSpec) -> float:
    """Exact squared error of the best degree <= n-1 weighted approximation.

    Requires real A and B.  Returns
    4*pi / ((2*lam)**(2s+3) * mu_n * |rho0|**2) * sum C(l+k, l) G_k conj(G_l),
    which is real and nonnegative; violations raise ConsistencyError.
    """
    _require_real_AB(params, "error_squared")
    s, lam = params.s, params.lam
    G = residue_coefficients(params, weight.poles).G
    acc = 0j
    for k in range(s + 1):
        for l in range(s + 1):
            acc += math.comb(l + k, l) * G[k] * G[l].conjugate()
    scale = 4.0 * math.pi / (
        _powi(2.0 * lam, 2 * s + 3) * mu_n(lam, weight.poles) * abs(weight.rho0) ** 2
    )
    return _real_nonnegative(acc * scale, "error_squared")


def error_squared_general(params: KernelParams, weight: WeightSpec) -> float:
    """Exact squared error for arbitrary complex A and B.

    Assembled from both residue families and the closed-form cross integrals:
    sum_{k,l} D_k conj(D_l) J(k,l) + sum_{k,l} D^-_k conj(D^-_l) J(l,k), all
    over |rho0|**2.  Coincides with error_squared when A and B are real.
    """
    s, lam = params.s, params.lam
    rc = residue_coefficients(params, weight.poles)
    acc = 0j
    for k in range(s + 1):
        for l in range(s + 1):
            acc += rc.D[k] * rc.D[l].conjugate() * cross_integral(k, l, lam)
            acc += rc.D_lower[k] * rc.D_lower[l].conjugate() * cross_integral(l, k, lam)
    return _real_nonnegative(acc / abs(weight.rho0) ** 2, "error_squared_general")


def cross_integral(k: int, j: int, lam: float) -> complex:
    """integral dt / ((i*lam - t)**(k+1) (-i*lam - t)**(j+1)) over the real line.

    Closed form (pi/lam) * (-1)**j * C(j+k, j) / (2i*lam)**(j+k); the exponent
    j+k is forced by the k = j = 0 arctangent case and certified against the
    quadrature oracle.  Swapping k and j conjugates the value.
    """
    if k < 0 or j < 0:
        raise ValueError("k and j must be nonnegative")
    if k + j > CROSS_INTEGRAL_CAP:
        raise ValueError(f"cross-integral cap exceeded: k+j = {k + j} > {CROSS_INTEGRAL_CAP}")
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    sign = -1.0 if j % 2 else 1.0
    return (math.pi / lam) * sign * math.comb(j + k, j) / _powi(2j * lam, j + k)


def laguerre_identity_gap(G) -> float:
    """Gap between the Pascal bilinear form of G and its integral representation.

    sum_{k,l} C(l+k, l) G_k conj(G_l) equals the integral over (0, inf) of
    exp(-t) * |sum_k G_k t**k / k!|**2.  The integrand is exp(-t) times a
    polynomial of degree 2s, so a Gauss-Laguerre rule with s+1 nodes is exact
    and the returned gap sits at rounding level for any G list.
    """
    G = [complex(g) for g in G]
    if not G:
        raise ValueError("G must be nonempty")
    if len(G) > LAGUERRE_CAP:
        raise ValueError(f"list length {len(G)} exceeds cap {LAGUERRE_CAP}")
    bilinear = 0j
    for k in range(len(G)):
        for l in range(len(G)):
            bilinear += math.comb(l + k, l) * G[k] * G[l].conjugate()
    nodes, weights = np.polynomial.laguerre.laggauss(len(G))
    scaled = np.array([g / math.factorial(k) for k, g in enumerate(G)])
    vals = np.zeros_like(nodes, dtype=complex)
    for c in reversed(scaled):
        vals = vals * nodes + c
    quad = float(np.sum(weights * (vals.real**2 + vals.imag**2)))
    return abs(bilinear - quad)
