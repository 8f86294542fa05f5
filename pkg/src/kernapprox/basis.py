"""Orthonormal rational basis on the real axis from upper half-plane poles.

Given poles a_1..a_n with Im a_j > 0, the basis functions are

    Phi_j(z) = sqrt(Im a_j) / (z - conj(a_j)) * B_j(z),

where B_1 = 1 and B_j(z) = prod_{k<j} chi_k * (z - a_k)/(z - conj(a_k)) is a
Blaschke product over the poles already consumed.  On the real axis the
family is orthonormal for the inner product (1/pi) * integral f * conj(g) dt.

chi_k = |1 + a_k**2| / (1 + a_k**2) is a pure phase.  Because every chi_k is
unimodular, all moduli, projections and partial sums are independent of the
convention; the alternative "all_ones" convention exists to let tests verify
exactly that invariance.  At the degenerate point a_k = i (where 1 + a_k**2
vanishes) chi_k is taken to be 1.

The Cauchy kernel decomposes against this family: for z != conj(zeta),

    1/(2i(conj(zeta) - z)) = sum_{j<=m} conj(Phi_j(zeta)) Phi_j(z)
                             + conj(B_{m+1}(zeta)) B_{m+1}(z) / (2i(conj(zeta) - z)),

a Christoffel-Darboux-style identity; dzhrbashyan_residual measures how far a
basis evaluation is from satisfying it (zero up to rounding when correct).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kernel import PoleSequence, _check_off_point

CHI_CONVENTIONS = ("standard", "all_ones")


def chi(a, convention: str = "standard") -> complex:
    """Unimodular normalization factor for one pole.

    "standard" gives |1 + a**2| / (1 + a**2), with chi = 1 at the degenerate
    pole a = i; "all_ones" returns 1 for every pole.
    """
    if convention not in CHI_CONVENTIONS:
        raise ValueError(f"unknown chi convention {convention!r}")
    a = complex(a)
    if a.imag <= 0.0:
        raise ValueError("pole must lie in the open upper half-plane")
    if convention == "all_ones":
        return 1.0 + 0.0j
    w = 1.0 + a * a
    if w == 0:
        return 1.0 + 0.0j
    return abs(w) / w


@dataclass(frozen=True)
class BasisContext:
    """Pole list plus the chi convention used when forming Blaschke products."""

    poles: PoleSequence
    chi_convention: str = "standard"

    def __post_init__(self):
        if self.chi_convention not in CHI_CONVENTIONS:
            raise ValueError(f"unknown chi convention {self.chi_convention!r}")

    @property
    def n(self) -> int:
        return self.poles.n

    def chi_factors(self) -> tuple:
        return tuple(chi(a, self.chi_convention) for a in self.poles.poles)


def eval_blaschke(ctx: BasisContext, j: int, z):
    """B_j(z) = prod_{k<j} chi_k (z - a_k)/(z - conj(a_k)); B_1 = 1.

    Valid for 1 <= j <= n+1.  Unimodular for real z.
    """
    n = ctx.n
    if not 1 <= j <= n + 1:
        raise ValueError(f"j must satisfy 1 <= j <= {n + 1}, got {j}")
    poles = ctx.poles.poles
    conj_poles = ctx.poles.conjugated()
    factors = ctx.chi_factors()
    acc = z * 0 + 1.0
    for k in range(j - 1):
        _check_off_point(z, conj_poles[k], max(1.0, abs(conj_poles[k])), "conjugated pole")
        acc = acc * (factors[k] * (z - poles[k]) / (z - conj_poles[k]))
    return acc


def eval_phi(ctx: BasisContext, j: int, z):
    """Basis function Phi_j at z, for 1 <= j <= n."""
    if not 1 <= j <= ctx.n:
        raise ValueError(f"j must satisfy 1 <= j <= {ctx.n}, got {j}")
    a = ctx.poles.poles[j - 1]
    abar = a.conjugate()
    _check_off_point(z, abar, max(1.0, abs(abar)), "conjugated pole")
    return math.sqrt(a.imag) / (z - abar) * eval_blaschke(ctx, j, z)


def dzhrbashyan_residual(ctx: BasisContext, z, zeta, m: int) -> float:
    """|LHS - RHS| of the order-m Cauchy-kernel decomposition at (z, zeta).

    A correct basis yields a value at rounding level; the residual is the
    working self-test of the whole Blaschke/Phi machinery.  Requires
    1 <= m <= n and z != conj(zeta).
    """
    if not 1 <= m <= ctx.n:
        raise ValueError(f"m must satisfy 1 <= m <= {ctx.n}, got {m}")
    z = complex(z)
    zeta = complex(zeta)
    if z == zeta.conjugate():
        raise ValueError("z == conj(zeta) is excluded")
    denom = 2j * (zeta.conjugate() - z)
    lhs = 1.0 / denom
    rhs = 0j
    for j in range(1, m + 1):
        rhs += eval_phi(ctx, j, zeta).conjugate() * eval_phi(ctx, j, z)
    rhs += eval_blaschke(ctx, m + 1, zeta).conjugate() * eval_blaschke(ctx, m + 1, z) / denom
    return abs(lhs - rhs)
