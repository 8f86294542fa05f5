"""Core domain types and evaluation of the kernel and its companion functions.

The object of study is the rational kernel

    K(t) = (A + B*t) / (t**2 + lam**2)**(s + 1)

with complex A, B, real lam > 0 and integer order s >= 1, together with the
node polynomial tau(z) = prod_k (z - a_k) built from poles a_1..a_n in the
open upper half-plane, the auxiliary function R(z) = K(z) / tau(z, conj(a)),
and the positive product mu_n = |tau(i*lam, conj(a))|**2.

Evaluation points may be scalars or numpy arrays (elementwise semantics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleEvaluationError

# Relative tolerance below which an evaluation point counts as "on a pole".
POLE_PROXIMITY = 1e-12


def _finite_complex(name: str, value) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must have finite components, got {value!r}")
    return z


def _powi(z, m: int):
    """z**m for integer m >= 0 by repeated squaring.

    Avoids the log/exp route (and its branch cuts) so powers of values close
    to the real axis stay accurate.  Works on scalars and arrays.
    """
    if m < 0:
        raise ValueError("negative exponent")
    result = z * 0 + 1.0
    base = z
    while m:
        if m & 1:
            result = result * base
        m >>= 1
        if m:
            base = base * base
    return result


@dataclass(frozen=True)
class KernelParams:
    """Kernel data A, B, lam, s; lam must be positive and s an integer >= 1."""

    A: complex
    B: complex
    lam: float
    s: int

    def __post_init__(self):
        object.__setattr__(self, "A", _finite_complex("A", self.A))
        object.__setattr__(self, "B", _finite_complex("B", self.B))
        lam = float(self.lam)
        if not math.isfinite(lam) or lam <= 0.0:
            raise ValueError(f"lam must be a finite positive real, got {self.lam!r}")
        object.__setattr__(self, "lam", lam)
        s = self.s
        if int(s) != s or int(s) < 1:
            raise ValueError(f"s must be an integer >= 1, got {self.s!r}")
        object.__setattr__(self, "s", int(s))

    @property
    def has_real_AB(self) -> bool:
        return self.A.imag == 0.0 and self.B.imag == 0.0


@dataclass(frozen=True)
class PoleSequence:
    """Ordered poles a_1..a_n, each strictly inside the upper half-plane."""

    poles: tuple

    def __post_init__(self):
        poles = tuple(_finite_complex(f"pole {k + 1}", p) for k, p in enumerate(self.poles))
        if not poles:
            raise ValueError("at least one pole is required")
        for k, p in enumerate(poles):
            if p.imag <= 0.0:
                raise ValueError(f"pole {k + 1} = {p} must have Im > 0")
        object.__setattr__(self, "poles", poles)

    @property
    def n(self) -> int:
        return len(self.poles)

    def conjugated(self) -> tuple:
        """Mirror images conj(a_k); derived on demand, never stored."""
        return tuple(p.conjugate() for p in self.poles)

    def prefix(self, n: int) -> "PoleSequence":
        if not 1 <= n <= self.n:
            raise ValueError(f"prefix length {n} outside 1..{self.n}")
        return PoleSequence(self.poles[:n])


@dataclass(frozen=True)
class WeightSpec:
    """Weight data: rho_n(t) = rho0 * prod_k (t - a_k) with rho0 != 0."""

    rho0: complex
    poles: PoleSequence

    def __post_init__(self):
        rho0 = _finite_complex("rho0", self.rho0)
        if rho0 == 0:
            raise ValueError("rho0 must be nonzero")
        object.__setattr__(self, "rho0", rho0)

    def rho(self, t):
        """Evaluate rho_n(t)."""
        return self.rho0 * eval_tau(t, self.poles.poles)

    def rho_abs_sq(self, t):
        """|rho_n(t)|**2, real-valued; accepts arrays."""
        r = self.rho(t)
        return np.real(r) ** 2 + np.imag(r) ** 2


@dataclass(frozen=True)
class ComplexPolynomial:
    """Complex-coefficient polynomial, ascending powers, Horner evaluation.

    Trailing exact zeros are permitted; two polynomials are compared
    coefficient-wise at whatever tolerance the caller requires.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(
            _finite_complex(f"coefficient {k}", c) for k, c in enumerate(self.coeffs)
        )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeffs_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def __call__(self, z):
        acc = z * 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def _check_off_point(z, w, scale: float, what: str):
    if np.any(np.abs(z - w) < POLE_PROXIMITY * scale):
        raise PoleEvaluationError(f"evaluation point too close to {what} at {w}")


def _check_off_kernel_poles(z, lam: float):
    scale = max(1.0, lam)
    _check_off_point(z, 1j * lam, scale, "kernel pole")
    _check_off_point(z, -1j * lam, scale, "kernel pole")


def eval_kernel(params: KernelParams, t):
    """(A + B*t) / (t**2 + lam**2)**(s+1); defined away from t = +-i*lam."""
    lam = params.lam
    _check_off_kernel_poles(t, lam)
    return (params.A + params.B * t) / _powi(t * t + lam * lam, params.s + 1)


def eval_tau(z, points):
    """Node polynomial prod_k (z - points_k); the empty product is 1."""
    acc = z * 0 + 1.0
    for p in points:
        acc = acc * (z - p)
    return acc


def eval_R(params: KernelParams, poles: PoleSequence, z):
    """K(z) / tau(z, conj(a)); defined away from +-i*lam and the conj(a_k)."""
    _check_off_kernel_poles(z, params.lam)
    conj_poles = poles.conjugated()
    for w in conj_poles:
        _check_off_point(z, w, max(1.0, abs(w)), "conjugated pole")
    denom = _powi(z * z + params.lam * params.lam, params.s + 1) * eval_tau(z, conj_poles)
    return (params.A + params.B * z) / denom


def mu_n(lam: float, poles: PoleSequence) -> float:
    """prod_k [alpha_k**2 + (beta_k + lam)**2] for a_k = alpha_k + i*beta_k.

    Strictly positive; equals |tau(i*lam, conj(a))|**2.
    """
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    acc = 1.0
    for a in poles.poles:
        acc *= a.real * a.real + (a.imag + lam) * (a.imag + lam)
    return acc


def natural_scale(lam: float, poles: PoleSequence) -> float:
    """2 * max(1, lam, max|a_k|): the length scale on which the data varies.

    Used to place interpolation nodes and to scale monomial bases.
    """
    return 2.0 * max(1.0, lam, max(abs(a) for a in poles.poles))
