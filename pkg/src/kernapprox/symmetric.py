"""Complete-homogeneous sums of shifted reciprocals.

For a point z and points a_1..a_n, nu_k(z, a) sums prod_j (z - a_j)**(-k_j)
over every tuple of nonnegative integers with k_1 + ... + k_n = k.  These are
the complete homogeneous symmetric sums in the variables x_j = 1/(z - a_j).

The fast path uses the Newton power-sum recurrence

    k * nu_k = sum_{m=1}^{k} p_m * nu_{k-m},    p_m = sum_j x_j**m,

which costs O(k*(k+n)).  A literal enumeration over compositions is kept as
an independent oracle; it is exponential and guarded to small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PoleEvaluationError
from .kernel import POLE_PROXIMITY

BRUTE_FORCE_MAX_ORDER = 12
BRUTE_FORCE_MAX_POINTS = 6


@dataclass(frozen=True)
class NuTable:
    """Values nu_0..nu_K for one (z, points) pair; nu_0 is exactly 1."""

    values: tuple

    def __getitem__(self, k: int) -> complex:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


def _checked_reciprocals(z, points):
    z = complex(z)
    pts = [complex(p) for p in points]
    for p in pts:
        if abs(z - p) < POLE_PROXIMITY * max(1.0, abs(p)):
            raise PoleEvaluationError(f"nu undefined: z = {z} coincides with point {p}")
    return [1.0 / (z - p) for p in pts]


def nu_table(kmax: int, z, points) -> NuTable:
    """All orders nu_0..nu_kmax at once (shared power sums)."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    x = _checked_reciprocals(z, points)
    values = [1.0 + 0.0j]
    if kmax == 0:
        return NuTable(tuple(values))
    power_sums = []
    running = list(x)
    for m in range(1, kmax + 1):
        if m > 1:
            running = [r * xi for r, xi in zip(running, x)]
        power_sums.append(sum(running, 0j))
    for k in range(1, kmax + 1):
        acc = 0j
        for m in range(1, k + 1):
            acc += power_sums[m - 1] * values[k - m]
        values.append(acc / k)
    return NuTable(tuple(values))


def nu(k: int, z, points) -> complex:
    """Order-k sum via the power-sum recurrence."""
    return nu_table(k, z, points).values[k]


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def nu_bruteforce(k: int, z, points) -> complex:
    """Order-k sum by explicit enumeration of all C(k+n-1, n-1) tuples.

    Guarded to k <= 12 and n <= 6; exists purely as an oracle for nu().
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    pts = list(points)
    if k > BRUTE_FORCE_MAX_ORDER or len(pts) > BRUTE_FORCE_MAX_POINTS:
        raise ValueError(
            f"brute-force guard: need k <= {BRUTE_FORCE_MAX_ORDER} and "
            f"n <= {BRUTE_FORCE_MAX_POINTS}, got k={k}, n={len(pts)}"
        )
    x = _checked_reciprocals(z, pts)
    total = 0j
    for ks in _compositions(k, len(x)):
        term = 1.0 + 0j
        for xi, ki in zip(x, ks):
            term *= xi**ki
        total += term
    return total
